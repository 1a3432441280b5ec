#pragma once

// Counter-based random streams. A draw is a pure function of
// (seed, realization, site, draw index), so disorder ensembles are
// reproducible for any worker count and scheduling order.

#include <cstdint>
#include <numbers>
#include <cmath>

namespace gradtc::rng {

// SplitMix64 finalizer (Steele et al. avalanche constants)
inline constexpr std::uint64_t mix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline constexpr std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t realization,
                                            std::uint64_t site, std::uint64_t draw) {
  std::uint64_t h = mix64(seed);
  h = mix64(h ^ realization);
  h = mix64(h ^ site);
  h = mix64(h ^ draw);
  return h;
}

// uniform in [0, 1), 53-bit resolution
inline constexpr double to_unit(std::uint64_t h) {
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

inline double uniform01(std::uint64_t seed, std::uint64_t realization, std::uint64_t site,
                        std::uint64_t draw) {
  return to_unit(counter_hash(seed, realization, site, draw));
}

// standard normal via Box-Muller on draws (0, 1) of the site stream
inline double gaussian(std::uint64_t seed, std::uint64_t realization, std::uint64_t site) {
  const double u1 =
      (static_cast<double>(counter_hash(seed, realization, site, 0) >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = uniform01(seed, realization, site, 1);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// uniform in (-1, 1)
inline double uniform_pm1(std::uint64_t seed, std::uint64_t realization, std::uint64_t site) {
  return 2.0 * uniform01(seed, realization, site, 0) - 1.0;
}

} // namespace gradtc::rng
