#pragma once

#include <numbers>

namespace gradtc::units {

// Frequencies are quoted in ordinary MHz and times in ns everywhere. Phases
// follow the rule phi = 2*pi*1e-3 * f[MHz] * t[ns], so a 10 MHz splitting
// winds a full 2*pi of relative phase in exactly 100 ns.
inline constexpr double phase_rad_per_mhz_ns = 2.0e-3 * std::numbers::pi;

inline constexpr double phase(double f_mhz, double t_ns) {
  return phase_rad_per_mhz_ns * f_mhz * t_ns;
}

} // namespace gradtc::units
