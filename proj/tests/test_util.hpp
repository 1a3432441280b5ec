#pragma once

#include <random>
#include <vector>

#include "gradtc/spinops.hpp"

namespace testutil {

inline gradtc::StateVector random_state(const gradtc::SpinBasis& basis, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> d(0.0, 1.0);
  std::vector<gradtc::cplx> amp(basis.dimension());
  for (auto& a : amp) a = gradtc::cplx(d(rng), d(rng));
  gradtc::StateVector psi(basis, std::move(amp));
  psi.normalize();
  return psi;
}

inline gradtc::ComplexMatrix random_hermitian(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> d(-1.0, 1.0);
  gradtc::ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = d(rng);
    for (std::size_t j = i + 1; j < n; ++j) {
      const gradtc::cplx v(d(rng), d(rng));
      m(i, j) = v;
      m(j, i) = std::conj(v);
    }
  }
  return m;
}

} // namespace testutil
