#pragma once

// Model construction: the gradient-field Heisenberg chain, its effective
// Ising counterpart, the heating-drive spatial operator, disorder sampling
// and standard initial states.

#include <cstdint>
#include <string_view>
#include <vector>

#include "gradtc/spinops.hpp"

namespace gradtc {

enum class DisorderLaw { Gaussian, Uniform };
enum class GradientAxis { Z, Y };

struct ModelSpec {
  int sites = 2;
  double exchange_mhz = 0.0;        // J
  double base_field_mhz = 0.0;      // B0
  double gradient_mhz = 0.0;        // g, per-site increment
  DisorderLaw disorder_law = DisorderLaw::Gaussian;
  double disorder_width_mhz = 0.0;  // sigma_B (Gaussian) or half-width dB (Uniform)
  GradientAxis gradient_axis = GradientAxis::Z;

  void validate() const;  // throws config_error
};

// One concrete disorder realization of the on-site fields B_j.
struct FieldProfile {
  std::vector<double> field_mhz;  // B_j = B0 + g(j-1) + dB_j, 0-indexed by site-1
  std::uint64_t seed = 0;
  std::uint64_t realization = 0;
};

// Deterministic for fixed (master_seed, realization): each site draws from
// its own counter-based stream, so profiles are identical for any worker
// count or evaluation order.
FieldProfile sample_fields(const ModelSpec& spec, std::uint64_t master_seed,
                           std::uint64_t realization);

// H = (J/4) sum_j vec(sigma)_j . vec(sigma)_{j+1} + (1/2) sum_j B_j sigma^z_j.
// With gradient_axis Y, the g(j-1) part moves onto sigma^y_j while B0 + dB_j
// stays on sigma^z_j.
DenseOperator build_heisenberg(const ModelSpec& spec, const FieldProfile& fields);

// H = (J/4) sum_{j<L} sigma^z_j sigma^z_{j+1} + sum_j (B_j/2) sigma^z_j,
// open chain (the bond sum stops at L-1). Diagonal in the z basis.
DenseOperator build_ising(const ModelSpec& spec, const FieldProfile& fields);

// sum over even sites of sigma^x: the spatial part of the square-pulse drive
DenseOperator build_heating_operator(const SpinBasis& basis);

// pattern: "neel", "neel_y", an explicit arrow string ("udud" or unicode
// arrows), or "ground" (requires the Hamiltonian argument)
StateVector initial_state(const SpinBasis& basis, std::string_view pattern,
                          const DenseOperator* hamiltonian = nullptr);

} // namespace gradtc
