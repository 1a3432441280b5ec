#pragma once

// Schrieffer-Wolff machinery: the first-order generator, exactness residual,
// transformed Hamiltonians and observables, spectral distance, perturbative
// QFI, and the four-site resonance period.

#include <utility>

#include "gradtc/models.hpp"
#include "gradtc/spinops.hpp"

namespace gradtc {

// How the level splittings Delta_{j,j+1} entering the generator denominators
// are computed: from the actual sampled fields (the residual then vanishes
// identically at first order) or from the bare gradient g alone.
enum class SwDeltaMode { ExactFields, GradientApprox };

struct SwGenerator {
  DenseOperator generator;  // anti-Hermitian, zero diagonal
  double lambda = 0.0;      // J/g
  double exchange_mhz = 0.0;
  FieldProfile fields;
};

// S = -J sum_j (s+_j s-_{j+1} - s-_j s+_{j+1}) / (2 Delta_j - J(sz_{j-1} - sz_{j+2})),
// with sigma^z taken as zero outside the chain. Throws param_domain_error if
// any denominator configuration falls below 1e-6 in magnitude.
SwGenerator build_s1(const ModelSpec& spec, const FieldProfile& fields,
                     SwDeltaMode mode = SwDeltaMode::ExactFields);

// z-diagonal part and flip-flop remainder; H0 + H1 = H exactly
std::pair<DenseOperator, DenseOperator> split_h0_h1(const DenseOperator& h);

// exact conjugation e^S H e^-S via the matrix exponential of S
DenseOperator transformed_hamiltonian(const DenseOperator& h, const SwGenerator& sw);

struct LeadingCorrection {
  DenseOperator commutator_term;  // (1/2)[S, H1], numeric
  DenseOperator end_spin_term;    // -(J lambda / 8)(sigma^z_1 - sigma^z_L)
};

LeadingCorrection leading_correction(const SwGenerator& sw, const DenseOperator& h1);

// eta = (1/2^N) sqrt( sum_i (E^H_i - E^I_i)^2 ), both spectra sorted ascending
double spectral_distance(const DenseOperator& h_heis, const DenseOperator& h_ising);

struct DressedObservable {
  DenseOperator dressed;   // Z_j = sigma^z_j + ad_S sigma^z_j + (1/2) ad_S^2 sigma^z_j
  double normalization;    // N_j = sqrt(<Z_j^2>) in the Neel state
};

DressedObservable dressed_sz(const SwGenerator& sw, int site);

// alpha(L) = 8 - 8/L
double qfi_alpha(int sites);

// closed form f_Q = (8 - 8/L) lambda^2
double qfi_perturbative(int sites, double lambda);

// fully numeric double sum over dressed two-point functions in the Neel state
double qfi_dressed_twopoint(const SwGenerator& sw);

// predicted first-return period (ns) of <sigma^z_1> for the L=4 resonance:
// the matrix element J^3/(4g^2) drives a two-level oscillation, so the
// period is 2e3 g^2 / J^3 under the MHz/ns phase rule
double resonance_period_l4(double g_mhz, double j_mhz);

} // namespace gradtc
