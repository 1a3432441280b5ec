#pragma once

// Scalar and series observables: phase-diagram averages, spin-reversal time,
// mutual information, QFI, heating ratio Q, bipartite entropy, participation
// ratio, and the predicted resonance dip positions.

#include <optional>
#include <span>

#include "gradtc/evolve.hpp"
#include "gradtc/spinops.hpp"

namespace gradtc {

struct EnsembleStat {
  double mean = 0.0;
  double stddev = 0.0;
  std::size_t count = 0;
};

EnsembleStat reduce_stats(std::span<const double> values);

// per-realization time average of <sigma^z_site> over the first s_max
// samples (t = 0, 2T, ..., 2(s_max-1)T), then mean/std over realizations
EnsembleStat time_disorder_avg_sz(std::span<const Trajectory> trajectories, int site,
                                  std::size_t s_max);

// first sampled time where the sign of <sigma^z_site> differs from its
// initial sign; values below 1e-6 in magnitude never trigger
std::optional<double> spin_reversal_time(const Trajectory& trajectory, int site = 1);

// I(A,B) = S(A) + S(B) - S(A u B), regions must be disjoint
double mutual_information(const StateVector& state, std::span<const int> region_a,
                          std::span<const int> region_b);

// O = sum_j (-1)^j sigma^z_j as a diagonal operator
DenseOperator staggered_magnetization(const SpinBasis& basis);

// f_Q = (<O^2> - <O>^2) / L for the staggered magnetization
double qfi_staggered(const StateVector& state);

// Q = (E_t - E_0) / (E_inf - E_0) with E_inf = Tr H / dim
double dimensionless_energy(double e_t, double e_0, const DenseOperator& h);

// S(left half) / L, with floor(L/2) left sites for odd L
double bipartite_entropy_density(const StateVector& state);

// 1 / sum_k |<k|psi0>|^4 over the eigenstates of h
double participation_ratio(const StateVector& psi0, const DenseOperator& h);

enum class SiteKind { End, Bulk };

// dip positions: J = n 1e3/T (end spins), J = n 1e3/(2T) (bulk spins), MHz
double predicted_resonance_j(double period_ns, SiteKind kind, int n);

} // namespace gradtc
