#include "gradtc/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "gradtc/errors.hpp"
#include "gradtc/kernels.hpp"

namespace gradtc {

EnsembleStat reduce_stats(std::span<const double> values) {
  EnsembleStat st;
  st.count = values.size();
  if (values.empty()) return st;
  double sum = 0.0;
  for (double v : values) sum += v;
  st.mean = sum / static_cast<double>(values.size());
  double ss = 0.0;
  for (double v : values) ss += (v - st.mean) * (v - st.mean);
  st.stddev = std::sqrt(ss / static_cast<double>(values.size()));
  return st;
}

EnsembleStat time_disorder_avg_sz(std::span<const Trajectory> trajectories, int site,
                                  std::size_t s_max) {
  if (trajectories.empty() || s_max == 0)
    throw std::invalid_argument("time_disorder_avg_sz: nothing to average");
  std::vector<double> per_realization;
  per_realization.reserve(trajectories.size());
  for (const auto& traj : trajectories) {
    if (traj.sz.size() < s_max)
      throw std::invalid_argument("time_disorder_avg_sz: trajectory has " +
                                  std::to_string(traj.sz.size()) + " samples, needs " +
                                  std::to_string(s_max));
    double acc = 0.0;
    for (std::size_t s = 0; s < s_max; ++s) acc += traj.sz[s].at(site - 1);
    per_realization.push_back(acc / static_cast<double>(s_max));
  }
  return reduce_stats(per_realization);
}

std::optional<double> spin_reversal_time(const Trajectory& trajectory, int site) {
  if (trajectory.sz.empty()) return std::nullopt;
  const double initial = trajectory.sz.front().at(site - 1);
  if (std::abs(initial) < 1e-6)
    throw std::invalid_argument("spin_reversal_time: initial projection is zero");
  const double sign0 = initial > 0.0 ? 1.0 : -1.0;
  for (std::size_t s = 1; s < trajectory.sz.size(); ++s) {
    const double v = trajectory.sz[s].at(site - 1);
    if (std::abs(v) < 1e-6) continue;
    if (v * sign0 < 0.0) return trajectory.times_ns[s];
  }
  return std::nullopt;
}

double mutual_information(const StateVector& state, std::span<const int> region_a,
                          std::span<const int> region_b) {
  std::set<int> a(region_a.begin(), region_a.end());
  for (int site : region_b)
    if (a.count(site))
      throw std::invalid_argument("mutual_information: regions overlap at site " +
                                  std::to_string(site));
  std::vector<int> joint(region_a.begin(), region_a.end());
  joint.insert(joint.end(), region_b.begin(), region_b.end());
  const double sa = von_neumann_entropy(partial_trace(state, region_a));
  const double sb = von_neumann_entropy(partial_trace(state, region_b));
  const double sab = von_neumann_entropy(partial_trace(state, joint));
  return sa + sb - sab;
}

DenseOperator staggered_magnetization(const SpinBasis& basis) {
  const std::size_t dim = basis.dimension();
  ComplexMatrix m(dim, dim);
  for (std::size_t b = 0; b < dim; ++b) {
    double v = 0.0;
    for (int j = 1; j <= basis.sites(); ++j)
      v += (j % 2 == 0 ? 1.0 : -1.0) * basis.sz_sign(b, j);
    m(b, b) = v;
  }
  return DenseOperator(basis, std::move(m), true);
}

double qfi_staggered(const StateVector& state) {
  const SpinBasis& basis = state.basis();
  const std::size_t dim = basis.dimension();
  std::vector<double> p(dim);
  kernels::abs_sq(state.amplitudes().data(), p.data(), dim);
  double o1 = 0.0, o2 = 0.0;
  for (std::size_t b = 0; b < dim; ++b) {
    double v = 0.0;
    for (int j = 1; j <= basis.sites(); ++j)
      v += (j % 2 == 0 ? 1.0 : -1.0) * basis.sz_sign(b, j);
    o1 += p[b] * v;
    o2 += p[b] * v * v;
  }
  return (o2 - o1 * o1) / static_cast<double>(basis.sites());
}

double dimensionless_energy(double e_t, double e_0, const DenseOperator& h) {
  const double e_inf = h.matrix().trace().real() / static_cast<double>(h.dimension());
  const double denom = e_inf - e_0;
  if (std::abs(denom) < 1e-9 * h.frobenius_norm())
    throw param_domain_error("dimensionless_energy: E_inf - E_0 is degenerate");
  return (e_t - e_0) / denom;
}

double bipartite_entropy_density(const StateVector& state) {
  const int L = state.basis().sites();
  const int half = L / 2;
  if (half < 1) return 0.0;
  std::vector<int> left(half);
  for (int j = 1; j <= half; ++j) left[j - 1] = j;
  return von_neumann_entropy(partial_trace(state, left)) / static_cast<double>(L);
}

double participation_ratio(const StateVector& psi0, const DenseOperator& h) {
  if (!(psi0.basis() == h.basis()))
    throw std::invalid_argument("participation_ratio: basis mismatch");
  const auto& es = h.eigensystem();
  const std::size_t dim = h.dimension();
  std::vector<cplx> overlaps(dim);
  kernels::matvec_adj(es.vectors.data(), psi0.amplitudes().data(), overlaps.data(), dim);
  double sum4 = 0.0;
  for (const cplx& c : overlaps) {
    const double p = std::norm(c);
    sum4 += p * p;
  }
  return 1.0 / sum4;
}

double predicted_resonance_j(double period_ns, SiteKind kind, int n) {
  if (n < 1) throw std::invalid_argument("predicted_resonance_j: n must be >= 1");
  if (period_ns <= 0.0) throw std::invalid_argument("predicted_resonance_j: period must be > 0");
  const double base = 1e3 / period_ns;
  return kind == SiteKind::End ? n * base : n * base / 2.0;
}

} // namespace gradtc
