#include "gradtc/spinops.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>

#include "gradtc/errors.hpp"
#include "gradtc/kernels.hpp"

namespace gradtc {

SpinBasis::SpinBasis(int sites) : sites_(sites) {
  if (sites < 1 || sites > 14)
    throw std::invalid_argument("SpinBasis: site count must be in [1, 14]");
}

void SpinBasis::require_site(int site) const {
  if (site < 1 || site > sites_)
    throw std::invalid_argument("site index " + std::to_string(site) +
                                " out of range 1.." + std::to_string(sites_));
}

DenseOperator::DenseOperator(SpinBasis basis, ComplexMatrix matrix,
                             std::optional<bool> hermitian_by_construction)
    : basis_(basis), payload_(std::make_shared<Payload>()) {
  if (matrix.rows() != basis.dimension() || matrix.cols() != basis.dimension())
    throw std::invalid_argument("DenseOperator: matrix does not match basis dimension");
  payload_->matrix = std::move(matrix);
  payload_->hermitian_by_construction = hermitian_by_construction;
}

DenseOperator DenseOperator::identity(const SpinBasis& basis) {
  return DenseOperator(basis, ComplexMatrix::identity(basis.dimension()), true);
}

DenseOperator DenseOperator::zero(const SpinBasis& basis) {
  return DenseOperator(basis, ComplexMatrix(basis.dimension(), basis.dimension()), true);
}

bool DenseOperator::is_hermitian(double tol) const {
  if (payload_->hermitian_by_construction.has_value())
    return *payload_->hermitian_by_construction;
  std::call_once(payload_->asym_once,
                 [this] { payload_->max_asym = payload_->matrix.max_asymmetry(); });
  return payload_->max_asym <= tol;
}

const linalg::HermitianEigen& DenseOperator::eigensystem() const {
  if (!is_hermitian(1e-9))
    throw std::invalid_argument("eigensystem: operator is not Hermitian");
  std::call_once(payload_->eig_once, [this] {
    payload_->eig = std::make_unique<linalg::HermitianEigen>(linalg::eigh(payload_->matrix));
  });
  return *payload_->eig;
}

void DenseOperator::check_same_basis(const DenseOperator& o) const {
  if (!(basis_ == o.basis_))
    throw std::invalid_argument("DenseOperator: basis mismatch");
}

DenseOperator DenseOperator::operator+(const DenseOperator& o) const {
  check_same_basis(o);
  return DenseOperator(basis_, matrix() + o.matrix());
}

DenseOperator DenseOperator::operator-(const DenseOperator& o) const {
  check_same_basis(o);
  return DenseOperator(basis_, matrix() - o.matrix());
}

DenseOperator DenseOperator::operator*(const DenseOperator& o) const {
  check_same_basis(o);
  return DenseOperator(basis_, matrix() * o.matrix());
}

DenseOperator DenseOperator::scaled(cplx factor) const {
  return DenseOperator(basis_, matrix() * factor);
}

DenseOperator DenseOperator::adjoint() const {
  return DenseOperator(basis_, matrix().adjoint());
}

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b) {
  return a * b - b * a;
}

StateVector::StateVector(SpinBasis basis, std::vector<cplx> amplitudes)
    : basis_(basis), amplitudes_(std::move(amplitudes)) {
  if (amplitudes_.size() != basis_.dimension())
    throw std::invalid_argument("StateVector: amplitude count does not match basis");
}

StateVector StateVector::basis_state(const SpinBasis& basis, std::size_t index) {
  if (index >= basis.dimension())
    throw std::invalid_argument("StateVector::basis_state: index out of range");
  std::vector<cplx> amp(basis.dimension(), cplx(0.0, 0.0));
  amp[index] = cplx(1.0, 0.0);
  return StateVector(basis, std::move(amp));
}

double StateVector::norm() const {
  return std::sqrt(kernels::norm_sq(amplitudes_.data(), amplitudes_.size()));
}

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) throw invariant_error("cannot normalize a zero state");
  const double inv = 1.0 / n;
  for (auto& a : amplitudes_) a *= inv;
}

DensityMatrix::DensityMatrix(std::vector<int> sites, ComplexMatrix matrix)
    : sites_(std::move(sites)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != (std::size_t(1) << sites_.size()) || !matrix_.square())
    throw std::invalid_argument("DensityMatrix: matrix dimension does not match site count");
}

double DensityMatrix::trace_real() const { return matrix_.trace().real(); }

namespace {

void check_factor_sites(const SpinBasis& basis,
                        std::span<const std::pair<int, PauliAxis>> factors) {
  std::set<int> seen;
  for (const auto& [site, axis] : factors) {
    (void)axis;
    basis.require_site(site);
    if (!seen.insert(site).second)
      throw std::invalid_argument("pauli_string: duplicate site " + std::to_string(site));
  }
}

} // namespace

DenseOperator pauli_string(const SpinBasis& basis,
                           std::span<const std::pair<int, PauliAxis>> factors) {
  check_factor_sites(basis, factors);
  const std::size_t dim = basis.dimension();
  ComplexMatrix m(dim, dim);
  // each Pauli string maps a basis state to exactly one basis state
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t row = col;
    cplx phase(1.0, 0.0);
    for (const auto& [site, axis] : factors) {
      const bool down = basis.spin_down(row, site);
      switch (axis) {
        case PauliAxis::X:
          row = basis.flipped(row, site);
          break;
        case PauliAxis::Y:
          // sigma^y |up> = i |down>, sigma^y |down> = -i |up>
          phase *= down ? cplx(0.0, -1.0) : cplx(0.0, 1.0);
          row = basis.flipped(row, site);
          break;
        case PauliAxis::Z:
          phase *= down ? -1.0 : 1.0;
          break;
      }
    }
    m(row, col) = phase;
  }
  return DenseOperator(basis, std::move(m), true);
}

DenseOperator pauli_string(const SpinBasis& basis,
                           std::initializer_list<std::pair<int, PauliAxis>> factors) {
  return pauli_string(basis, std::span<const std::pair<int, PauliAxis>>(factors.begin(),
                                                                        factors.size()));
}

DenseOperator global_rotation_x(const SpinBasis& basis, double angle) {
  // entry (r, c) factorizes over sites: cos(a/2) on equal bits, -i sin(a/2)
  // on flipped bits, so it only depends on the Hamming distance
  const std::size_t dim = basis.dimension();
  const int sites = basis.sites();
  const double c = std::cos(angle / 2.0);
  const cplx s = cplx(0.0, -1.0) * std::sin(angle / 2.0);
  std::vector<cplx> by_distance(sites + 1);
  for (int d = 0; d <= sites; ++d) {
    cplx v(1.0, 0.0);
    for (int k = 0; k < sites - d; ++k) v *= c;
    for (int k = 0; k < d; ++k) v *= s;
    by_distance[d] = v;
  }
  ComplexMatrix m(dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t cidx = 0; cidx < dim; ++cidx)
      m(r, cidx) = by_distance[std::popcount(r ^ cidx)];
  return DenseOperator(basis, std::move(m));
}

DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep) {
  const SpinBasis& basis = state.basis();
  if (keep.empty()) throw std::invalid_argument("partial_trace: keep list is empty");
  std::set<int> seen;
  for (int site : keep) {
    basis.require_site(site);
    if (!seen.insert(site).second)
      throw std::invalid_argument("partial_trace: duplicate site in keep list");
  }

  const int n_keep = static_cast<int>(keep.size());
  const int n_env = basis.sites() - n_keep;
  const std::size_t dim_keep = std::size_t(1) << n_keep;
  const std::size_t dim_env = std::size_t(1) << n_env;

  // scatter tables from sub-indices to full basis indices; the kept
  // sub-basis orders keep[0] as its most significant bit
  std::vector<int> env_sites;
  for (int site = 1; site <= basis.sites(); ++site)
    if (!seen.count(site)) env_sites.push_back(site);

  std::vector<std::size_t> keep_mask(dim_keep, 0), env_mask(dim_env, 0);
  for (std::size_t k = 0; k < dim_keep; ++k) {
    std::size_t b = 0;
    for (int idx = 0; idx < n_keep; ++idx)
      if ((k >> (n_keep - 1 - idx)) & 1u)
        b |= std::size_t(1) << basis.bit_position(keep[idx]);
    keep_mask[k] = b;
  }
  for (std::size_t e = 0; e < dim_env; ++e) {
    std::size_t b = 0;
    for (int idx = 0; idx < n_env; ++idx)
      if ((e >> (n_env - 1 - idx)) & 1u)
        b |= std::size_t(1) << basis.bit_position(env_sites[idx]);
    env_mask[e] = b;
  }

  // gather amplitudes as rows over the environment, then the reduced matrix
  // is a Gram matrix of those rows
  auto amps = state.amplitudes();
  ComplexMatrix rows(dim_keep, dim_env);
  for (std::size_t k = 0; k < dim_keep; ++k)
    for (std::size_t e = 0; e < dim_env; ++e)
      rows(k, e) = amps[keep_mask[k] | env_mask[e]];

  ComplexMatrix rho(dim_keep, dim_keep);
  for (std::size_t k1 = 0; k1 < dim_keep; ++k1)
    for (std::size_t k2 = 0; k2 < dim_keep; ++k2)
      rho(k1, k2) =
          kernels::dot_conj(rows.data() + k2 * dim_env, rows.data() + k1 * dim_env, dim_env);

  return DensityMatrix(std::vector<int>(keep.begin(), keep.end()), std::move(rho));
}

double von_neumann_entropy(const DensityMatrix& rho) {
  const auto es = linalg::eigh(rho.matrix());
  double s = 0.0;
  for (double p : es.values) {
    if (p < -1e-6)
      throw invariant_error("von_neumann_entropy: eigenvalue " + std::to_string(p) +
                            " signals a corrupted density matrix");
    if (p <= 0.0) continue;  // clipped
    s -= p * std::log(p);
  }
  return s;
}

double expectation(const StateVector& state, const DenseOperator& op) {
  if (!(state.basis() == op.basis()))
    throw std::invalid_argument("expectation: basis mismatch");
  if (!op.is_hermitian(1e-9))
    throw std::invalid_argument("expectation: operator is not Hermitian");
  const auto y = op.matrix().apply(state.amplitudes());
  return kernels::dot_conj(state.amplitudes().data(), y.data(), y.size()).real();
}

std::vector<double> sz_expectations(const StateVector& state) {
  const SpinBasis& basis = state.basis();
  const std::size_t dim = basis.dimension();
  std::vector<double> p(dim);
  kernels::abs_sq(state.amplitudes().data(), p.data(), dim);
  std::vector<double> sz(basis.sites(), 0.0);
  for (int site = 1; site <= basis.sites(); ++site) {
    // sign flips in contiguous blocks of 2^(L-site)
    const std::size_t block = std::size_t(1) << basis.bit_position(site);
    double acc = 0.0;
    for (std::size_t start = 0; start < dim; start += 2 * block) {
      for (std::size_t i = start; i < start + block; ++i) acc += p[i];
      for (std::size_t i = start + block; i < start + 2 * block; ++i) acc -= p[i];
    }
    sz[site - 1] = acc;
  }
  return sz;
}

} // namespace gradtc
