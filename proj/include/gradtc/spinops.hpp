#pragma once

// Hilbert-space bookkeeping and dense operator algebra for short spin chains:
// Pauli strings, global rotations, partial traces, entropies.

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "gradtc/linalg.hpp"
#include "gradtc/matrix.hpp"

namespace gradtc {

// z product basis over L sites. Basis index b stores site j in bit (L-j):
// site 1 is the most significant bit, bit value 0 means up (sigma^z = +1).
// Index 0 is therefore the all-up state. All bit manipulation elsewhere in
// the library must go through these helpers.
class SpinBasis {
 public:
  explicit SpinBasis(int sites);

  int sites() const { return sites_; }
  std::size_t dimension() const { return std::size_t(1) << sites_; }

  int bit_position(int site) const { return sites_ - site; }
  bool spin_down(std::size_t state, int site) const {
    return (state >> bit_position(site)) & 1u;
  }
  int sz_sign(std::size_t state, int site) const {
    return spin_down(state, site) ? -1 : +1;
  }
  std::size_t flipped(std::size_t state, int site) const {
    return state ^ (std::size_t(1) << bit_position(site));
  }

  void require_site(int site) const;  // throws std::invalid_argument when out of range

  friend bool operator==(const SpinBasis&, const SpinBasis&) = default;

 private:
  int sites_;
};

enum class PauliAxis { X, Y, Z };

// Immutable dense operator over a SpinBasis. Copies share the underlying
// matrix and its lazily computed caches (Hermiticity gap, eigensystem), so
// values are cheap to pass around and safe to use from many threads.
class DenseOperator {
 public:
  DenseOperator(SpinBasis basis, ComplexMatrix matrix,
                std::optional<bool> hermitian_by_construction = std::nullopt);

  static DenseOperator identity(const SpinBasis& basis);
  static DenseOperator zero(const SpinBasis& basis);

  const SpinBasis& basis() const { return basis_; }
  const ComplexMatrix& matrix() const { return payload_->matrix; }
  std::size_t dimension() const { return payload_->matrix.rows(); }

  // max_ij |A_ij - conj(A_ji)| <= tol; cached after first evaluation
  bool is_hermitian(double tol = 1e-12) const;

  // Eigendecomposition, computed once and shared. Requires Hermiticity
  // within 1e-9.
  const linalg::HermitianEigen& eigensystem() const;

  DenseOperator operator+(const DenseOperator& o) const;
  DenseOperator operator-(const DenseOperator& o) const;
  DenseOperator operator*(const DenseOperator& o) const;  // operator composition
  DenseOperator scaled(cplx factor) const;
  DenseOperator adjoint() const;

  double frobenius_norm() const { return matrix().frobenius_norm(); }
  double max_abs() const { return matrix().max_abs(); }

 private:
  struct Payload {
    ComplexMatrix matrix;
    mutable std::once_flag asym_once;
    mutable double max_asym = 0.0;
    mutable std::once_flag eig_once;
    mutable std::unique_ptr<linalg::HermitianEigen> eig;
    std::optional<bool> hermitian_by_construction;
  };

  void check_same_basis(const DenseOperator& o) const;

  SpinBasis basis_;
  std::shared_ptr<Payload> payload_;
};

DenseOperator commutator(const DenseOperator& a, const DenseOperator& b);

class StateVector {
 public:
  StateVector(SpinBasis basis, std::vector<cplx> amplitudes);
  static StateVector basis_state(const SpinBasis& basis, std::size_t index);

  const SpinBasis& basis() const { return basis_; }
  std::span<const cplx> amplitudes() const { return amplitudes_; }
  std::vector<cplx>& mutable_amplitudes() { return amplitudes_; }
  std::size_t dimension() const { return amplitudes_.size(); }

  double norm() const;
  void normalize();

 private:
  SpinBasis basis_;
  std::vector<cplx> amplitudes_;
};

// Reduced density matrix over an ordered list of kept sites.
class DensityMatrix {
 public:
  DensityMatrix(std::vector<int> sites, ComplexMatrix matrix);

  const std::vector<int>& sites() const { return sites_; }
  const ComplexMatrix& matrix() const { return matrix_; }
  std::size_t dimension() const { return matrix_.rows(); }

  double trace_real() const;

 private:
  std::vector<int> sites_;
  ComplexMatrix matrix_;
};

// Tensor product of the named Pauli operators with identity elsewhere.
DenseOperator pauli_string(const SpinBasis& basis,
                           std::span<const std::pair<int, PauliAxis>> factors);
DenseOperator pauli_string(const SpinBasis& basis,
                           std::initializer_list<std::pair<int, PauliAxis>> factors);

// prod_j exp(-i angle sigma^x_j / 2)
DenseOperator global_rotation_x(const SpinBasis& basis, double angle);

DensityMatrix partial_trace(const StateVector& state, std::span<const int> keep);

// -sum p ln p in nats; eigenvalues in [-1e-9, 0] are clipped to zero, and
// anything below -1e-6 signals a corrupted density matrix.
double von_neumann_entropy(const DensityMatrix& rho);

// <psi|A|psi> for Hermitian A; the imaginary residue is discarded.
double expectation(const StateVector& state, const DenseOperator& op);

// per-site <sigma^z_j> for all sites, 0-indexed by site-1
std::vector<double> sz_expectations(const StateVector& state);

} // namespace gradtc
