#pragma once

// Eigen-factorizations on top of LAPACK. Everything physics-facing goes
// through these two entry points: zheevd for Hermitian matrices and the
// complex Schur form (zgees) for unitaries, which is exact for normal
// matrices up to roundoff.

#include <vector>

#include "gradtc/matrix.hpp"

namespace gradtc::linalg {

struct HermitianEigen {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k is the eigenvector of values[k]
};

HermitianEigen eigh(const ComplexMatrix& a);

struct UnitaryEigen {
  std::vector<cplx> values;
  ComplexMatrix vectors;  // orthonormal columns (Schur vectors)
};

UnitaryEigen eig_unitary(const ComplexMatrix& u);

// V diag(exp(-i * scale * lambda_k)) V^H
ComplexMatrix phase_exponential(const HermitianEigen& es, double scale);

// psi <- V diag(exp(-i * scale * lambda_k)) V^H psi, without forming the matrix
void apply_phase_exponential(const HermitianEigen& es, double scale, std::vector<cplx>& psi);

// e^S for anti-Hermitian S (S^H = -S), computed exactly via eigh(iS)
ComplexMatrix expm_antihermitian(const ComplexMatrix& s);

} // namespace gradtc::linalg
