#include "gradtc/linalg.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

#include "gradtc/errors.hpp"
#include "gradtc/kernels.hpp"

namespace gradtc::linalg {

HermitianEigen eigh(const ComplexMatrix& a) {
  if (!a.square()) throw std::invalid_argument("eigh: matrix must be square");
  const lapack_int n = static_cast<lapack_int>(a.rows());
  HermitianEigen out;
  out.values.resize(a.rows());
  out.vectors = a;  // zheevd overwrites with eigenvectors
  const lapack_int info =
      LAPACKE_zheevd(LAPACK_ROW_MAJOR, 'V', 'U', n, out.vectors.data(), n, out.values.data());
  if (info != 0)
    throw invariant_error("zheevd failed with info=" + std::to_string(info));
  return out;
}

UnitaryEigen eig_unitary(const ComplexMatrix& u) {
  if (!u.square()) throw std::invalid_argument("eig_unitary: matrix must be square");
  const lapack_int n = static_cast<lapack_int>(u.rows());
  ComplexMatrix t = u;  // overwritten with the Schur form
  UnitaryEigen out;
  out.values.resize(u.rows());
  out.vectors = ComplexMatrix(u.rows(), u.rows());
  lapack_int sdim = 0;
  const lapack_int info = LAPACKE_zgees(LAPACK_ROW_MAJOR, 'V', 'N', nullptr, n, t.data(), n,
                                        &sdim, out.values.data(), out.vectors.data(), n);
  if (info != 0)
    throw invariant_error("zgees failed with info=" + std::to_string(info));
  return out;
}

ComplexMatrix phase_exponential(const HermitianEigen& es, double scale) {
  const std::size_t n = es.vectors.rows();
  // W = V diag(phases), then U = W V^H
  ComplexMatrix w = es.vectors;
  std::vector<cplx> phases(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ph = -scale * es.values[k];
    phases[k] = cplx(std::cos(ph), std::sin(ph));
  }
  for (std::size_t i = 0; i < n; ++i)
    kernels::cmul_inplace(w.data() + i * n, phases.data(), n);
  return w.multiply_adjoint(es.vectors);
}

void apply_phase_exponential(const HermitianEigen& es, double scale, std::vector<cplx>& psi) {
  const std::size_t n = es.vectors.rows();
  if (psi.size() != n)
    throw std::invalid_argument("apply_phase_exponential: dimension mismatch");
  std::vector<cplx> z(n);
  kernels::matvec_adj(es.vectors.data(), psi.data(), z.data(), n);
  for (std::size_t k = 0; k < n; ++k) {
    const double ph = -scale * es.values[k];
    z[k] *= cplx(std::cos(ph), std::sin(ph));
  }
  kernels::matvec(es.vectors.data(), z.data(), psi.data(), n);
}

ComplexMatrix expm_antihermitian(const ComplexMatrix& s) {
  // iS is Hermitian, and e^S = e^{-i (iS)}
  ComplexMatrix h = s;
  for (std::size_t i = 0; i < h.rows(); ++i)
    for (std::size_t j = 0; j < h.cols(); ++j) h(i, j) *= cplx(0.0, 1.0);
  if (h.max_asymmetry() > 1e-10 * std::max(1.0, h.max_abs()))
    throw std::invalid_argument("expm_antihermitian: input is not anti-Hermitian");
  return phase_exponential(eigh(h), 1.0);
}

} // namespace gradtc::linalg
