// Scalar reference kernels: the ground truth the SIMD variants are tested
// against, and the fallback on CPUs without AVX2.

#include "kernels_tables.hpp"

namespace gradtc::kernels::detail {

namespace {

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* row = a + i * n;
    cplx acc(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) acc += row[k] * x[k];
    y[i] = acc;
  }
}

void matvec_adj(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] = cplx(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* row = a + i * n;
    const cplx xi = x[i];
    for (std::size_t k = 0; k < n; ++k) y[k] += std::conj(row[k]) * xi;
  }
}

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = cplx(0.0, 0.0);
    const cplx* arow = a + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx aik = arow[k];
      const cplx* brow = b + k * n;
      for (std::size_t j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void matmul_adj(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* arow = a + i * n;
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx* brow = b + j * n;
      cplx acc(0.0, 0.0);
      for (std::size_t k = 0; k < n; ++k) acc += arow[k] * std::conj(brow[k]);
      crow[j] = acc;
    }
  }
}

void cmul_inplace(cplx* x, const cplx* f, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= f[i];
}

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
  cplx acc(0.0, 0.0);
  for (std::size_t i = 0; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm_sq(const cplx* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

void abs_sq(const cplx* x, double* p, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    p[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

} // namespace

const KernelTable& scalar_table() {
  static const KernelTable t = {&matvec,  &matvec_adj, &matmul,
                                &matmul_adj, &cmul_inplace, &dot_conj,
                                &norm_sq, &abs_sq,     &axpy};
  return t;
}

} // namespace gradtc::kernels::detail
