#pragma once

// Dense complex kernels behind all operator algebra and state evolution.
// Every kernel has a scalar reference implementation and, on x86-64, an
// AVX2+FMA variant; the active table is picked once at startup from cpuid.
// GRADTC_KERNELS=scalar|avx2|auto overrides the choice. The two paths are
// equivalence-tested against each other in tests/test_kernels.cpp.

#include <complex>
#include <cstddef>

namespace gradtc {
using cplx = std::complex<double>;
}

namespace gradtc::kernels {

enum class Isa { Scalar, Avx2 };

struct KernelTable {
  // y = A x, A is n x n row-major
  void (*matvec)(const cplx* a, const cplx* x, cplx* y, std::size_t n);
  // y = A^H x
  void (*matvec_adj)(const cplx* a, const cplx* x, cplx* y, std::size_t n);
  // C = A B, all n x n row-major; C must not alias A or B
  void (*matmul)(const cplx* a, const cplx* b, cplx* c, std::size_t n);
  // C = A B^H
  void (*matmul_adj)(const cplx* a, const cplx* b, cplx* c, std::size_t n);
  // x[i] *= f[i]
  void (*cmul_inplace)(cplx* x, const cplx* f, std::size_t n);
  // sum_i conj(x_i) y_i
  cplx (*dot_conj)(const cplx* x, const cplx* y, std::size_t n);
  // sum_i |x_i|^2
  double (*norm_sq)(const cplx* x, std::size_t n);
  // p[i] = |x_i|^2
  void (*abs_sq)(const cplx* x, double* p, std::size_t n);
  // y += alpha x
  void (*axpy)(cplx alpha, const cplx* x, cplx* y, std::size_t n);
};

bool isa_available(Isa isa);
const KernelTable& table(Isa isa);  // throws std::invalid_argument if unavailable
Isa active_isa();
const char* isa_name(Isa isa);

// Dispatching entry points; these forward to table(active_isa()).
void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n);
void matvec_adj(const cplx* a, const cplx* x, cplx* y, std::size_t n);
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n);
void matmul_adj(const cplx* a, const cplx* b, cplx* c, std::size_t n);
void cmul_inplace(cplx* x, const cplx* f, std::size_t n);
cplx dot_conj(const cplx* x, const cplx* y, std::size_t n);
double norm_sq(const cplx* x, std::size_t n);
void abs_sq(const cplx* x, double* p, std::size_t n);
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n);

} // namespace gradtc::kernels
