#include "gradtc/kernels.hpp"

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "kernels_tables.hpp"

namespace gradtc::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(GRADTC_HAVE_AVX2_TU) && defined(__x86_64__)
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa resolve_isa() {
  const char* env = std::getenv("GRADTC_KERNELS");
  const std::string pick = env ? env : "auto";
  if (pick == "scalar") return Isa::Scalar;
  if (pick == "avx2") {
    if (!isa_available(Isa::Avx2))
      throw std::runtime_error("GRADTC_KERNELS=avx2 but AVX2 kernels are unavailable");
    return Isa::Avx2;
  }
  return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
}

const KernelTable& active_table() {
  static const KernelTable& t = table(active_isa());
  return t;
}

} // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return true;
    case Isa::Avx2: return cpu_has_avx2();
  }
  return false;
}

const KernelTable& table(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return detail::scalar_table();
    case Isa::Avx2:
#if defined(GRADTC_HAVE_AVX2_TU)
      if (cpu_has_avx2()) return detail::avx2_table();
#endif
      throw std::invalid_argument("AVX2 kernel table unavailable on this CPU/build");
  }
  throw std::invalid_argument("unknown kernel ISA");
}

Isa active_isa() {
  static const Isa isa = resolve_isa();
  return isa;
}

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
  }
  return "?";
}

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  active_table().matvec(a, x, y, n);
}
void matvec_adj(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  active_table().matvec_adj(a, x, y, n);
}
void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  active_table().matmul(a, b, c, n);
}
void matmul_adj(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  active_table().matmul_adj(a, b, c, n);
}
void cmul_inplace(cplx* x, const cplx* f, std::size_t n) {
  active_table().cmul_inplace(x, f, n);
}
cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
  return active_table().dot_conj(x, y, n);
}
double norm_sq(const cplx* x, std::size_t n) { return active_table().norm_sq(x, n); }
void abs_sq(const cplx* x, double* p, std::size_t n) { active_table().abs_sq(x, p, n); }
void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  active_table().axpy(alpha, x, y, n);
}

} // namespace gradtc::kernels
