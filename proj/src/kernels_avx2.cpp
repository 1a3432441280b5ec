// AVX2+FMA kernels for interleaved complex<double> buffers. A __m256d holds
// two complex values [re0 im0 re1 im1]. Compiled with -mavx2 -mfma in its own
// translation unit; only reachable through the runtime-dispatched table.

#include "kernels_tables.hpp"

#include <immintrin.h>

namespace gradtc::kernels::detail {

namespace {

// [re0 im0 re1 im1] -> [im0 re0 im1 re1]
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0x5); }
// duplicate real parts: [re0 re0 re1 re1]
inline __m256d dup_re(__m256d v) { return _mm256_movedup_pd(v); }
// duplicate imaginary parts: [im0 im0 im1 im1]
inline __m256d dup_im(__m256d v) { return _mm256_permute_pd(v, 0xF); }

// elementwise complex product of two packed pairs
inline __m256d cmul(__m256d a, __m256d b) {
  return _mm256_fmaddsub_pd(a, dup_re(b), _mm256_mul_pd(swap_pairs(a), dup_im(b)));
}

// elementwise conj(a) * b
inline __m256d cmul_conj(__m256d a, __m256d b) {
  return _mm256_fmsubadd_pd(swap_pairs(a), dup_im(b), _mm256_mul_pd(a, dup_re(b)));
}

// horizontal reduction of a pair accumulator to one complex number
inline cplx reduce_pairs(__m256d acc) {
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return cplx(out[0], out[1]);
}

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

void matvec(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* row = a + i * n;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::size_t k = 0;
    for (; k < n4; k += 4) {
      acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(dp(row + k)),
                                      _mm256_loadu_pd(dp(x + k))));
      acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(dp(row + k + 2)),
                                      _mm256_loadu_pd(dp(x + k + 2))));
    }
    cplx acc = reduce_pairs(_mm256_add_pd(acc0, acc1));
    for (; k < n; ++k) acc += row[k] * x[k];
    y[i] = acc;
  }
}

void matvec_adj(const cplx* a, const cplx* x, cplx* y, std::size_t n) {
  for (std::size_t k = 0; k < n; ++k) y[k] = cplx(0.0, 0.0);
  const std::size_t n2 = n & ~std::size_t(1);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* row = a + i * n;
    const cplx xi = x[i];
    const __m256d xr = _mm256_set1_pd(xi.real());
    const __m256d xi_v = _mm256_set1_pd(xi.imag());
    std::size_t k = 0;
    for (; k < n2; k += 2) {
      __m256d av = _mm256_loadu_pd(dp(row + k));
      // conj(a) * xi: even = ar*xr + ai*xi, odd = ar*xi - ai*xr
      __m256d t = _mm256_fmsubadd_pd(swap_pairs(av), xi_v, _mm256_mul_pd(av, xr));
      __m256d yv = _mm256_loadu_pd(dp(y + k));
      _mm256_storeu_pd(dp(y + k), _mm256_add_pd(yv, t));
    }
    for (; k < n; ++k) y[k] += std::conj(row[k]) * xi;
  }
}

void matmul(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  // ikj broadcast form, two rows of C per pass so each B row is reused
  const std::size_t n2 = n & ~std::size_t(1);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    cplx* c0 = c + i * n;
    cplx* c1 = c0 + n;
    for (std::size_t j = 0; j < n; ++j) {
      c0[j] = cplx(0.0, 0.0);
      c1[j] = cplx(0.0, 0.0);
    }
    const cplx* a0 = a + i * n;
    const cplx* a1 = a0 + n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx* brow = b + k * n;
      const __m256d a0r = _mm256_set1_pd(a0[k].real());
      const __m256d a0i = _mm256_set1_pd(a0[k].imag());
      const __m256d a1r = _mm256_set1_pd(a1[k].real());
      const __m256d a1i = _mm256_set1_pd(a1[k].imag());
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        const __m256d bv = _mm256_loadu_pd(dp(brow + j));
        const __m256d bs = swap_pairs(bv);
        __m256d t0 = _mm256_fmaddsub_pd(bv, a0r, _mm256_mul_pd(bs, a0i));
        __m256d t1 = _mm256_fmaddsub_pd(bv, a1r, _mm256_mul_pd(bs, a1i));
        _mm256_storeu_pd(dp(c0 + j), _mm256_add_pd(_mm256_loadu_pd(dp(c0 + j)), t0));
        _mm256_storeu_pd(dp(c1 + j), _mm256_add_pd(_mm256_loadu_pd(dp(c1 + j)), t1));
      }
      for (; j < n; ++j) {
        c0[j] += a0[k] * brow[j];
        c1[j] += a1[k] * brow[j];
      }
    }
  }
  for (; i < n; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) crow[j] = cplx(0.0, 0.0);
    const cplx* arow = a + i * n;
    for (std::size_t k = 0; k < n; ++k) {
      const cplx* brow = b + k * n;
      const __m256d ar = _mm256_set1_pd(arow[k].real());
      const __m256d ai = _mm256_set1_pd(arow[k].imag());
      std::size_t j = 0;
      for (; j < n2; j += 2) {
        const __m256d bv = _mm256_loadu_pd(dp(brow + j));
        __m256d t = _mm256_fmaddsub_pd(bv, ar, _mm256_mul_pd(swap_pairs(bv), ai));
        _mm256_storeu_pd(dp(crow + j), _mm256_add_pd(_mm256_loadu_pd(dp(crow + j)), t));
      }
      for (; j < n; ++j) crow[j] += arow[k] * brow[j];
    }
  }
}

void matmul_adj(const cplx* a, const cplx* b, cplx* c, std::size_t n) {
  // C[i][j] = sum_k A[i][k] conj(B[j][k]): contiguous row-by-row dots
  const std::size_t n4 = n & ~std::size_t(3);
  for (std::size_t i = 0; i < n; ++i) {
    const cplx* arow = a + i * n;
    cplx* crow = c + i * n;
    for (std::size_t j = 0; j < n; ++j) {
      const cplx* brow = b + j * n;
      __m256d acc0 = _mm256_setzero_pd();
      __m256d acc1 = _mm256_setzero_pd();
      std::size_t k = 0;
      for (; k < n4; k += 4) {
        acc0 = _mm256_add_pd(acc0, cmul_conj(_mm256_loadu_pd(dp(brow + k)),
                                             _mm256_loadu_pd(dp(arow + k))));
        acc1 = _mm256_add_pd(acc1, cmul_conj(_mm256_loadu_pd(dp(brow + k + 2)),
                                             _mm256_loadu_pd(dp(arow + k + 2))));
      }
      cplx acc = reduce_pairs(_mm256_add_pd(acc0, acc1));
      for (; k < n; ++k) acc += arow[k] * std::conj(brow[k]);
      crow[j] = acc;
    }
  }
}

void cmul_inplace(cplx* x, const cplx* f, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    __m256d xv = _mm256_loadu_pd(dp(x + i));
    __m256d fv = _mm256_loadu_pd(dp(f + i));
    _mm256_storeu_pd(dp(x + i), cmul(xv, fv));
  }
  for (; i < n; ++i) x[i] *= f[i];
}

cplx dot_conj(const cplx* x, const cplx* y, std::size_t n) {
  const std::size_t n4 = n & ~std::size_t(3);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < n4; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul_conj(_mm256_loadu_pd(dp(x + i)),
                                         _mm256_loadu_pd(dp(y + i))));
    acc1 = _mm256_add_pd(acc1, cmul_conj(_mm256_loadu_pd(dp(x + i + 2)),
                                         _mm256_loadu_pd(dp(y + i + 2))));
  }
  cplx acc = reduce_pairs(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += std::conj(x[i]) * y[i];
  return acc;
}

double norm_sq(const cplx* x, std::size_t n) {
  const double* p = dp(x);
  const std::size_t m = 2 * n;
  const std::size_t m8 = m & ~std::size_t(7);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i < m8; i += 8) {
    __m256d v0 = _mm256_loadu_pd(p + i);
    __m256d v1 = _mm256_loadu_pd(p + i + 4);
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  __m256d acc = _mm256_add_pd(acc0, acc1);
  __m128d lo = _mm256_castpd256_pd128(acc);
  __m128d hi = _mm256_extractf128_pd(acc, 1);
  __m128d s = _mm_add_pd(lo, hi);
  double out = _mm_cvtsd_f64(_mm_hadd_pd(s, s));
  for (; i < m; ++i) out += p[i] * p[i];
  return out;
}

void abs_sq(const cplx* x, double* p, std::size_t n) {
  const std::size_t n2 = n & ~std::size_t(1);
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    __m256d v = _mm256_loadu_pd(dp(x + i));
    __m256d sq = _mm256_mul_pd(v, v);
    // [r0^2 i0^2 r1^2 i1^2] -> [r0^2+i0^2, r1^2+i1^2]
    __m128d lo = _mm256_castpd256_pd128(sq);
    __m128d hi = _mm256_extractf128_pd(sq, 1);
    _mm_storeu_pd(p + i, _mm_unpacklo_pd(_mm_hadd_pd(lo, lo), _mm_hadd_pd(hi, hi)));
  }
  for (; i < n; ++i)
    p[i] = x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::size_t n) {
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  const std::size_t n2 = n & ~std::size_t(1);
  std::size_t i = 0;
  for (; i < n2; i += 2) {
    __m256d xv = _mm256_loadu_pd(dp(x + i));
    __m256d t = _mm256_fmaddsub_pd(xv, ar, _mm256_mul_pd(swap_pairs(xv), ai));
    _mm256_storeu_pd(dp(y + i), _mm256_add_pd(_mm256_loadu_pd(dp(y + i)), t));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

} // namespace

const KernelTable& avx2_table() {
  static const KernelTable t = {&matvec,  &matvec_adj, &matmul,
                                &matmul_adj, &cmul_inplace, &dot_conj,
                                &norm_sq, &abs_sq,     &axpy};
  return t;
}

} // namespace gradtc::kernels::detail
