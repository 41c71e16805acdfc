// Compiled with -mavx2 -mfma; only reached through the runtime dispatcher.
#include "jacobi/simd.hpp"

#include <immintrin.h>

namespace jacobi::simd::avx2 {

namespace {

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

// [re0, im0, re1, im1] -> [im0, re0, im1, re1]
inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

// Lane-wise: even lanes minus odd lanes, summed.
inline double hsum_alternating(__m256d v) {
  const __m256d sign = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
  return hsum(_mm256_mul_pd(v, sign));
}

} // namespace

void cgemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  constexpr std::size_t block = 8; // complex columns per register tile
  for (std::size_t i = 0; i < m; ++i) {
    const cplx* arow = a + i * k;
    cplx* crow = c + i * n;
    std::size_t j0 = 0;
    for (; j0 + block <= n; j0 += block) {
      __m256d re[4] = {_mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd()};
      __m256d im[4] = {_mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd(), _mm256_setzero_pd()};
      for (std::size_t p = 0; p < k; ++p) {
        const __m256d ar = _mm256_set1_pd(arow[p].real());
        const __m256d ai = _mm256_set1_pd(arow[p].imag());
        const double* bp = dp(b + p * n + j0);
        for (int q = 0; q < 4; ++q) {
          const __m256d bv = _mm256_loadu_pd(bp + 4 * q);
          re[q] = _mm256_fmadd_pd(ar, bv, re[q]);
          im[q] = _mm256_fmadd_pd(ai, swap_pairs(bv), im[q]);
        }
      }
      double* cp = dp(crow + j0);
      for (int q = 0; q < 4; ++q) {
        _mm256_storeu_pd(cp + 4 * q, _mm256_addsub_pd(re[q], im[q]));
      }
    }
    for (; j0 + 2 <= n; j0 += 2) {
      __m256d re = _mm256_setzero_pd();
      __m256d im = _mm256_setzero_pd();
      for (std::size_t p = 0; p < k; ++p) {
        const __m256d bv = _mm256_loadu_pd(dp(b + p * n + j0));
        re = _mm256_fmadd_pd(_mm256_set1_pd(arow[p].real()), bv, re);
        im = _mm256_fmadd_pd(_mm256_set1_pd(arow[p].imag()), swap_pairs(bv), im);
      }
      _mm256_storeu_pd(dp(crow + j0), _mm256_addsub_pd(re, im));
    }
    for (; j0 < n; ++j0) {
      double sr = 0.0;
      double si = 0.0;
      for (std::size_t p = 0; p < k; ++p) {
        const cplx av = arow[p];
        const cplx bv = b[p * n + j0];
        sr += av.real() * bv.real() - av.imag() * bv.imag();
        si += av.real() * bv.imag() + av.imag() * bv.real();
      }
      crow[j0] = {sr, si};
    }
  }
}

cplx cdotc(std::size_t len, const cplx* a, const cplx* b) {
  __m256d direct = _mm256_setzero_pd(); // ar*br, ai*bi
  __m256d cross = _mm256_setzero_pd();  // ar*bi, ai*br
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d av = _mm256_loadu_pd(dp(a + i));
    const __m256d bv = _mm256_loadu_pd(dp(b + i));
    direct = _mm256_fmadd_pd(av, bv, direct);
    cross = _mm256_fmadd_pd(av, swap_pairs(bv), cross);
  }
  double re = hsum(direct);
  double im = hsum_alternating(cross);
  for (; i < len; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx cdotc_weighted(std::size_t len, const double* w, const cplx* a, const cplx* b) {
  __m256d direct = _mm256_setzero_pd();
  __m256d cross = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const __m256d wv = _mm256_setr_pd(w[i], w[i], w[i + 1], w[i + 1]);
    const __m256d av = _mm256_mul_pd(wv, _mm256_loadu_pd(dp(a + i)));
    const __m256d bv = _mm256_loadu_pd(dp(b + i));
    direct = _mm256_fmadd_pd(av, bv, direct);
    cross = _mm256_fmadd_pd(av, swap_pairs(bv), cross);
  }
  double re = hsum(direct);
  double im = hsum_alternating(cross);
  for (; i < len; ++i) {
    const double ar = w[i] * a[i].real();
    const double ai = w[i] * a[i].imag();
    re += ar * b[i].real() + ai * b[i].imag();
    im += ar * b[i].imag() - ai * b[i].real();
  }
  return {re, im};
}

} // namespace jacobi::simd::avx2
