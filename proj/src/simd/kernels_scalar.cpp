#include "jacobi/simd.hpp"

#include <algorithm>

namespace jacobi::simd::scalar {

void cgemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c) {
  std::fill(c, c + m * n, cplx{});
  for (std::size_t i = 0; i < m; ++i) {
    cplx* crow = c + i * n;
    for (std::size_t p = 0; p < k; ++p) {
      const double ar = a[i * k + p].real();
      const double ai = a[i * k + p].imag();
      if (ar == 0.0 && ai == 0.0) {
        continue;
      }
      const cplx* brow = b + p * n;
      for (std::size_t j = 0; j < n; ++j) {
        const double br = brow[j].real();
        const double bi = brow[j].imag();
        crow[j] = {crow[j].real() + (ar * br - ai * bi), crow[j].imag() + (ar * bi + ai * br)};
      }
    }
  }
}

cplx cdotc(std::size_t len, const cplx* a, const cplx* b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    re += a[i].real() * b[i].real() + a[i].imag() * b[i].imag();
    im += a[i].real() * b[i].imag() - a[i].imag() * b[i].real();
  }
  return {re, im};
}

cplx cdotc_weighted(std::size_t len, const double* w, const cplx* a, const cplx* b) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < len; ++i) {
    const double ar = w[i] * a[i].real();
    const double ai = w[i] * a[i].imag();
    re += ar * b[i].real() + ai * b[i].imag();
    im += ar * b[i].imag() - ai * b[i].real();
  }
  return {re, im};
}

} // namespace jacobi::simd::scalar
