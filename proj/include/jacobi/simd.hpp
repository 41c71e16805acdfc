#pragma once

// Data-parallel complex kernels. Each kernel has a scalar reference
// implementation and an AVX2+FMA variant; the variant is chosen once at
// runtime from CPUID. Setting JACOBI_SIMD=scalar in the environment forces
// the reference path.

#include <complex>
#include <cstddef>
#include <span>
#include <string_view>

namespace jacobi::simd {

using cplx = std::complex<double>;

enum class Isa { scalar, avx2 };

/// ISA used by the dispatching entry points below.
Isa active_isa();
/// Best ISA the running CPU supports (ignores the environment override).
Isa detected_isa();
/// Override the dispatch choice; throws if the CPU lacks the requested ISA.
void set_isa(Isa isa);
std::string_view isa_name(Isa isa);

/// Row-major C(m x n) = A(m x k) * B(k x n). C must not alias A or B.
void cgemm(std::size_t m, std::size_t n, std::size_t k, std::span<const cplx> a,
           std::span<const cplx> b, std::span<cplx> c);

/// sum_i conj(a_i) * b_i
cplx cdotc(std::span<const cplx> a, std::span<const cplx> b);

/// sum_i w_i * conj(a_i) * b_i with real weights.
cplx cdotc_weighted(std::span<const double> w, std::span<const cplx> a,
                    std::span<const cplx> b);

// Per-ISA entry points, exposed for equivalence tests.
namespace scalar {
void cgemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
cplx cdotc(std::size_t len, const cplx* a, const cplx* b);
cplx cdotc_weighted(std::size_t len, const double* w, const cplx* a, const cplx* b);
} // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
void cgemm(std::size_t m, std::size_t n, std::size_t k, const cplx* a, const cplx* b, cplx* c);
cplx cdotc(std::size_t len, const cplx* a, const cplx* b);
cplx cdotc_weighted(std::size_t len, const double* w, const cplx* a, const cplx* b);
} // namespace avx2
#endif

} // namespace jacobi::simd
