#include "jacobi/simd.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace jacobi::simd {

namespace {

Isa probe() {
#if (defined(__x86_64__) || defined(_M_X64)) && defined(__GNUC__)
  if (__builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma")) {
    return Isa::avx2;
  }
#endif
  return Isa::scalar;
}

Isa initial_choice() {
  const Isa best = probe();
  if (const char* env = std::getenv("JACOBI_SIMD"); env != nullptr && std::string(env) == "scalar") {
    return Isa::scalar;
  }
  return best;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{initial_choice()};
  return isa;
}

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) {
    throw std::invalid_argument("simd: operand lengths differ");
  }
}

} // namespace

Isa detected_isa() { return probe(); }

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (isa == Isa::avx2 && probe() != Isa::avx2) {
    throw std::runtime_error("simd: AVX2+FMA not supported on this CPU");
  }
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

void cgemm(std::size_t m, std::size_t n, std::size_t k, std::span<const cplx> a,
           std::span<const cplx> b, std::span<cplx> c) {
  if (a.size() != m * k || b.size() != k * n || c.size() != m * n) {
    throw std::invalid_argument("cgemm: span sizes do not match dimensions");
  }
#if defined(__x86_64__) || defined(_M_X64)
  if (active_isa() == Isa::avx2) {
    avx2::cgemm(m, n, k, a.data(), b.data(), c.data());
    return;
  }
#endif
  scalar::cgemm(m, n, k, a.data(), b.data(), c.data());
}

cplx cdotc(std::span<const cplx> a, std::span<const cplx> b) {
  check_sizes(a.size(), b.size());
#if defined(__x86_64__) || defined(_M_X64)
  if (active_isa() == Isa::avx2) {
    return avx2::cdotc(a.size(), a.data(), b.data());
  }
#endif
  return scalar::cdotc(a.size(), a.data(), b.data());
}

cplx cdotc_weighted(std::span<const double> w, std::span<const cplx> a, std::span<const cplx> b) {
  check_sizes(a.size(), b.size());
  check_sizes(w.size(), a.size());
#if defined(__x86_64__) || defined(_M_X64)
  if (active_isa() == Isa::avx2) {
    return avx2::cdotc_weighted(a.size(), w.data(), a.data(), b.data());
  }
#endif
  return scalar::cdotc_weighted(a.size(), w.data(), a.data(), b.data());
}

} // namespace jacobi::simd
