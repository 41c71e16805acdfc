#include "jacobi/numerics.hpp"

#include "jacobi/errors.hpp"
#include "jacobi/exact.hpp"

#include <array>
#include <cmath>
#include <string>

namespace jacobi {

BargmannIndex::BargmannIndex(double k) : k_(k), integer_weight_(false) {
  if (!std::isfinite(k) || k <= 0.0) {
    throw DomainError("Bargmann index must be a finite k > 0, got " + format_number(k));
  }
  integer_weight_ = std::abs(2.0 * k - std::round(2.0 * k)) <= 1e-12;
}

namespace numerics {

namespace {

// Stirling correction series ln Gamma(x) - [(x-1/2) ln x - x + ln(2 pi)/2]
// = sum_j kCoeff[j] x^{-(2j+1)}, truncated where x >= 10 makes the next
// term negligible.
constexpr std::array<double, 8> kStirling = {
    1.0 / 12.0,        -1.0 / 360.0,         1.0 / 1260.0, -1.0 / 1680.0,
    1.0 / 1188.0,      -691.0 / 360360.0,    1.0 / 156.0,  -3617.0 / 122400.0,
};

// x^{-p} - y^{-p} where x = y + d, written so that no cancellation occurs:
// -d * sum_{i<p} x^{-(p-i)} y^{-(1+i)}.
double inverse_power_difference(int p, double x, double y, double d) {
  const double u = 1.0 / x;
  const double v = 1.0 / y;
  double sum = 0.0;
  double upow = std::pow(u, p); // u^{p-i}, starting at i = 0
  double vpow = v;              // v^{1+i}
  for (int i = 0; i < p; ++i) {
    sum += upow * vpow;
    upow *= x;
    vpow *= v;
  }
  return -d * sum;
}

} // namespace

double log_gamma_ratio(double x, double y) {
  if (!(x > 0.0) || !(y > 0.0) || !std::isfinite(x) || !std::isfinite(y)) {
    throw DomainError("log_gamma_ratio: arguments must be finite and positive");
  }
  if (x == y) {
    return 0.0;
  }
  const double d = x - y;
  double acc = 0.0;
  // ln Gamma(t) = ln Gamma(t + 1) - ln t, applied to both arguments at once.
  double ys = y;
  while (std::min(ys, ys + d) < 10.0) {
    acc -= std::log1p(d / ys);
    ys += 1.0;
  }
  const double xs = ys + d;
  acc += (xs - 0.5) * std::log1p(d / ys) + d * (std::log(ys) - 1.0);
  for (std::size_t j = 0; j < kStirling.size(); ++j) {
    acc += kStirling[j] * inverse_power_difference(static_cast<int>(2 * j + 1), xs, ys, d);
  }
  return acc;
}

double laguerre_assoc(int n, int s, double x) {
  if (n < 0 || s < -n || !(x >= 0.0) || !std::isfinite(x)) {
    throw DomainError("laguerre_assoc: requires n >= 0, s >= -n, finite x >= 0");
  }
  double prev = 1.0;
  if (n == 0) {
    return prev;
  }
  double cur = 1.0 + s - x;
  for (int j = 1; j < n; ++j) {
    const double next = ((2.0 * j + 1.0 + s - x) * cur - (j + s) * prev) / (j + 1.0);
    prev = cur;
    cur = next;
  }
  return cur;
}

Rational exact(double x) {
  if (!std::isfinite(x)) {
    throw DomainError("exact: non-finite value");
  }
  return Rational(x);
}

double to_double(const Rational& q) { return q.get_d(); }

double gauss_2f1_terminating(int m, const Rational& b, const Rational& c, const Rational& x) {
  if (m < 0) {
    throw DomainError("gauss_2f1_terminating: m must be nonnegative");
  }
  if (m == 0) {
    return 1.0;
  }
  const mpz_class& bn = b.get_num();
  const mpz_class& bd = b.get_den();
  const mpz_class& cn = c.get_num();
  const mpz_class& cd = c.get_den();
  for (int j = 0; j < m; ++j) {
    if (cn + j * cd == 0) {
      throw PoleError("gauss_2f1_terminating: (c)_j vanishes at j = " + std::to_string(j));
    }
  }
  // Term ratio t_{j+1}/t_j = P_j / Q_j; nested Horner form
  // 1 + r_0 (1 + r_1 (... (1 + r_{m-1}))) evaluated as num/den without gcds.
  const mpz_class num_common = x.get_num() * cd;
  const mpz_class den_common = x.get_den() * bd;
  mpz_class num = 1;
  mpz_class den = 1;
  mpz_class p;
  mpz_class q;
  for (int j = m - 1; j >= 0; --j) {
    p = (bn + j * bd) * num_common;
    p *= (j - m);
    q = (cn + j * cd) * den_common;
    q *= (j + 1);
    num = den * q + p * num;
    den *= q;
  }
  Rational result(num, den);
  result.canonicalize();
  return to_double(result);
}

double gauss_2f1_terminating(int m, double b, double c, double x) {
  return gauss_2f1_terminating(m, exact(b), exact(c), exact(x));
}

cplx pn_polynomial(int n, cplx z, cplx w) {
  if (n < 0) {
    throw DomainError("pn_polynomial: n must be nonnegative");
  }
  cplx prev{1.0, 0.0};
  if (n == 0) {
    return prev;
  }
  cplx cur = z;
  for (int j = 1; j < n; ++j) {
    const cplx next = z * cur + static_cast<double>(j) * w * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

std::vector<cplx> pn_normalized(int n_max, cplx z, cplx w) {
  if (n_max < 0) {
    throw DomainError("pn_normalized: n_max must be nonnegative");
  }
  std::vector<cplx> q(static_cast<std::size_t>(n_max) + 1);
  q[0] = 1.0;
  if (n_max >= 1) {
    q[1] = z;
  }
  // Q_{n+1} = (z Q_n + sqrt(n) w Q_{n-1}) / sqrt(n+1)
  for (int j = 1; j < n_max; ++j) {
    q[j + 1] = (z * q[j] + std::sqrt(static_cast<double>(j)) * w * q[j - 1]) / std::sqrt(j + 1.0);
  }
  return q;
}

cplx ipow(cplx base, int exponent) {
  if (exponent < 0) {
    return 1.0 / ipow(base, -exponent);
  }
  cplx result{1.0, 0.0};
  while (exponent > 0) {
    if (exponent & 1) {
      result *= base;
    }
    base *= base;
    exponent >>= 1;
  }
  return result;
}

} // namespace numerics
} // namespace jacobi
