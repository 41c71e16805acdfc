#include "jacobi/matrix_elements.hpp"

#include "jacobi/errors.hpp"
#include "jacobi/exact.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

namespace jacobi::me {

using numerics::ipow;
using numerics::log_gamma_ratio;

namespace {

constexpr double kPrimeZeroTol = 1e-12;

cplx unit_phase(cplx z) { return z / std::abs(z); }

} // namespace

cplx displacement_me(int m, int n, cplx alpha) {
  if (m < 0 || n < 0) {
    throw DomainError("displacement_me: indices must be nonnegative");
  }
  if (m < n) {
    return std::conj(displacement_me(n, m, -alpha));
  }
  if (alpha == cplx{}) {
    return m == n ? 1.0 : 0.0;
  }
  const int d = m - n;
  const double x = std::norm(alpha);
  const double log_mag = 0.5 * log_gamma_ratio(n + 1.0, m + 1.0) + d * std::log(std::abs(alpha)) - 0.5 * x;
  return std::exp(log_mag) * numerics::laguerre_assoc(n, d, x) * ipow(unit_phase(alpha), d);
}

std::vector<cplx> expkminus_coeffs(int m, const BargmannIndex& k, cplx wbar) {
  if (m < 0) {
    throw DomainError("expkminus_coeffs: m must be nonnegative");
  }
  const double two_k = 2.0 * k.value();
  std::vector<cplx> out(static_cast<std::size_t>(m) + 1);
  for (int p = 0; p <= m; ++p) {
    const double log_mag = 0.5 * (log_gamma_ratio(m + 1.0, m - p + 1.0) + log_gamma_ratio(two_k + m, two_k + m - p)) -
                           std::lgamma(p + 1.0);
    out[p] = std::exp(log_mag) * ipow(-wbar, p);
  }
  return out;
}

cplx squeeze_me(int m_prime, int m, const BargmannIndex& k, cplx w, SqueezeForm form) {
  if (m_prime < 0 || m < 0) {
    throw DomainError("squeeze_me: indices must be nonnegative");
  }
  if (!(std::abs(w) < 1.0)) {
    throw DomainError("squeeze_me: |w| must be < 1");
  }
  if (m > m_prime) {
    return squeeze_me(m, m_prime, k, -std::conj(w), form);
  }
  const int d = m_prime - m;
  if (w == cplx{}) {
    return d == 0 ? 1.0 : 0.0;
  }
  using numerics::exact;
  const double kk = k.value();
  const numerics::Rational r = exact(w.real()) * exact(w.real()) + exact(w.imag()) * exact(w.imag());
  const double log1m_r = std::log1p(-numerics::to_double(r));

  double log_mag = 0.5 * (log_gamma_ratio(m_prime + 1.0, m + 1.0) + log_gamma_ratio(2.0 * kk + m_prime, 2.0 * kk + m)) +
                   d * std::log(std::abs(w)) - std::lgamma(d + 1.0);
  double hyper = 0.0;
  const numerics::Rational c(d + 1);
  if (form == SqueezeForm::h11) {
    const numerics::Rational b = numerics::Rational(1 - m) - 2 * exact(kk);
    const numerics::Rational x = -r / (1 - r);
    hyper = numerics::gauss_2f1_terminating(m, b, c, x);
    log_mag += (kk + m) * log1m_r;
  } else {
    const numerics::Rational b = 2 * exact(kk) + m_prime;
    hyper = numerics::gauss_2f1_terminating(m, b, c, r);
    log_mag += kk * log1m_r;
  }
  return std::exp(log_mag) * hyper * ipow(unit_phase(w), d);
}

cplx fock_squeeze_me(int n_prime, int n, cplx w) {
  if (n_prime < 0 || n < 0) {
    throw DomainError("fock_squeeze_me: indices must be nonnegative");
  }
  if ((n_prime - n) % 2 != 0) {
    return 0.0;
  }
  const int eps = n % 2;
  return squeeze_me(n_prime / 2, n / 2, BargmannIndex(0.25 + 0.5 * eps), w);
}

cplx tg_me(const Su11Element& g, int m_prime, int m, const BargmannIndex& k) {
  const cplx a = g.a();
  const cplx s = squeeze_me(m_prime, m, k, g.b() / std::conj(a));
  if (k.is_integer_weight()) {
    const int power = static_cast<int>(std::lround(2.0 * (k.value() + m)));
    return ipow(unit_phase(a), power) * s;
  }
  warn("tg_me: 2k is not an integer; phase uses the principal argument of a (pass a CoveringElement to fix the branch)");
  return std::polar(1.0, 2.0 * (k.value() + m) * std::arg(a)) * s;
}

cplx tg_me(const CoveringElement& c, int m_prime, int m, const BargmannIndex& k) {
  const cplx tau = std::polar(1.0, 2.0 * c.omega()) * c.gamma();
  return std::polar(1.0, 2.0 * (k.value() + m) * c.omega()) * squeeze_me(m_prime, m, k, tau);
}

JacobiMe jacobi_me(int n_prime, int m_prime, int s, int m, int epsilon, const BargmannIndex& k, cplx alpha, cplx w,
                   cplx w_prime, int s_max, double tail_tol) {
  if (n_prime < 0 || m_prime < 0 || s < 0 || m < 0 || s_max < 0) {
    throw DomainError("jacobi_me: indices must be nonnegative");
  }
  if (epsilon != 0 && epsilon != 1) {
    throw DomainError("jacobi_me: epsilon must be 0 or 1");
  }
  if (!(std::abs(w) < 1.0) || !(std::abs(w_prime) < 1.0)) {
    throw DomainError("jacobi_me: |w| and |w'| must be < 1");
  }
  cplx second;
  const double kp = k.prime();
  if (kp > kPrimeZeroTol) {
    second = squeeze_me(m_prime, m, BargmannIndex(kp), w_prime);
  } else if (kp >= -kPrimeZeroTol && m_prime == 0 && m == 0) {
    second = 1.0; // k = 1/4: pure Fock realization, trivial second factor
  } else {
    throw DomainError("jacobi_me: requires k' = k - 1/4 > 0 (or k = 1/4 with m = m' = 0)");
  }

  const BargmannIndex fock_k(0.25 + 0.5 * epsilon);
  cplx sum{};
  for (int sp = 0; sp <= s_max; ++sp) {
    const cplx d = displacement_me(n_prime, 2 * sp + epsilon, alpha);
    if (d == cplx{}) {
      continue;
    }
    sum += d * squeeze_me(sp, s, fock_k, w);
  }

  // Columns of S(w) have unit norm, so by Cauchy-Schwarz the discarded part is
  // at most the l2 norm of the remaining same-parity entries of row n' of D(alpha).
  double tail2 = 0.0;
  const double reach = n_prime + 4.0 * std::norm(alpha) + 20.0;
  for (int sp = s_max + 1; sp <= s_max + 2000; ++sp) {
    const int col = 2 * sp + epsilon;
    const double term = std::norm(displacement_me(n_prime, col, alpha));
    tail2 += term;
    if (col > reach && term <= 1e-30 * tail2) {
      break;
    }
  }
  const double tail = std::sqrt(tail2);
  if (tail > tail_tol) {
    throw TruncationError("jacobi_me: tail bound " + format_number(tail) + " exceeds tolerance at s_max = " +
                          std::to_string(s_max));
  }
  return {second * sum, tail};
}

namespace {

template <class Fn>
void parallel_rows(std::size_t rows, unsigned threads, Fn&& fn) {
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(rows, 1)));
  if (threads <= 1) {
    for (std::size_t i = 0; i < rows; ++i) {
      fn(i);
    }
    return;
  }
  std::vector<std::exception_ptr> errors(threads);
  {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&, t] {
        try {
          for (std::size_t i = t; i < rows; i += threads) {
            fn(i);
          }
        } catch (...) {
          errors[t] = std::current_exception();
        }
      });
    }
  }
  for (auto& e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
}

} // namespace

MeTable me_table(TableKind kind, const BargmannIndex& k, cplx parameter, std::size_t dims,
                 const TableOptions& options) {
  if (dims == 0) {
    throw DomainError("me_table: dims must be positive");
  }
  MeTable table{kind, k, parameter, {}, {}, dims, dims, CMatrix(), {}, 0, 0};
  if (kind == TableKind::jacobi) {
    const std::size_t prime_dim = std::max<std::size_t>(1, options.prime_dim);
    table.w = options.w;
    table.w_prime = options.w_prime.value_or(options.w);
    table.fock_dim = dims;
    table.prime_dim = prime_dim;
    table.rows = table.cols = dims * prime_dim;
    table.tail_bounds.assign(table.rows * table.cols, 0.0);
  }
  table.entries = CMatrix(table.rows, table.cols);

  parallel_rows(table.rows, options.threads, [&](std::size_t i) {
    for (std::size_t j = 0; j < table.cols; ++j) {
      switch (kind) {
      case TableKind::displacement:
        table.entries(i, j) = displacement_me(static_cast<int>(i), static_cast<int>(j), parameter);
        break;
      case TableKind::squeeze:
        table.entries(i, j) = squeeze_me(static_cast<int>(i), static_cast<int>(j), k, parameter, options.form);
        break;
      case TableKind::jacobi: {
        const auto n_out = static_cast<int>(i / table.prime_dim);
        const auto m_out = static_cast<int>(i % table.prime_dim);
        const auto n_in = static_cast<int>(j / table.prime_dim);
        const auto m_in = static_cast<int>(j % table.prime_dim);
        const JacobiMe v = jacobi_me(n_out, m_out, n_in / 2, m_in, n_in % 2, k, parameter, table.w,
                                     table.w_prime, options.s_max, options.tail_tol);
        table.entries(i, j) = v.value;
        table.tail_bounds[i * table.cols + j] = v.tail_bound;
        break;
      }
      }
    }
  });
  return table;
}

} // namespace jacobi::me
