#include "jacobi/states.hpp"

#include "jacobi/errors.hpp"
#include "jacobi/quadrature.hpp"
#include "jacobi/simd.hpp"

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <numbers>
#include <string>

namespace jacobi {

using numerics::ipow;
using numerics::log_gamma_ratio;

namespace {

constexpr double kPrimeZeroTol = 1e-12;

void require_disk(cplx w, const char* who) {
  if (!(std::abs(w) < 1.0)) {
    throw DomainError(std::string(who) + ": |w| must be < 1");
  }
}

bool finite(cplx z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// sqrt(Gamma(s + 2l) / (s! Gamma(2l))) for l > 0
double disk_basis_norm(int s, double l) {
  return std::exp(0.5 * (log_gamma_ratio(s + 2.0 * l, 2.0 * l) - std::lgamma(s + 1.0)));
}

} // namespace

CsPoint::CsPoint(cplx z, cplx w) : z_(z), w_(w) {
  if (!finite(z) || !finite(w)) {
    throw DomainError("CsPoint: non-finite coordinates");
  }
  require_disk(w, "CsPoint");
}

CoeffVector::CoeffVector(int n_max, int m_max, BargmannIndex k)
    : n_max_(n_max), m_max_(m_max), k_(k), coeffs_() {
  if (n_max < 0 || m_max < 0) {
    throw DomainError("CoeffVector: truncation orders must be nonnegative");
  }
  coeffs_.resize(static_cast<std::size_t>(n_max + 1) * static_cast<std::size_t>(m_max + 1));
}

double CoeffVector::norm2() const { return simd::cdotc(coeffs_, coeffs_).real(); }

double CoeffVector::tail_estimate() const {
  const double total = norm2();
  if (total == 0.0) {
    return 0.0;
  }
  double edge = 0.0;
  for (int n = 0; n <= n_max_; ++n) {
    for (int m = 0; m <= m_max_; ++m) {
      const bool last_rows = n_max_ > 0 && n >= n_max_ - 1;
      const bool last_cols = m_max_ > 0 && m >= m_max_ - 1;
      if (last_rows || last_cols) {
        edge += std::norm((*this)(n, m));
      }
    }
  }
  return edge / total;
}

namespace states {

CoeffVector cs_coefficients(const CsPoint& p, const BargmannIndex& k, int n_max, int m_max) {
  const double kp = k.prime();
  if (kp < -kPrimeZeroTol) {
    throw DomainError("cs_coefficients: the splitting K = (a^+)^2/2 + K' requires k >= 1/4");
  }
  if (kp <= kPrimeZeroTol) {
    m_max = 0;
  }
  CoeffVector out(n_max, m_max, k);
  const std::vector<cplx> fock = numerics::pn_normalized(n_max, p.z(), p.w());
  std::vector<cplx> second(static_cast<std::size_t>(m_max) + 1);
  second[0] = 1.0;
  for (int m = 0; m < m_max; ++m) {
    second[m + 1] = second[m] * p.w() * std::sqrt((m + 2.0 * kp) / (m + 1.0));
  }
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= m_max; ++m) {
      out(n, m) = fock[n] * second[m];
    }
  }
  if (const double tail = out.tail_estimate(); tail > 1e-10) {
    warn("cs_coefficients: truncation tail " + format_number(tail) + " exceeds 1e-10 of the norm");
  }
  return out;
}

cplx log_kernel(const CsPoint& p1, const CsPoint& p2, const BargmannIndex& k) {
  const cplx z1 = p1.z();
  const cplx w1 = p1.w();
  const cplx zb = std::conj(p2.z());
  const cplx wb = std::conj(p2.w());
  const cplx d = 1.0 - w1 * wb;
  return -2.0 * k.value() * std::log(d) + (2.0 * z1 * zb + z1 * z1 * wb + zb * zb * w1) / (2.0 * d);
}

cplx kernel(const CsPoint& p1, const CsPoint& p2, const BargmannIndex& k) {
  return std::exp(log_kernel(p1, p2, k));
}

cplx basis_function(int n, int s, const BargmannIndex& k, cplx alpha, cplx w) {
  const double kp = k.prime();
  if (kp <= kPrimeZeroTol) {
    throw DomainError("basis_function: requires k' = k - 1/4 > 0");
  }
  if (n < 0 || s < 0) {
    throw DomainError("basis_function: indices must be nonnegative");
  }
  require_disk(w, "basis_function");
  const cplx fock = numerics::pn_normalized(n, alpha, w)[static_cast<std::size_t>(n)];
  return fock * disk_basis_norm(s, kp) * ipow(w, s);
}

SeriesProduct scalar_product_series(std::span<const cplx> a, std::span<const cplx> b, const BargmannIndex& k) {
  const std::size_t len = std::min(a.size(), b.size());
  if (len == 0) {
    return {0.0, true};
  }
  std::vector<double> weight(len);
  const double two_k = 2.0 * k.value();
  weight[0] = 1.0;
  for (std::size_t n = 0; n + 1 < len; ++n) {
    weight[n + 1] = weight[n] * (n + 1.0) / (two_k + static_cast<double>(n));
  }
  const cplx value = simd::cdotc_weighted(weight, a.first(len), b.first(len));
  const std::size_t tail_len = std::max<std::size_t>(1, len / 4);
  double tail = 0.0;
  for (std::size_t n = len - tail_len; n < len; ++n) {
    tail += weight[n] * std::abs(a[n]) * std::abs(b[n]);
  }
  return {value, tail <= 1e-12 * std::max(std::abs(value), DBL_MIN)};
}

QuadratureResult scalar_product_disk_quadrature(const DiskFunction& f, const DiskFunction& g, const BargmannIndex& k,
                                                double tol) {
  if (!(k.value() > 0.5)) {
    throw DomainError("scalar_product_disk_quadrature: the measure is finite only for k > 1/2");
  }
  const double two_k = 2.0 * k.value();
  QuadratureResult result{0.0, INFINITY, 0, false};
  cplx previous{};
  for (int n = 8; n <= 512; n *= 2) {
    const auto radial = quadrature::gauss_jacobi_unit(n, two_k - 2.0);
    const int angles = 2 * n + 2;
    std::vector<cplx> fv;
    std::vector<cplx> gv;
    std::vector<double> wt;
    fv.reserve(static_cast<std::size_t>(n * angles));
    gv.reserve(fv.capacity());
    wt.reserve(fv.capacity());
    for (int i = 0; i < n; ++i) {
      const double rho = std::sqrt(radial.nodes[i]);
      // (2k-1)/pi * (1/2) du * (2 pi / angles) dtheta
      const double weight = (two_k - 1.0) * radial.weights[i] / angles;
      for (int j = 0; j < angles; ++j) {
        const cplx w = std::polar(rho, 2.0 * std::numbers::pi * j / angles);
        fv.push_back(f(w));
        gv.push_back(g(w));
        wt.push_back(weight);
      }
    }
    const cplx value = simd::cdotc_weighted(wt, fv, gv);
    const double scale = std::sqrt(std::abs(simd::cdotc_weighted(wt, fv, fv).real() *
                                            simd::cdotc_weighted(wt, gv, gv).real()));
    result.value = value;
    result.radial_nodes = n;
    if (n > 8) {
      result.error_estimate = std::abs(value - previous);
      if (result.error_estimate <= tol * std::max({std::abs(value), scale, DBL_MIN})) {
        result.converged = true;
        return result;
      }
    }
    previous = value;
  }
  return result;
}

QuadratureResult scalar_product_cjk_quadrature(const ProductFunction& f, const ProductFunction& g,
                                               const BargmannIndex& k, double tol) {
  const double kk = k.value();
  if (!(4.0 * kk - 3.0 > 0.0)) {
    throw DomainError("scalar_product_cjk_quadrature: normalization (4k-3)/(2 pi^2) is not positive for k <= 3/4");
  }
  const double constant = (4.0 * kk - 3.0) / (2.0 * std::numbers::pi * std::numbers::pi);
  QuadratureResult result{0.0, INFINITY, 0, false};
  cplx previous{};
  for (int n = 8; n <= 64; n *= 2) {
    // (1 - |w|^2)^{2k-3} from the measure and 1/K, times the sqrt(1 - |w|^2)
    // Jacobian of the alpha-plane change of variables.
    const auto radial = quadrature::gauss_jacobi_unit(n, 2.0 * kk - 2.5);
    const auto herm = quadrature::gauss_hermite(n);
    const int angles = 2 * n + 2;
    std::vector<cplx> fv;
    std::vector<cplx> gv;
    std::vector<double> wt;
    const std::size_t total = static_cast<std::size_t>(n) * angles * n * n;
    fv.reserve(total);
    gv.reserve(total);
    wt.reserve(total);
    for (int i = 0; i < n; ++i) {
      const double rho = std::sqrt(radial.nodes[i]);
      const double sx = std::sqrt(1.0 - rho);
      const double sy = std::sqrt(1.0 + rho);
      const double outer = constant * radial.weights[i] * std::numbers::pi / angles;
      for (int j = 0; j < angles; ++j) {
        const double theta = 2.0 * std::numbers::pi * j / angles;
        const cplx w = std::polar(rho, theta);
        const cplx axis = std::polar(1.0, 0.5 * theta);
        for (int p = 0; p < n; ++p) {
          for (int q = 0; q < n; ++q) {
            const cplx alpha = axis * cplx(sx * herm.nodes[p], sy * herm.nodes[q]);
            fv.push_back(f(alpha, w));
            gv.push_back(g(alpha, w));
            wt.push_back(outer * herm.weights[p] * herm.weights[q]);
          }
        }
      }
    }
    const cplx value = simd::cdotc_weighted(wt, fv, gv);
    const double scale = std::sqrt(std::abs(simd::cdotc_weighted(wt, fv, fv).real() *
                                            simd::cdotc_weighted(wt, gv, gv).real()));
    result.value = value;
    result.radial_nodes = n;
    if (n > 8) {
      result.error_estimate = std::abs(value - previous);
      if (result.error_estimate <= tol * std::max({std::abs(value), scale, DBL_MIN})) {
        result.converged = true;
        return result;
      }
    }
    previous = value;
  }
  return result;
}

PsiRelation psi_relation(cplx alpha, cplx w, const BargmannIndex& k) {
  require_disk(w, "psi_relation");
  const cplx z = alpha - w * std::conj(alpha);
  const cplx prefactor =
      std::exp(k.value() * std::log1p(-std::norm(w)) - 0.5 * std::conj(alpha) * z);
  return {prefactor, CsPoint(z, w)};
}

namespace {

struct Moved {
  cplx lambda1;
  cplx z0;
  CsPoint image;
};

Moved move_point(const Su11Element& g, cplx alpha, const CsPoint& p) {
  const cplx a = g.a();
  const cplx bc = std::conj(g.b());
  const cplx z = p.z();
  const cplx w = p.w();
  const cplx den = std::conj(a) + bc * w;
  const cplx z0 = alpha - std::conj(alpha) * w;
  const cplx shifted = z + z0;
  const cplx lambda1 = bc * shifted * shifted / (2.0 * den) + std::conj(alpha) * (z + 0.5 * z0);
  return {lambda1, z0, CsPoint(shifted / den, (a * w + g.b()) / den)};
}

} // namespace

ActionResult act_on_cs(const JacobiElement& h, const CsPoint& p, const BargmannIndex& k) {
  const Moved mv = move_point(h.g, h.alpha, p);
  const cplx den = std::conj(h.g.a()) + std::conj(h.g.b()) * p.w();
  const cplx multiplier = std::exp(-2.0 * k.value() * std::log(den) - mv.lambda1);
  return {multiplier, mv.image, mv.lambda1, mv.z0};
}

ActionResult act_on_cs_covering(const CoveringElement& c, cplx alpha, const CsPoint& p, const BargmannIndex& k) {
  const Moved mv = move_point(c.projection(), alpha, p);
  const double kk = k.value();
  const cplx gamma = c.gamma();
  const cplx log_mult = cplx(0.0, 2.0 * kk * c.omega()) + kk * std::log1p(-std::norm(gamma)) -
                        2.0 * kk * std::log(1.0 + std::conj(gamma) * p.w()) - mv.lambda1;
  return {std::exp(log_mult), mv.image, mv.lambda1, mv.z0};
}

std::vector<cplx> discrete_series_action(const Su11Element& g, std::span<const cplx> f, const BargmannIndex& k,
                                         std::size_t length) {
  const cplx a = g.a();
  const cplx b = g.b();
  const cplx abar = std::conj(a);
  const cplx ratio = -std::conj(b) / abar; // (conj(a) + conj(b) z)^{-q} = conj(a)^{-q} (1 - ratio z)^{-q}
  const cplx base_phase = std::exp(-2.0 * k.value() * std::log(abar));
  std::vector<cplx> out(length);
  std::vector<cplx> binom;
  std::vector<cplx> series(length);
  for (std::size_t n = 0; n < f.size(); ++n) {
    if (f[n] == cplx{}) {
      continue;
    }
    const double q = 2.0 * k.value() + static_cast<double>(n);
    // (q)_j / j! ratio^j
    series[0] = 1.0;
    for (std::size_t j = 0; j + 1 < length; ++j) {
      series[j + 1] = series[j] * ratio * ((q + static_cast<double>(j)) / (j + 1.0));
    }
    // (a z + b)^n = sum_p C(n,p) a^p b^{n-p} z^p
    binom.assign(n + 1, 0.0);
    for (std::size_t p = 0; p <= n; ++p) {
      const double c = std::exp(std::lgamma(n + 1.0) - std::lgamma(p + 1.0) - std::lgamma(n - p + 1.0));
      binom[p] = c * ipow(a, static_cast<int>(p)) * ipow(b, static_cast<int>(n - p));
    }
    const cplx scale = f[n] * base_phase * ipow(abar, -static_cast<int>(n));
    for (std::size_t p = 0; p <= n && p < length; ++p) {
      const cplx bp = scale * binom[p];
      for (std::size_t j = 0; p + j < length; ++j) {
        out[p + j] += bp * series[j];
      }
    }
  }
  return out;
}

std::vector<cplx> apply_dk_minus(std::span<const cplx> f) {
  std::vector<cplx> out(f.size() + 1);
  for (std::size_t n = 1; n < f.size(); ++n) {
    out[n - 1] = static_cast<double>(n) * f[n];
  }
  return out;
}

std::vector<cplx> apply_dk_zero(std::span<const cplx> f, const BargmannIndex& k) {
  std::vector<cplx> out(f.size() + 1);
  for (std::size_t n = 0; n < f.size(); ++n) {
    out[n] = (k.value() + static_cast<double>(n)) * f[n];
  }
  return out;
}

std::vector<cplx> apply_dk_plus(std::span<const cplx> f, const BargmannIndex& k) {
  std::vector<cplx> out(f.size() + 1);
  for (std::size_t n = 0; n < f.size(); ++n) {
    out[n + 1] = (2.0 * k.value() + static_cast<double>(n)) * f[n];
  }
  return out;
}

} // namespace states
} // namespace jacobi
