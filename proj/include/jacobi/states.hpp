#pragma once

#include "jacobi/groups.hpp"
#include "jacobi/numerics.hpp"

#include <functional>
#include <span>
#include <vector>

namespace jacobi {

/// Manifold point (z, w) in C x D1 labeling the coherent state e_{z,w}.
class CsPoint {
public:
  CsPoint(cplx z, cplx w);

  cplx z() const noexcept { return z_; }
  cplx w() const noexcept { return w_; }

private:
  cplx z_;
  cplx w_;
};

/// Coefficients c_{nm} of sum c_{nm} phi_n (x) phi_{k'm}, n <= n_max, m <= m_max.
class CoeffVector {
public:
  CoeffVector(int n_max, int m_max, BargmannIndex k);

  int n_max() const noexcept { return n_max_; }
  int m_max() const noexcept { return m_max_; }
  const BargmannIndex& k() const noexcept { return k_; }

  cplx& operator()(int n, int m) { return coeffs_[index(n, m)]; }
  const cplx& operator()(int n, int m) const { return coeffs_[index(n, m)]; }

  std::span<cplx> coeffs() noexcept { return coeffs_; }
  std::span<const cplx> coeffs() const noexcept { return coeffs_; }

  double norm2() const;
  /// Mass in the last row and column relative to the total; an estimate of
  /// what truncation discarded.
  double tail_estimate() const;

private:
  std::size_t index(int n, int m) const {
    return static_cast<std::size_t>(n) * static_cast<std::size_t>(m_max_ + 1) + static_cast<std::size_t>(m);
  }

  int n_max_;
  int m_max_;
  BargmannIndex k_;
  std::vector<cplx> coeffs_;
};

struct ActionResult {
  cplx multiplier;
  CsPoint image;
  cplx lambda1;
  cplx z0;
};

namespace states {

inline constexpr int kDefaultTruncation = 128;

/// Coefficients of e_{z,w} = exp(z a^+ + w K_+) e_0 in the product basis:
/// c_{nm} = P_n(z,w)/sqrt(n!) * sqrt(Gamma(m+2k')/(m! Gamma(2k'))) w^m.
/// Requires k >= 1/4; for k = 1/4 (k' = 0) the second factor is trivial and
/// m_max is forced to 0. Warns when the tail estimate exceeds 1e-10.
CoeffVector cs_coefficients(const CsPoint& p, const BargmannIndex& k, int n_max = kDefaultTruncation,
                            int m_max = kDefaultTruncation);

/// K(p1, p2) = (1 - w1 conj(w2))^{-2k} exp((2 z1 conj(z2) + z1^2 conj(w2) + conj(z2)^2 w1) / (2 (1 - w1 conj(w2)))).
cplx kernel(const CsPoint& p1, const CsPoint& p2, const BargmannIndex& k);
/// Principal logarithm of kernel(); finite where kernel() would overflow.
cplx log_kernel(const CsPoint& p1, const CsPoint& p2, const BargmannIndex& k);

/// f_{nks}(alpha, w) = f_{k's}(w) P_n(alpha, w) / sqrt(n!), k' = k - 1/4 > 0.
cplx basis_function(int n, int s, const BargmannIndex& k, cplx alpha, cplx w);

struct SeriesProduct {
  cplx value;
  /// False when the last quarter of the partial sums moved by more than
  /// 1e-12 relative, i.e. the inputs were truncated too early.
  bool converged;
};

/// (f, g)_k = sum_n Gamma(2k) Gamma(n+1) / Gamma(2k+n) conj(a_n) b_n.
SeriesProduct scalar_product_series(std::span<const cplx> a, std::span<const cplx> b, const BargmannIndex& k);

struct QuadratureResult {
  cplx value;
  double error_estimate;
  int radial_nodes;
  bool converged;
};

using DiskFunction = std::function<cplx(cplx)>;
using ProductFunction = std::function<cplx(cplx alpha, cplx w)>;

/// (f, g)_k = (2k-1)/pi int_D conj(f) g (1 - |w|^2)^{2k-2} d^2w for k > 1/2.
/// Gauss-Jacobi in |w|^2 times the trapezoid rule in angle, doubled until the
/// estimate settles to tol.
QuadratureResult scalar_product_disk_quadrature(const DiskFunction& f, const DiskFunction& g, const BargmannIndex& k,
                                                double tol = 1e-13);

/// (f, g)_k = (4k-3)/(2 pi^2) int conj(f) g / ((1-|w|^2)^3 K) d^2alpha d^2w for k > 3/4.
/// The alpha integral is done exactly for polynomial times Gaussian
/// integrands with Gauss-Hermite nodes in the principal axes of the
/// Gaussian factor of 1/K.
QuadratureResult scalar_product_cjk_quadrature(const ProductFunction& f, const ProductFunction& g,
                                               const BargmannIndex& k, double tol = 1e-11);

struct PsiRelation {
  cplx prefactor;
  CsPoint point;
};

/// Psi_{alpha,w} = (1 - |w|^2)^k exp(-conj(alpha) z / 2) e_{z,w}, z = alpha - w conj(alpha).
PsiRelation psi_relation(cplx alpha, cplx w, const BargmannIndex& k);

/// pi(h) e_{z,w} = (conj(a) + conj(b) w)^{-2k} exp(-lambda1) e_{z1,w1}. The
/// center coordinate h.t is not used. For non-integer 2k the power takes the
/// principal branch.
ActionResult act_on_cs(const JacobiElement& h, const CsPoint& p, const BargmannIndex& k);

/// Same action for an element of the covering group; the multiplier
/// e^{2ik omega} (1-|gamma|^2)^k (1 + conj(gamma) w)^{-2k} e^{-lambda1} is
/// single-valued for every k > 0.
ActionResult act_on_cs_covering(const CoveringElement& c, cplx alpha, const CsPoint& p, const BargmannIndex& k);

/// Taylor coefficients (length `length`) of [T(g)_k f](z) =
/// (conj(a) + conj(b) z)^{-2k} f((a z + b) / (conj(b) z + conj(a))) for
/// f = sum a_n z^n. Principal branch for non-integer 2k.
std::vector<cplx> discrete_series_action(const Su11Element& g, std::span<const cplx> f, const BargmannIndex& k,
                                         std::size_t length);

/// The holomorphic generators d/dz, k + z d/dz, 2kz + z^2 d/dz on power-series
/// coefficients; the output has one more coefficient than the input.
std::vector<cplx> apply_dk_minus(std::span<const cplx> f);
std::vector<cplx> apply_dk_zero(std::span<const cplx> f, const BargmannIndex& k);
std::vector<cplx> apply_dk_plus(std::span<const cplx> f, const BargmannIndex& k);

} // namespace states
} // namespace jacobi
