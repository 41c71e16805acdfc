#pragma once

#include "jacobi/numerics.hpp"

namespace jacobi {

/// g = [[a, b], [conj(b), conj(a)]] with |a|^2 - |b|^2 = 1.
class Su11Element {
public:
  /// Throws DomainError unless |a|^2 - |b|^2 = 1 within 1e-12 (scaled by |a|^2 + |b|^2).
  Su11Element(cplx a, cplx b);

  static Su11Element identity() { return Su11Element(1.0, 0.0); }
  /// Element with a = e^{i phi} cosh r, b = e^{i theta} sinh r.
  static Su11Element from_polar(double r, double theta, double phi);

  cplx a() const noexcept { return a_; }
  cplx b() const noexcept { return b_; }
  /// |a|^2 - |b|^2 - 1
  double determinant_defect() const noexcept;
  /// Rescale (a, b) so that the determinant is exactly one up to rounding.
  Su11Element renormalized() const;

  /// Action of g^{-1} on the Heisenberg translation: conj(a) alpha - b conj(alpha).
  cplx inverse_act(cplx alpha) const noexcept;
  /// Action of g: a alpha + b conj(alpha).
  cplx act(cplx alpha) const noexcept;

private:
  struct Unchecked {};
  Su11Element(cplx a, cplx b, Unchecked) noexcept : a_(a), b_(b) {}

  cplx a_;
  cplx b_;

  friend Su11Element su11_compose(const Su11Element&, const Su11Element&);
  friend Su11Element su11_inverse(const Su11Element&);
};

/// Matrix product; throws DriftError if the determinant defect exceeds 1e-10.
Su11Element su11_compose(const Su11Element& g1, const Su11Element& g2);
Su11Element su11_inverse(const Su11Element& g);
/// Moebius action w -> (a w + b) / (conj(b) w + conj(a)) on the unit disk.
cplx su11_act_disk(const Su11Element& g, cplx w);

/// Point of the universal cover: omega in R (unbounded), |gamma| < 1.
class CoveringElement {
public:
  CoveringElement(double omega, cplx gamma);

  double omega() const noexcept { return omega_; }
  cplx gamma() const noexcept { return gamma_; }

  /// a = e^{i omega} (1 - |gamma|^2)^{-1/2}, b = e^{i omega} gamma (1 - |gamma|^2)^{-1/2}.
  Su11Element projection() const;

private:
  double omega_;
  cplx gamma_;
};

/// Product on the cover. omega of the product is omega1 + omega2 + delta with
/// delta the principal argument of 1 + gamma1 conj(gamma2) e^{-2 i omega2},
/// the unique lift that is continuous and additive on rotations.
CoveringElement covering_compose(const CoveringElement& c1, const CoveringElement& c2);

/// (g, alpha, t): SU(1,1) part, Heisenberg translation, center coordinate.
struct JacobiElement {
  Su11Element g = Su11Element::identity();
  cplx alpha{};
  double t = 0.0;

  static JacobiElement identity() { return {}; }
};

/// (g1 g2, g2^{-1}.alpha1 + alpha2, t1 + t2 + Im(g2^{-1}.alpha1 conj(alpha2)))
JacobiElement jacobi_compose(const JacobiElement& h1, const JacobiElement& h2);
/// (g^{-1}, -g.alpha, -t)
JacobiElement jacobi_inverse(const JacobiElement& h);

} // namespace jacobi
