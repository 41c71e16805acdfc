#include "jacobi/groups.hpp"

#include "jacobi/errors.hpp"

#include <cmath>
#include <numbers>

namespace jacobi {

namespace {

double defect(cplx a, cplx b) { return std::norm(a) - std::norm(b) - 1.0; }

double scale(cplx a, cplx b) { return std::max(1.0, std::norm(a) + std::norm(b)); }

} // namespace

Su11Element::Su11Element(cplx a, cplx b) : a_(a), b_(b) {
  if (!std::isfinite(a.real()) || !std::isfinite(a.imag()) || !std::isfinite(b.real()) ||
      !std::isfinite(b.imag())) {
    throw DomainError("Su11Element: non-finite entries");
  }
  if (std::abs(defect(a, b)) > 1e-12 * scale(a, b)) {
    throw DomainError("Su11Element: |a|^2 - |b|^2 != 1");
  }
}

Su11Element Su11Element::from_polar(double r, double theta, double phi) {
  return Su11Element(std::polar(std::cosh(r), phi), std::polar(std::sinh(r), theta));
}

double Su11Element::determinant_defect() const noexcept { return defect(a_, b_); }

Su11Element Su11Element::renormalized() const {
  const double det = std::norm(a_) - std::norm(b_);
  if (!(det > 0.0)) {
    throw DriftError("Su11Element: determinant not positive, cannot renormalize");
  }
  const double s = 1.0 / std::sqrt(det);
  return Su11Element(a_ * s, b_ * s, Unchecked{});
}

cplx Su11Element::inverse_act(cplx alpha) const noexcept {
  return std::conj(a_) * alpha - b_ * std::conj(alpha);
}

cplx Su11Element::act(cplx alpha) const noexcept { return a_ * alpha + b_ * std::conj(alpha); }

Su11Element su11_compose(const Su11Element& g1, const Su11Element& g2) {
  const cplx a = g1.a_ * g2.a_ + g1.b_ * std::conj(g2.b_);
  const cplx b = g1.a_ * g2.b_ + g1.b_ * std::conj(g2.a_);
  if (std::abs(defect(a, b)) > 1e-10 * scale(a, b)) {
    throw DriftError("su11_compose: determinant drift beyond 1e-10; renormalize the operands");
  }
  return Su11Element(a, b, Su11Element::Unchecked{});
}

Su11Element su11_inverse(const Su11Element& g) {
  return Su11Element(std::conj(g.a_), -g.b_, Su11Element::Unchecked{});
}

cplx su11_act_disk(const Su11Element& g, cplx w) {
  if (!(std::abs(w) < 1.0)) {
    throw DomainError("su11_act_disk: |w| must be < 1");
  }
  return (g.a() * w + g.b()) / (std::conj(g.b()) * w + std::conj(g.a()));
}

CoveringElement::CoveringElement(double omega, cplx gamma) : omega_(omega), gamma_(gamma) {
  if (!std::isfinite(omega) || !(std::abs(gamma) < 1.0)) {
    throw DomainError("CoveringElement: requires finite omega and |gamma| < 1");
  }
}

Su11Element CoveringElement::projection() const {
  const double amp = 1.0 / std::sqrt(1.0 - std::norm(gamma_));
  const cplx phase = std::polar(1.0, omega_);
  return Su11Element(phase * amp, phase * gamma_ * amp);
}

CoveringElement covering_compose(const CoveringElement& c1, const CoveringElement& c2) {
  const cplx rot = std::polar(1.0, -2.0 * c2.omega());
  const cplx u = 1.0 + c1.gamma() * std::conj(c2.gamma()) * rot;
  const cplx gamma = (c2.gamma() + c1.gamma() * rot) / u;
  return CoveringElement(c1.omega() + c2.omega() + std::arg(u), gamma);
}

JacobiElement jacobi_compose(const JacobiElement& h1, const JacobiElement& h2) {
  const cplx moved = h2.g.inverse_act(h1.alpha);
  return {su11_compose(h1.g, h2.g), moved + h2.alpha,
          h1.t + h2.t + std::imag(moved * std::conj(h2.alpha))};
}

JacobiElement jacobi_inverse(const JacobiElement& h) {
  return {su11_inverse(h.g), -h.g.act(h.alpha), -h.t};
}

} // namespace jacobi
