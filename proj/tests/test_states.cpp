#include "support.hpp"

#include "jacobi/sampling.hpp"
#include "jacobi/states.hpp"

#include <doctest.h>

#include <numbers>

using namespace jacobi;
using namespace jacobi::states;
using testing::rel_err;

namespace {

std::vector<cplx> unit(int n) {
  std::vector<cplx> f(static_cast<std::size_t>(n) + 1);
  f.back() = 1.0;
  return f;
}

} // namespace

TEST_CASE("CsPoint and CoeffVector") {
  CHECK_THROWS_AS(CsPoint(0.0, 1.0), DomainError);
  CHECK_THROWS_AS(CsPoint(NAN, 0.0), DomainError);
  CHECK_THROWS_AS(CoeffVector(-1, 0, BargmannIndex(1.0)), DomainError);
  CoeffVector v(4, 3, BargmannIndex(1.0));
  v(0, 0) = 3.0;
  v(4, 1) = cplx(0.0, 4.0);
  CHECK(v.norm2() == doctest::Approx(25.0));
  CHECK(v.coeffs().size() == 20);
  CHECK(v.tail_estimate() == doctest::Approx(16.0 / 25.0));
}

TEST_CASE("cs_coefficients") {
  const BargmannIndex k(1.75);
  SUBCASE("vacuum") {
    const auto c = cs_coefficients(CsPoint(0.0, 0.0), k, 6, 6);
    CHECK(c(0, 0) == cplx(1.0));
    CHECK(c.norm2() == doctest::Approx(1.0).epsilon(1e-15));
  }
  SUBCASE("Glauber limit") {
    const cplx z(0.8, -0.4);
    const auto c = cs_coefficients(CsPoint(z, 0.0), k, 20, 3);
    for (int n = 0; n <= 20; ++n) {
      CHECK(rel_err(c(n, 0), std::pow(z, n) / std::sqrt(std::tgamma(n + 1.0))) < 1e-13);
      CHECK(c(n, 1) == cplx(0.0));
    }
  }
  SUBCASE("reference entry") {
    // mpmath: P_7(z,w)/sqrt(7!) * sqrt(Gamma(3+2k')/(3! Gamma(2k'))) w^3
    testing::WarningCapture short_truncation;
    const auto c = cs_coefficients(CsPoint({0.6, 0.2}, {-0.3, 0.4}), k, 10, 10);
    CHECK(rel_err(c(7, 3), {0.052076958450402116, 0.016214730780658047}) < 1e-13);
  }
  SUBCASE("norm equals the kernel on the diagonal") {
    StableRng rng(31);
    for (double kk : {0.25, 0.75, 1.0, 2.3}) {
      const BargmannIndex bk(kk);
      const CsPoint p(rng.disk(1.2), rng.disk(0.5));
      const auto c = cs_coefficients(p, bk, 90, 90);
      CHECK(rel_err(c.norm2(), kernel(p, p, bk).real()) < 1e-12);
    }
  }
  SUBCASE("k = 1/4 drops the second factor") {
    testing::WarningCapture short_truncation;
    const auto c = cs_coefficients(CsPoint(0.5, 0.3), BargmannIndex(0.25), 10, 10);
    CHECK(c.m_max() == 0);
    CHECK(c.n_max() == 10);
  }
  CHECK_THROWS_AS(cs_coefficients(CsPoint(0.5, 0.3), BargmannIndex(0.2), 4, 4), DomainError);
  SUBCASE("truncation warning") {
    testing::WarningCapture warnings;
    cs_coefficients(CsPoint(3.0, 0.9), k, 8, 8);
    CHECK(warnings.messages.size() == 1);
    warnings.messages.clear();
    cs_coefficients(CsPoint(0.1, 0.1), k, 40, 40);
    CHECK(warnings.messages.empty());
  }
}

TEST_CASE("kernel") {
  const BargmannIndex k(1.25);
  CHECK(kernel(CsPoint(0.0, 0.0), CsPoint(0.0, 0.0), k) == cplx(1.0));
  const cplx z(0.9, -0.7);
  CHECK(rel_err(kernel(CsPoint(z, 0.0), CsPoint(z, 0.0), k), std::exp(std::norm(z))) < 1e-14);
  // mpmath, polarized closed form
  const CsPoint p1({0.4, -0.3}, {0.2, 0.5}), p2({-0.7, 0.1}, {0.3, -0.6});
  CHECK(rel_err(kernel(p1, p2, k), {0.33393852407973453, 0.29439230093230697}) < 1e-13);
  CHECK(rel_err(kernel(p2, p1, k), std::conj(kernel(p1, p2, k))) < 1e-14);

  StableRng rng(32);
  for (int i = 0; i < 100; ++i) {
    const CsPoint p(rng.disk(2.0), rng.disk(0.99));
    const cplx kv = kernel(p, p, k);
    CHECK(std::abs(kv.imag()) <= 1e-12 * kv.real());
    CHECK(kv.real() >= 1.0);
  }
  // log form survives where the value overflows
  const CsPoint far(30.0, 0.999);
  CHECK(std::isfinite(log_kernel(far, far, k).real()));
  CHECK(log_kernel(far, far, k).real() > 709.0);
}

TEST_CASE("basis_function") {
  const BargmannIndex k(0.75);
  CHECK(basis_function(0, 0, k, {0.3, 0.2}, {0.1, -0.5}) == cplx(1.0));
  const cplx a(0.6, -0.8);
  CHECK(rel_err(basis_function(4, 0, k, a, 0.0), std::pow(a, 4) / std::sqrt(24.0)) < 1e-14);
  CHECK(rel_err(basis_function(0, 1, k, 0.0, {0.2, 0.3}), {0.2, 0.3}) < 1e-15);
  CHECK_THROWS_AS(basis_function(0, 0, BargmannIndex(0.25), 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(basis_function(-1, 0, k, 0.0, 0.0), DomainError);
}

TEST_CASE("scalar_product_series") {
  const BargmannIndex k(1.0);
  CHECK(scalar_product_series(unit(3), unit(5), k).value == cplx(0.0));
  for (int n = 0; n < 30; ++n) {
    CHECK(rel_err(scalar_product_series(unit(n), unit(n), k).value, 1.0 / (n + 1)) < 1e-14);
  }
  for (double kk : {0.1, 0.25, 3.0}) {
    CHECK(scalar_product_series(unit(0), unit(0), BargmannIndex(kk)).value == cplx(1.0));
  }
  // anti-linear in the first slot
  const std::vector<cplx> f{{0.0, 1.0}}, g{2.0};
  CHECK(scalar_product_series(f, g, k).value == cplx(0.0, -2.0));

  // a geometric series cut off early is flagged
  std::vector<cplx> slow(40);
  for (std::size_t n = 0; n < slow.size(); ++n) slow[n] = std::pow(0.95, static_cast<double>(n));
  CHECK_FALSE(scalar_product_series(slow, slow, k).converged);
  std::vector<cplx> fast(80);
  for (std::size_t n = 0; n < fast.size(); ++n) fast[n] = std::pow(0.3, static_cast<double>(n));
  CHECK(scalar_product_series(fast, fast, k).converged);
}

TEST_CASE("disk quadrature") {
  auto mono = [](int n) { return [n](cplx w) { return std::pow(w, n); }; };
  const BargmannIndex k(1.0);
  const auto one = scalar_product_disk_quadrature(mono(0), mono(0), k);
  CHECK(one.converged);
  CHECK(std::abs(one.value - 1.0) < 1e-13);
  for (int n = 1; n <= 10; ++n) {
    CHECK(rel_err(scalar_product_disk_quadrature(mono(n), mono(n), k).value, 1.0 / (n + 1)) < 1e-12);
    CHECK(std::abs(scalar_product_disk_quadrature(mono(n), mono(n + 2), k).value) < 1e-12);
  }
  // weight singular at the rim for k < 1
  const BargmannIndex kk(0.6);
  CHECK(rel_err(scalar_product_disk_quadrature(mono(3), mono(3), kk).value,
                scalar_product_series(unit(3), unit(3), kk).value) < 1e-12);
  CHECK_THROWS_AS(scalar_product_disk_quadrature(mono(0), mono(0), BargmannIndex(0.5)), DomainError);
}

TEST_CASE("cjk quadrature reproduces orthonormality") {
  CHECK_THROWS_AS(
      scalar_product_cjk_quadrature([](cplx, cplx) { return cplx(1.0); }, [](cplx, cplx) { return cplx(1.0); },
                                    BargmannIndex(0.75)),
      DomainError);
  const BargmannIndex k(1.25);
  auto f = [&k](int n, int s) { return [n, s, &k](cplx a, cplx w) { return basis_function(n, s, k, a, w); }; };
  const auto norm = scalar_product_cjk_quadrature(f(0, 0), f(0, 0), k);
  CHECK(norm.converged);
  CHECK(std::abs(norm.value - 1.0) < 1e-10);
  const int pairs[][4] = {{1, 0, 1, 0}, {2, 1, 2, 1}, {3, 0, 1, 0}, {2, 0, 0, 1}, {0, 2, 0, 2}, {1, 1, 3, 0}};
  for (const auto& p : pairs) {
    const auto r = scalar_product_cjk_quadrature(f(p[0], p[1]), f(p[2], p[3]), k);
    const double want = (p[0] == p[2] && p[1] == p[3]) ? 1.0 : 0.0;
    CAPTURE(p[0]);
    CAPTURE(p[1]);
    CAPTURE(p[2]);
    CAPTURE(p[3]);
    CHECK(std::abs(r.value - want) < 1e-8);
  }
}

TEST_CASE("psi_relation") {
  const BargmannIndex k(0.75);
  const cplx w(0.3, -0.5);
  const auto p0 = psi_relation(0.0, w, k);
  CHECK(rel_err(p0.prefactor, std::pow(1.0 - std::norm(w), 0.75)) < 1e-15);
  CHECK(p0.point.z() == cplx(0.0));
  const cplx a(1.2, 0.4);
  const auto p1 = psi_relation(a, 0.0, k);
  CHECK(rel_err(p1.prefactor, std::exp(-0.5 * std::norm(a))) < 1e-15);
  CHECK(p1.point.z() == a);

  StableRng rng(33);
  for (int i = 0; i < 500; ++i) {
    const BargmannIndex kk(rng.uniform(0.25, 4.0));
    const auto p = psi_relation(rng.disk(3.0), rng.disk(0.9), kk);
    const double log_norm = 2.0 * std::log(std::abs(p.prefactor)) + log_kernel(p.point, p.point, kk).real();
    CHECK(std::abs(log_norm) < 1e-12);
  }
}

TEST_CASE("action on coherent states") {
  const BargmannIndex k(1.0);
  const CsPoint p({0.3, -0.2}, {0.1, 0.4});
  SUBCASE("identity") {
    const auto r = act_on_cs(JacobiElement::identity(), p, k);
    CHECK(r.multiplier == cplx(1.0));
    CHECK(r.image.z() == p.z());
    CHECK(r.image.w() == p.w());
  }
  SUBCASE("Heisenberg translation on the Fock factor") {
    // D(alpha) e_z = exp(-|alpha|^2/2 - z conj(alpha)) e_{z+alpha}
    const cplx alpha(0.7, 0.2), z(-0.4, 0.9);
    const auto r = act_on_cs({Su11Element::identity(), alpha, 0.0}, CsPoint(z, 0.0), k);
    CHECK(rel_err(r.multiplier, std::exp(-0.5 * std::norm(alpha) - z * std::conj(alpha))) < 1e-15);
    CHECK(std::abs(r.image.z() - (z + alpha)) < 1e-15);
    CHECK(r.image.w() == cplx(0.0));
  }
  SUBCASE("covering reduces to the group for integer 2k") {
    StableRng rng(34);
    for (int i = 0; i < 100; ++i) {
      const BargmannIndex kk(0.5 * rng.integer(1, 8));
      const CoveringElement c(rng.uniform(-10.0, 10.0), rng.disk(0.9));
      const cplx alpha = rng.disk(1.5);
      const CsPoint q(rng.disk(1.0), rng.disk(0.9));
      const auto cov = act_on_cs_covering(c, alpha, q, kk);
      const auto plain = act_on_cs({c.projection(), alpha, 0.0}, q, kk);
      CHECK(rel_err(cov.multiplier, plain.multiplier) < 1e-12);
      CHECK(std::abs(cov.image.w() - plain.image.w()) < 1e-13);
    }
  }
  SUBCASE("k = 1/4 is double valued on the group") {
    const CoveringElement c0(0.4, {0.2, 0.1});
    const CoveringElement c1(0.4 + 2.0 * std::numbers::pi, {0.2, 0.1});
    const auto m0 = act_on_cs_covering(c0, 0.3, p, BargmannIndex(0.25)).multiplier;
    const auto m1 = act_on_cs_covering(c1, 0.3, p, BargmannIndex(0.25)).multiplier;
    CHECK(rel_err(m1, -m0) < 1e-14);
    CHECK(act_on_cs_covering(CoveringElement(0.0, 0.0), 0.0, p, BargmannIndex(0.25)).multiplier == cplx(1.0));
  }
  SUBCASE("cocycle up to the central phase") {
    // pi(h1) pi(h2) = exp(i dt) pi(h1 h2) with dt the center coordinate
    // produced by the composition law.
    StableRng rng(35);
    for (int i = 0; i < 300; ++i) {
      const BargmannIndex kk(0.5 * rng.integer(1, 6));
      auto draw = [&] {
        return JacobiElement{Su11Element::from_polar(rng.uniform(0.0, 1.2), rng.phase(), rng.phase()), rng.disk(1.5),
                             0.0};
      };
      const auto h1 = draw(), h2 = draw();
      const CsPoint q(rng.disk(1.0), rng.disk(0.8));
      const auto r2 = act_on_cs(h2, q, kk);
      const auto r1 = act_on_cs(h1, r2.image, kk);
      const auto h12 = jacobi_compose(h1, h2);
      const auto r12 = act_on_cs(h12, q, kk);
      CHECK(rel_err(r1.multiplier * r2.multiplier, std::exp(cplx(0.0, h12.t)) * r12.multiplier) < 1e-10);
      CHECK(std::abs(r1.image.w() - r12.image.w()) < 1e-12);
      CHECK(std::abs(r1.image.z() - r12.image.z()) < 1e-10 * std::max(1.0, std::abs(r12.image.z())));
    }
  }
}

TEST_CASE("holomorphic generators and T(g) on power series") {
  const BargmannIndex k(0.75);
  const auto z3 = unit(3);
  const auto km = apply_dk_minus(z3);
  const auto k0 = apply_dk_zero(z3, k);
  const auto kp = apply_dk_plus(z3, k);
  REQUIRE(km.size() == 5);
  CHECK(km[2] == cplx(3.0));
  CHECK(k0[3] == cplx(3.75));
  CHECK(kp[4] == cplx(4.5)); // 2k + 3

  SUBCASE("series of T(g) f matches pointwise evaluation") {
    StableRng rng(36);
    for (double kk : {0.5, 1.0, 2.0}) {
      const BargmannIndex bk(kk);
      const Su11Element g = Su11Element::from_polar(0.4, 1.1, -0.6);
      const std::vector<cplx> f{1.0, {0.5, -0.2}, {0.0, 0.3}};
      const auto tf = discrete_series_action(g, f, bk, 120);
      for (int i = 0; i < 10; ++i) {
        const cplx z = rng.disk(0.6);
        cplx series = 0.0, zn = 1.0;
        for (const auto& c : tf) {
          series += c * zn;
          zn *= z;
        }
        const cplx den = std::conj(g.a()) + std::conj(g.b()) * z;
        const cplx gz = (g.a() * z + g.b()) / den;
        const cplx direct = numerics::ipow(den, static_cast<int>(-2.0 * kk)) * (f[0] + f[1] * gz + f[2] * gz * gz);
        CHECK(rel_err(series, direct) < 1e-12);
      }
    }
  }
  SUBCASE("identity acts trivially") {
    const std::vector<cplx> f{1.0, 2.0, 3.0};
    const auto tf = discrete_series_action(Su11Element::identity(), f, k, 5);
    CHECK(tf[2] == cplx(3.0));
    CHECK(tf[4] == cplx(0.0));
  }
}
