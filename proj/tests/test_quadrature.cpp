#include "support.hpp"

#include "jacobi/matrix.hpp"
#include "jacobi/quadrature.hpp"

#include <doctest.h>

#include <numbers>

using namespace jacobi;
using namespace jacobi::quadrature;

TEST_CASE("Gauss-Jacobi against reference nodes") {
  // scipy.special.roots_jacobi(5, 0.5, -0.25)
  const double nodes[] = {-0.9370935560150578, -0.613320134921045, -0.1029092573805276, 0.43919736335214155,
                          0.8482719264279035};
  const double weights[] = {0.5318407152107505, 0.7079508994617024, 0.5985115504646914, 0.34270825726085,
                            0.09872760467175963};
  const auto r = gauss_jacobi(5, 0.5, -0.25);
  REQUIRE(r.nodes.size() == 5);
  for (std::size_t i = 0; i < 5; ++i) {
    CHECK(std::abs(r.nodes[i] - nodes[i]) < 1e-14);
    CHECK(std::abs(r.weights[i] - weights[i]) < 1e-14);
  }
  CHECK_THROWS_AS(gauss_jacobi(0, 0.0, 0.0), DomainError);
  CHECK_THROWS_AS(gauss_jacobi(3, -1.0, 0.0), DomainError);
}

TEST_CASE("Gauss-Jacobi exactness on the unit interval") {
  // int_0^1 u^p (1-u)^a du = B(p+1, a+1)
  for (double a : {-0.5, 0.0, 1.5, 3.0}) {
    const auto r = gauss_jacobi_unit(12, a);
    for (int p = 0; p < 24; ++p) {
      double sum = 0.0;
      for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        sum += r.weights[i] * std::pow(r.nodes[i], p);
      }
      const double beta = std::exp(std::lgamma(p + 1.0) + std::lgamma(a + 1.0) - std::lgamma(p + a + 2.0));
      CAPTURE(a);
      CAPTURE(p);
      CHECK(testing::rel_err(sum, beta) < 1e-13);
    }
  }
}

TEST_CASE("Gauss-Hermite") {
  // scipy.special.roots_hermite(6)
  const double nodes[] = {-2.350604973674492, -1.3358490740136968, -0.4360774119276165,
                          0.4360774119276165, 1.3358490740136968,  2.350604973674492};
  const double weights[] = {0.004530009905508863, 0.15706732032285656, 0.7246295952243926,
                            0.7246295952243926,   0.15706732032285656, 0.004530009905508863};
  const auto r = gauss_hermite(6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(std::abs(r.nodes[i] - nodes[i]) < 1e-14);
    CHECK(std::abs(r.weights[i] - weights[i]) < 1e-14);
  }
  // int x^4 e^{-x^2} = 3 sqrt(pi) / 4
  const auto big = gauss_hermite(40);
  double m4 = 0.0;
  for (std::size_t i = 0; i < big.nodes.size(); ++i) m4 += big.weights[i] * std::pow(big.nodes[i], 4);
  CHECK(testing::rel_err(m4, 0.75 * std::sqrt(std::numbers::pi)) < 1e-13);
}

TEST_CASE("CMatrix basics") {
  CMatrix a(2, 3);
  a(0, 0) = {1, 2};
  a(0, 2) = 3;
  a(1, 1) = {0, -1};
  const CMatrix at = a.adjoint();
  CHECK(at.rows() == 3);
  CHECK(at(0, 0) == cplx(1, -2));
  CHECK(at(1, 1) == cplx(0, 1));
  CHECK(a.norm1() == doctest::Approx(3.0));
  const CMatrix p = a * at;
  CHECK(p(0, 0) == cplx(14.0, 0.0));
  CHECK(p(1, 1) == cplx(1.0, 0.0));

  const cplx d[] = {1.0, 2.0};
  const CMatrix k = kron(CMatrix::diagonal(d), CMatrix::identity(2));
  CHECK(k.rows() == 4);
  CHECK(k(3, 3) == cplx(2.0));
  CHECK(k(1, 0) == cplx(0.0));

  const std::vector<cplx> v{1.0, cplx(0, 1), 2.0};
  const auto av = jacobi::apply(a, v);
  CHECK(av[0] == cplx(7.0, 2.0));
  CHECK(av[1] == cplx(1.0, 0.0));

  CMatrix bad(1, 1);
  bad(0, 0) = NAN;
  CHECK_FALSE(bad.all_finite());
  CHECK_THROWS(a * a);
}
