#include "support.hpp"

#include "jacobi/matrix_elements.hpp"
#include "jacobi/oracle.hpp"
#include "jacobi/sampling.hpp"
#include "jacobi/states.hpp"

#include <Eigen/Eigenvalues>
#include <doctest.h>

using namespace jacobi;
using namespace jacobi::oracle;

namespace {

CMatrix commutator(const CMatrix& x, const CMatrix& y) { return x * y - y * x; }

// Largest deviation over index pairs whose Fock and K' parts both lie in
// the leading block.
double tensor_interior_diff(const CMatrix& a, const CMatrix& b, std::size_t prime_dim, std::size_t fock_in,
                            std::size_t prime_in) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i / prime_dim < fock_in && i % prime_dim < prime_in && j / prime_dim < fock_in && j % prime_dim < prime_in) {
        worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
      }
    }
  }
  return worst;
}

CMatrix random_matrix(StableRng& rng, std::size_t n) {
  CMatrix m(n, n);
  for (auto& x : m.data()) x = {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)};
  return m;
}

} // namespace

TEST_CASE("Fock realization") {
  const auto ops = build_operators(40, BargmannIndex(0.25), Realization::fock_quarter);
  const CMatrix& a = ops.a->entries;
  const CMatrix& ad = ops.a_dagger->entries;
  const std::size_t in = 39; // everything but the last row/column
  CHECK(max_abs_diff(commutator(a, ad), CMatrix::identity(40), in, in) < 1e-12);
  CHECK(interior_max_abs_diff(commutator(a, ops.Kplus.entries), ad) < 1e-12);
  CHECK(interior_max_abs_diff(commutator(ops.Kminus.entries, ad), a) < 1e-12);
  CHECK(interior_max_abs_diff(commutator(ops.K0.entries, ad), 0.5 * ad) < 1e-12);
  CHECK(interior_max_abs_diff(commutator(ops.Kminus.entries, ops.Kplus.entries), 2.0 * ops.K0.entries) < 1e-12);
  // K0 phi_{2p} = (p + 1/4) phi_{2p}, K0 phi_{2p+1} = (p + 3/4) phi_{2p+1}
  for (std::size_t p = 0; p < 20; ++p) {
    CHECK(ops.K0.entries(2 * p, 2 * p) == cplx(p + 0.25));
    CHECK(ops.K0.entries(2 * p + 1, 2 * p + 1) == cplx(p + 0.75));
  }
  CHECK_THROWS_AS(build_operators(1, BargmannIndex(1.0), Realization::fock_quarter), DomainError);
}

TEST_CASE("abstract discrete series") {
  for (double kk : {0.25, 1.0, 2.5}) {
    const auto ops = build_operators(48, BargmannIndex(kk), Realization::abstract_dseries);
    const CMatrix& k0 = ops.K0.entries;
    const CMatrix& kp = ops.Kplus.entries;
    const CMatrix& km = ops.Kminus.entries;
    CHECK(interior_max_abs_diff(commutator(km, kp), 2.0 * k0) < 1e-10);
    CHECK(interior_max_abs_diff(commutator(k0, kp), kp) < 1e-10);
    CHECK(interior_max_abs_diff(commutator(k0, km), -1.0 * km) < 1e-10);
    const CMatrix casimir = k0 * k0 - 0.5 * (kp * km + km * kp);
    CHECK(interior_max_abs_diff(casimir, cplx(kk * (kk - 1.0)) * CMatrix::identity(48)) < 1e-10);
    CHECK(interior_max_abs_diff(km, kp.adjoint()) == 0.0);
  }
}

TEST_CASE("tensor realization") {
  const std::size_t fd = 12, pd = 7;
  const auto ops = build_operators(fd, BargmannIndex(1.25), Realization::tensor_product, pd);
  REQUIRE(ops.dim == fd * pd);
  const CMatrix& a = ops.a->entries;
  const CMatrix& ad = ops.a_dagger->entries;
  // [K', a] = [K', a^+] = 0 with no truncation effects at all
  for (const auto* kp : {&*ops.K0_prime, &*ops.Kplus_prime, &*ops.Kminus_prime}) {
    CHECK(max_abs_diff(commutator(kp->entries, a), CMatrix(fd * pd, fd * pd), fd * pd, fd * pd) == 0.0);
    CHECK(max_abs_diff(commutator(kp->entries, ad), CMatrix(fd * pd, fd * pd), fd * pd, fd * pd) == 0.0);
  }
  CHECK(tensor_interior_diff(commutator(a, ops.Kplus.entries), ad, pd, 10, 6) < 1e-12);
  CHECK(tensor_interior_diff(commutator(ops.Kminus.entries, ops.Kplus.entries), 2.0 * ops.K0.entries, pd, 10, 6) <
        1e-12);
  CHECK(tensor_interior_diff(commutator(ops.K0.entries, ops.Kplus.entries), ops.Kplus.entries, pd, 10, 6) < 1e-12);
}

TEST_CASE("matrix_exp") {
  CHECK(max_abs_diff(matrix_exp(CMatrix(5, 5)), CMatrix::identity(5), 5, 5) == 0.0);
  const cplx d[] = {{0.5, 1.0}, -3.0, {12.0, -40.0}};
  const CMatrix e = matrix_exp(CMatrix::diagonal(d));
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(testing::rel_err(e(i, i), std::exp(d[i])) < 1e-12);
  }

  StableRng rng(51);
  const CMatrix m = random_matrix(rng, 30);
  const CMatrix prod = matrix_exp(m) * matrix_exp(-1.0 * m);
  CHECK(max_abs_diff(prod, CMatrix::identity(30), 30, 30) < 1e-10);

  SUBCASE("unitary group against an eigendecomposition") {
    // exp(iH) for Hermitian H with |H| = 50
    const std::size_t n = 64;
    CMatrix r = random_matrix(rng, n);
    CMatrix h = r + r.adjoint();
    h *= 50.0 / h.norm1();
    Eigen::MatrixXcd he(n, n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) he(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = h(i, j);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(he);
    const Eigen::VectorXcd phases = (cplx(0.0, 1.0) * es.eigenvalues().cast<cplx>()).array().exp();
    const Eigen::MatrixXcd ref = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    const CMatrix got = matrix_exp(cplx(0.0, 1.0) * h);
    double worst = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        worst = std::max(worst, std::abs(got(i, j) - ref(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j))));
    CHECK(worst < 1e-11);
  }

  CMatrix bad(2, 2);
  bad(0, 1) = NAN;
  CHECK_THROWS_AS(matrix_exp(bad), OverflowError);
  CMatrix huge(2, 2);
  huge(0, 0) = 1e7;
  CHECK_THROWS_AS(matrix_exp(huge), OverflowError);
  CHECK_THROWS(matrix_exp(CMatrix(2, 3)));
}

TEST_CASE("oracle displacement") {
  CHECK(max_abs_diff(oracle_displacement(16, 0.0), CMatrix::identity(16), 16, 16) == 0.0);
  const CMatrix d = oracle_displacement(64, 1.0);
  CHECK(std::abs(d(1, 0) - std::exp(-0.5)) < 1e-9);

  StableRng rng(52);
  for (int i = 0; i < 5; ++i) {
    const cplx alpha = rng.disk(1.5);
    const CMatrix u = oracle_displacement(64, alpha);
    // Beyond the leading half the truncated exponential feels the cut.
    CHECK(interior_max_abs_diff(u, oracle_displacement_normal_ordered(64, alpha), 0.5) < 1e-10);
    CHECK(interior_max_abs_diff(u.adjoint() * u, CMatrix::identity(64)) < 1e-9);
  }
  SUBCASE("truncation warning") {
    testing::WarningCapture warnings;
    oracle_displacement(12, 3.0);
    CHECK_FALSE(warnings.messages.empty());
    warnings.messages.clear();
    oracle_displacement(64, 0.5);
    CHECK(warnings.messages.empty());
  }
}

TEST_CASE("oracle squeeze") {
  const auto ops = build_operators(128, BargmannIndex(1.0), Realization::abstract_dseries);
  CHECK(max_abs_diff(oracle_squeeze(ops, 0.0), CMatrix::identity(128), 128, 128) == 0.0);
  CHECK(std::abs(squeeze_exponent(std::polar(std::tanh(0.8), 0.3)) - std::polar(0.8, 0.3)) < 1e-14);
  StableRng rng(53);
  for (int i = 0; i < 4; ++i) {
    const cplx w = rng.disk(0.6);
    const CMatrix u1 = oracle_squeeze(ops, w, 8);
    // The single exponential is only faithful on the leading quarter at |w| ~ 0.6.
    CHECK(interior_max_abs_diff(u1, oracle_squeeze_disentangled(ops, w), 0.75) < 1e-9);
    CHECK(interior_max_abs_diff(u1.adjoint() * u1, CMatrix::identity(128)) < 1e-9);
  }
  CHECK_THROWS_AS(oracle_squeeze(ops, 1.0), DomainError);
}

TEST_CASE("oracle coherent-state vectors and action") {
  const BargmannIndex k(1.25);
  const CsPoint p({0.5, -0.3}, {0.2, 0.25});
  const auto v = oracle_cs_vector(p, k, 30, 20);
  const auto c = states::cs_coefficients(p, k, 29, 19);
  double worst = 0.0;
  for (int n = 0; n <= 29; ++n)
    for (int m = 0; m <= 19; ++m) worst = std::max(worst, std::abs(v(n, m) - c(n, m)));
  CHECK(worst < 1e-13);

  const auto same = oracle_action_on_cs(JacobiElement::identity(), p, k, 30, 20);
  worst = 0.0;
  for (std::size_t i = 0; i < v.coeffs().size(); ++i) worst = std::max(worst, std::abs(same.coeffs()[i] - v.coeffs()[i]));
  CHECK(worst < 1e-13);

  SUBCASE("pure displacement") {
    const cplx alpha(0.3, 0.4);
    const CsPoint q({0.2, 0.1}, 0.0);
    const auto got = oracle_action_on_cs({Su11Element::identity(), alpha, 0.0}, q, k, 64, 4);
    const auto want = states::cs_coefficients(CsPoint(q.z() + alpha, 0.0), k, 63, 3);
    const cplx mult = std::exp(-0.5 * std::norm(alpha) - q.z() * std::conj(alpha));
    for (int n = 0; n < 30; ++n) CHECK(std::abs(got(n, 0) - mult * want(n, 0)) < 1e-12);
  }
  CHECK_THROWS_AS(oracle_cs_vector(p, BargmannIndex(0.2), 10, 10), DomainError);
}
