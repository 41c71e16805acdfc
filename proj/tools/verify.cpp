#include "verify.hpp"

#include "jacobi/errors.hpp"
#include "jacobi/groups.hpp"
#include "jacobi/matrix_elements.hpp"
#include "jacobi/numerics.hpp"
#include "jacobi/oracle.hpp"
#include "jacobi/sampling.hpp"
#include "jacobi/states.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace jacobi::cli {

using json = nlohmann::ordered_json;

namespace {

json cj(cplx z) { return json::array({z.real(), z.imag()}); }

class Tracker {
public:
  Tracker(std::string suite, const VerifyOptions& options) : options_(options) { report_.suite = std::move(suite); }

  double tol(double suite_default) const { return options_.tol.value_or(suite_default); }

  // `relative` selects which of the two errors is held against `tolerance`.
  void check(double abs_err, double rel_err, bool relative, double tolerance, json input) {
    tolerance = tol(tolerance);
    ++report_.cases;
    report_.max_abs_err = std::max(report_.max_abs_err, abs_err);
    report_.max_rel_err = std::max(report_.max_rel_err, rel_err);
    const double metric = relative ? rel_err : abs_err;
    const double score = std::isfinite(metric) ? metric / tolerance : INFINITY;
    if (!(metric <= tolerance)) {
      report_.pass = false;
    }
    if (score > worst_score_) {
      worst_score_ = score;
      input["abs_err"] = abs_err;
      input["rel_err"] = rel_err;
      input["tolerance"] = tolerance;
      report_.worst_case = std::move(input);
      report_.tolerance = tolerance;
    }
  }

  void check_pair(cplx got, cplx want, bool relative, double tolerance, json input) {
    const double abs_err = std::abs(got - want);
    const double scale = std::abs(want);
    check(abs_err, scale > 0.0 ? abs_err / scale : abs_err, relative, tolerance, std::move(input));
  }

  VerifyReport finish() { return std::move(report_); }

private:
  VerifyOptions options_;
  VerifyReport report_;
  double worst_score_ = -1.0;
};

std::vector<double> k_list(const VerifyOptions& o, std::vector<double> defaults) {
  if (o.k) {
    return {*o.k};
  }
  return defaults;
}

oracle::Realization squeeze_realization(double k) {
  const bool quarter = std::abs(k - 0.25) < 1e-12 || std::abs(k - 0.75) < 1e-12;
  return quarter ? oracle::Realization::fock_quarter : oracle::Realization::abstract_dseries;
}

// Oracle entry <phi_{k m'}|S(w)|phi_{k m}> in the realization chosen above.
struct SqueezeOracle {
  CMatrix s;
  int stride = 1;
  int offset = 0;
  cplx at(int mp, int m) const { return s(stride * mp + offset, stride * m + offset); }
};

SqueezeOracle squeeze_oracle(double k, cplx w, std::size_t dim, std::size_t compared) {
  const auto real = squeeze_realization(k);
  SqueezeOracle o;
  if (real == oracle::Realization::fock_quarter) {
    o.stride = 2;
    o.offset = k > 0.5 ? 1 : 0;
    compared = 2 * compared + 2;
  }
  o.s = oracle::oracle_squeeze(dim, BargmannIndex(k), w, real, compared);
  return o;
}

VerifyReport suite_displacement(const VerifyOptions& opt) {
  Tracker t("displacement", opt);
  StableRng rng(opt.seed);
  std::vector<cplx> alphas{0.3, 1.0, {1.0, 0.5}};
  for (int i = 0; i < 9; ++i) {
    alphas.push_back(rng.disk(1.5));
  }
  constexpr std::size_t dim = 64;
  constexpr int reach = 20;
  for (cplx alpha : alphas) {
    const CMatrix d = oracle::oracle_displacement(dim, alpha, reach + 1);
    for (int m = 0; m <= reach; ++m) {
      for (int n = 0; n <= reach; ++n) {
        t.check_pair(me::displacement_me(m, n, alpha), d(m, n), false, 1e-8,
                     {{"check", "oracle"}, {"alpha", cj(alpha)}, {"m", m}, {"n", n}});
      }
    }
  }
  return t.finish();
}

VerifyReport suite_squeeze(const VerifyOptions& opt) {
  Tracker t("squeeze", opt);
  StableRng rng(opt.seed);
  constexpr int reach = 16;
  for (double k : k_list(opt, {0.25, 0.75, 1.0, 2.5})) {
    const BargmannIndex bk(k);
    for (double r : {0.2, 0.5, 0.6}) {
      const cplx w = std::polar(r, rng.phase());
      const SqueezeOracle o = squeeze_oracle(k, w, 96, reach + 1);
      for (int mp = 0; mp <= reach; ++mp) {
        for (int m = 0; m <= reach; ++m) {
          t.check_pair(me::squeeze_me(mp, m, bk, w), o.at(mp, m), false, 1e-6,
                       {{"check", "oracle"}, {"k", k}, {"w", cj(w)}, {"m_prime", mp}, {"m", m}});
        }
      }
    }
  }
  // Two hypergeometric representations of the same element.
  for (int i = 0; i < 500; ++i) {
    const double k = opt.k.value_or(rng.uniform(1e-3, 5.0));
    const int mp = rng.integer(0, 40);
    const int m = rng.integer(0, 40);
    const cplx w = rng.disk(0.9);
    const BargmannIndex bk(k);
    t.check_pair(me::squeeze_me(mp, m, bk, w, me::SqueezeForm::h11), me::squeeze_me(mp, m, bk, w), true, 1e-12,
                 {{"check", "h11-vs-kummer"}, {"k", k}, {"w", cj(w)}, {"m_prime", mp}, {"m", m}});
  }
  return t.finish();
}

VerifyReport suite_jacobi(const VerifyOptions& opt) {
  Tracker t("jacobi", opt);
  StableRng rng(opt.seed);
  constexpr std::size_t dim = 96;
  constexpr int reach = 6;
  const auto fock = oracle::build_operators(dim, BargmannIndex(0.25), oracle::Realization::fock_quarter);
  for (double k : k_list(opt, {1.0, 1.75})) {
    const BargmannIndex bk(k);
    if (bk.prime() <= 1e-12) {
      throw DomainError("verify jacobi: needs k > 1/4");
    }
    const auto prime = oracle::build_operators(dim, BargmannIndex(bk.prime()), oracle::Realization::abstract_dseries);
    for (int i = 0; i < 3; ++i) {
      const cplx alpha = rng.disk(0.8);
      const cplx w = rng.disk(0.5);
      const CMatrix left = oracle::oracle_displacement(dim, alpha) * oracle::oracle_squeeze(fock, w, 2 * reach + 2);
      const CMatrix right = oracle::oracle_squeeze(prime, w, reach + 1);
      for (int np = 0; np <= reach; ++np) {
        for (int mp = 0; mp <= reach; ++mp) {
          for (int n = 0; n <= reach; ++n) {
            for (int m = 0; m <= reach; ++m) {
              const auto got = me::jacobi_me(np, mp, n / 2, m, n % 2, bk, alpha, w, w, 48);
              t.check_pair(got.value, left(np, n) * right(mp, m), false, 1e-6,
                           {{"check", "oracle"}, {"k", k}, {"alpha", cj(alpha)}, {"w", cj(w)},
                            {"n_prime", np}, {"m_prime", mp}, {"n", n}, {"m", m}});
            }
          }
        }
      }
    }
  }
  return t.finish();
}

VerifyReport suite_kernel(const VerifyOptions& opt) {
  Tracker t("kernel", opt);
  StableRng rng(opt.seed);
  constexpr int order = 64;
  for (double k : k_list(opt, {1.0, 1.25})) {
    const BargmannIndex bk(k);
    for (int i = 0; i < 5; ++i) {
      for (int j = 0; j < 5; ++j) {
        const CsPoint p1(std::polar(0.25 * i, rng.phase()), std::polar(0.125 * j, rng.phase()));
        const CsPoint p2(rng.disk(1.0), rng.disk(0.5));
        const CoeffVector c1 = states::cs_coefficients(p1, bk, order, order);
        const CoeffVector c2 = states::cs_coefficients(p2, bk, order, order);
        cplx sum = 0.0;
        for (std::size_t q = 0; q < c1.coeffs().size(); ++q) {
          sum += c1.coeffs()[q] * std::conj(c2.coeffs()[q]);
        }
        t.check_pair(sum, states::kernel(p1, p2, bk), true, 1e-6,
                     {{"check", "basis-sum"}, {"k", k}, {"z1", cj(p1.z())}, {"w1", cj(p1.w())},
                      {"z2", cj(p2.z())}, {"w2", cj(p2.w())}});
      }
    }
  }
  // Normalization of Psi_{alpha,w}.
  for (int i = 0; i < 200; ++i) {
    const double k = opt.k.value_or(rng.uniform(0.25, 3.0));
    const BargmannIndex bk(k);
    const cplx alpha = rng.disk(3.0);
    const cplx w = rng.disk(0.9);
    const auto psi = states::psi_relation(alpha, w, bk);
    const double log_norm =
        2.0 * std::log(std::abs(psi.prefactor)) + states::log_kernel(psi.point, psi.point, bk).real();
    t.check(std::abs(std::expm1(log_norm)), std::abs(std::expm1(log_norm)), true, 1e-12,
            {{"check", "psi-normalization"}, {"k", k}, {"alpha", cj(alpha)}, {"w", cj(w)}});
  }
  return t.finish();
}

// Largest entrywise difference over the leading block, relative to the
// largest reference entry there.
double block_rel_diff(const CoeffVector& got, const CoeffVector& want, int n_lim, int m_lim, double* abs_out) {
  double diff = 0.0;
  double scale = 0.0;
  for (int n = 0; n <= std::min(n_lim, want.n_max()); ++n) {
    for (int m = 0; m <= std::min(m_lim, want.m_max()); ++m) {
      diff = std::max(diff, std::abs(got(n, m) - want(n, m)));
      scale = std::max(scale, std::abs(want(n, m)));
    }
  }
  *abs_out = diff;
  return scale > 0.0 ? diff / scale : diff;
}

JacobiElement random_jacobi(StableRng& rng, double max_b, double max_alpha) {
  const double r = std::asinh(max_b * std::sqrt(rng.uniform()));
  return {Su11Element::from_polar(r, rng.phase(), rng.phase()), rng.disk(max_alpha), rng.uniform(-1.0, 1.0)};
}

VerifyReport suite_action(const VerifyOptions& opt) {
  Tracker t("action", opt);
  StableRng rng(opt.seed);
  constexpr std::size_t fock_dim = 160;
  constexpr std::size_t prime_dim = 112;
  const std::vector<double> ks = k_list(opt, {0.5, 1.0, 1.5, 2.0});
  for (int i = 0; i < 24; ++i) {
    const double k = ks[static_cast<std::size_t>(i) % ks.size()];
    const BargmannIndex bk(k);
    const JacobiElement h = random_jacobi(rng, 1.0, 1.0);
    const CsPoint p(rng.disk(0.5), rng.disk(0.4));
    const ActionResult ar = states::act_on_cs(h, p, bk);
    CoeffVector want = states::cs_coefficients(ar.image, bk, fock_dim - 1, prime_dim - 1);
    for (auto& c : want.coeffs()) {
      c *= ar.multiplier;
    }
    const CoeffVector got = oracle::oracle_action_on_cs(h, p, bk, fock_dim, prime_dim);
    double abs_err = 0.0;
    const double rel = block_rel_diff(got, want, 24, 16, &abs_err);
    t.check(abs_err, rel, true, 1e-6,
            {{"check", "oracle"}, {"k", k}, {"a", cj(h.g.a())}, {"b", cj(h.g.b())}, {"alpha", cj(h.alpha)},
             {"z", cj(p.z())}, {"w", cj(p.w())}});
  }
  // Cocycle of the multiplier, with the central phase picked up by the
  // composition law.
  for (int i = 0; i < 200; ++i) {
    const double k = ks[static_cast<std::size_t>(i) % ks.size()];
    const BargmannIndex bk(k);
    const JacobiElement h1 = random_jacobi(rng, 1.0, 1.0);
    const JacobiElement h2 = random_jacobi(rng, 1.0, 1.0);
    const CsPoint p(rng.disk(1.0), rng.disk(0.6));
    const ActionResult a2 = states::act_on_cs(h2, p, bk);
    const ActionResult a1 = states::act_on_cs(h1, a2.image, bk);
    const JacobiElement h12 = jacobi_compose(h1, h2);
    const ActionResult a12 = states::act_on_cs(h12, p, bk);
    const double dt = h12.t - h1.t - h2.t;
    t.check_pair(a1.multiplier * a2.multiplier, std::exp(cplx(0.0, dt)) * a12.multiplier, true, 1e-10,
                 {{"check", "cocycle"}, {"k", k}, {"z", cj(p.z())}, {"w", cj(p.w())}});
  }
  return t.finish();
}

VerifyReport suite_covering(const VerifyOptions& opt) {
  Tracker t("covering", opt);
  StableRng rng(opt.seed);
  constexpr std::size_t fock_dim = 160;
  constexpr std::size_t prime_dim = 112;
  const std::vector<double> ks = k_list(opt, {0.25, 0.6, 1.3});
  for (int i = 0; i < 18; ++i) {
    const double k = ks[static_cast<std::size_t>(i) % ks.size()];
    const BargmannIndex bk(k);
    const CoveringElement c(rng.uniform(-3.0 * std::numbers::pi, 3.0 * std::numbers::pi), rng.disk(0.6));
    const cplx alpha = rng.disk(1.0);
    const CsPoint p(rng.disk(0.5), rng.disk(0.4));
    const ActionResult ar = states::act_on_cs_covering(c, alpha, p, bk);
    CoeffVector want = states::cs_coefficients(ar.image, bk, fock_dim - 1, prime_dim - 1);
    for (auto& x : want.coeffs()) {
      x *= ar.multiplier;
    }
    const CoeffVector got = oracle::oracle_action_on_cs_covering(c, alpha, p, bk, fock_dim, prime_dim);
    double abs_err = 0.0;
    const double rel = block_rel_diff(got, want, 24, 16, &abs_err);
    t.check(abs_err, rel, true, 1e-6,
            {{"check", "oracle"}, {"k", k}, {"omega", c.omega()}, {"gamma", cj(c.gamma())}, {"alpha", cj(alpha)},
             {"z", cj(p.z())}, {"w", cj(p.w())}});
  }
  // Integer 2k: the cover adds nothing.
  for (int i = 0; i < 200; ++i) {
    const double k = 0.5 * rng.integer(1, 6);
    const BargmannIndex bk(k);
    const CoveringElement c(rng.uniform(-10.0, 10.0), rng.disk(0.8));
    const cplx alpha = rng.disk(1.0);
    const CsPoint p(rng.disk(1.0), rng.disk(0.8));
    const auto cov = states::act_on_cs_covering(c, alpha, p, bk);
    const auto plain = states::act_on_cs({c.projection(), alpha, 0.0}, p, bk);
    t.check_pair(cov.multiplier, plain.multiplier, true, 1e-12,
                 {{"check", "reduction"}, {"k", k}, {"omega", c.omega()}, {"gamma", cj(c.gamma())}});
  }
  // k = 1/4: a full turn of omega flips the sign.
  for (int i = 0; i < 50; ++i) {
    const BargmannIndex bk(0.25);
    const double omega = rng.uniform(-5.0, 5.0);
    const cplx gamma = rng.disk(0.8);
    const cplx alpha = rng.disk(1.0);
    const CsPoint p(rng.disk(1.0), rng.disk(0.8));
    const auto m0 = states::act_on_cs_covering(CoveringElement(omega, gamma), alpha, p, bk).multiplier;
    const auto m1 = states::act_on_cs_covering(CoveringElement(omega + 2.0 * std::numbers::pi, gamma), alpha, p, bk)
                        .multiplier;
    t.check_pair(m1, -m0, true, 1e-12, {{"check", "double-valued"}, {"omega", omega}, {"gamma", cj(gamma)}});
  }
  return t.finish();
}

std::vector<cplx> monomial(int n, double k) {
  // a_{kn} z^n, normalized in the (., .)_k product
  std::vector<cplx> f(static_cast<std::size_t>(n) + 1);
  f.back() = std::exp(0.5 * (numerics::log_gamma_ratio(2.0 * k + n, 2.0 * k) - std::lgamma(n + 1.0)));
  return f;
}

std::vector<cplx> unit(int n) {
  std::vector<cplx> f(static_cast<std::size_t>(n) + 1);
  f.back() = 1.0;
  return f;
}

VerifyReport suite_hermiticity(const VerifyOptions& opt) {
  Tracker t("hermiticity", opt);
  StableRng rng(opt.seed);
  const auto ks = k_list(opt, {0.25, 0.75, 1.0, 2.5});
  for (double k : ks) {
    const BargmannIndex bk(k);
    for (int n = 0; n <= 50; ++n) {
      const auto zn = unit(n);
      const auto zn1 = unit(n + 1);
      const cplx lhs = states::scalar_product_series(states::apply_dk_plus(zn, bk), zn1, bk).value;
      const cplx rhs = states::scalar_product_series(zn, states::apply_dk_minus(zn1), bk).value;
      t.check_pair(lhs, rhs, true, 1e-12, {{"check", "K+ adjoint K-"}, {"k", k}, {"n", n}});
      const cplx k0 = states::scalar_product_series(states::apply_dk_zero(zn, bk), zn, bk).value;
      t.check(std::abs(k0.imag()), std::abs(k0.imag()) / std::abs(k0), true, 1e-12,
              {{"check", "K0 real"}, {"k", k}, {"n", n}});
    }
  }
  // (T(g) f1, f2) = (f1, T(g^{-1}) f2)
  constexpr std::size_t length = 160;
  for (double k : ks) {
    const BargmannIndex bk(k);
    for (int i = 0; i < 8; ++i) {
      const double r = std::atanh(0.5 * std::sqrt(rng.uniform()));
      const Su11Element g = Su11Element::from_polar(r, rng.phase(), rng.phase());
      const Su11Element gi = su11_inverse(g);
      for (int n = 0; n <= 10; ++n) {
        for (int big_n = 0; big_n <= 10; ++big_n) {
          const auto f1 = monomial(n, k);
          const auto f2 = monomial(big_n, k);
          auto tf1 = states::discrete_series_action(g, f1, bk, length);
          auto tf2 = states::discrete_series_action(gi, f2, bk, length);
          auto f2p = f2;
          auto f1p = f1;
          f2p.resize(length);
          f1p.resize(length);
          const cplx lhs = states::scalar_product_series(tf1, f2p, bk).value;
          const cplx rhs = states::scalar_product_series(f1p, tf2, bk).value;
          t.check_pair(lhs, rhs, false, 1e-8,
                       {{"check", "T(g) adjoint"}, {"k", k}, {"a", cj(g.a())}, {"b", cj(g.b())}, {"n", n},
                        {"N", big_n}});
        }
      }
    }
  }
  return t.finish();
}

double jacobi_diff(const JacobiElement& x, const JacobiElement& y) {
  const double scale = std::max({1.0, std::abs(y.g.a()), std::abs(y.alpha), std::abs(y.t)});
  return std::max({std::abs(x.g.a() - y.g.a()), std::abs(x.g.b() - y.g.b()), std::abs(x.alpha - y.alpha),
                   std::abs(x.t - y.t)}) /
         scale;
}

VerifyReport suite_group_law(const VerifyOptions& opt) {
  Tracker t("group-law", opt);
  StableRng rng(opt.seed);
  auto random_element = [&] {
    return JacobiElement{Su11Element::from_polar(rng.uniform(0.0, 1.0), rng.phase(), rng.phase()), rng.disk(2.0),
                         rng.uniform(-1.0, 1.0)};
  };
  for (int i = 0; i < 1000; ++i) {
    const JacobiElement h1 = random_element(), h2 = random_element(), h3 = random_element();
    const double assoc = jacobi_diff(jacobi_compose(jacobi_compose(h1, h2), h3), jacobi_compose(h1, jacobi_compose(h2, h3)));
    t.check(assoc, assoc, true, 1e-12, {{"check", "associativity"}, {"index", i}});
    const double inv = jacobi_diff(jacobi_compose(h1, jacobi_inverse(h1)), JacobiElement::identity());
    t.check(inv, inv, true, 1e-12, {{"check", "inverse"}, {"index", i}});
    const double inv2 = jacobi_diff(jacobi_compose(jacobi_inverse(h2), h2), JacobiElement::identity());
    t.check(inv2, inv2, true, 1e-12, {{"check", "left inverse"}, {"index", i}});

    const CoveringElement c1(rng.uniform(-10.0, 10.0), rng.disk(0.7));
    const CoveringElement c2(rng.uniform(-10.0, 10.0), rng.disk(0.7));
    const Su11Element lhs = covering_compose(c1, c2).projection();
    const Su11Element rhs = su11_compose(c1.projection(), c2.projection());
    const double scale = std::max(1.0, std::abs(rhs.a()));
    const double hom = std::max(std::abs(lhs.a() - rhs.a()), std::abs(lhs.b() - rhs.b())) / scale;
    t.check(hom, hom, true, 1e-12,
            {{"check", "covering homomorphism"}, {"omega1", c1.omega()}, {"gamma1", cj(c1.gamma())},
             {"omega2", c2.omega()}, {"gamma2", cj(c2.gamma())}});
  }
  return t.finish();
}

} // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"displacement", "squeeze",     "jacobi",   "kernel",
                                              "action",       "covering",    "hermiticity", "group-law"};
  return names;
}

namespace {

VerifyReport dispatch(const std::string& name, const VerifyOptions& options) {
  if (name == "displacement") return suite_displacement(options);
  if (name == "squeeze") return suite_squeeze(options);
  if (name == "jacobi") return suite_jacobi(options);
  if (name == "kernel") return suite_kernel(options);
  if (name == "action") return suite_action(options);
  if (name == "covering") return suite_covering(options);
  if (name == "hermiticity") return suite_hermiticity(options);
  if (name == "group-law") return suite_group_law(options);
  throw std::invalid_argument("unknown suite '" + name + "'");
}

} // namespace

VerifyReport run_suite(const std::string& name, const VerifyOptions& options) {
  int count = 0;
  WarningHandler previous = set_warning_handler([&count](std::string_view) { ++count; });
  try {
    VerifyReport r = dispatch(name, options);
    set_warning_handler(std::move(previous));
    r.oracle_warnings = count;
    return r;
  } catch (...) {
    set_warning_handler(std::move(previous));
    throw;
  }
}

json to_json(const VerifyReport& r) {
  json j;
  j["suite"] = r.suite;
  j["cases"] = r.cases;
  j["max_abs_err"] = r.max_abs_err;
  j["max_rel_err"] = r.max_rel_err;
  j["tolerance"] = r.tolerance;
  j["pass"] = r.pass;
  j["oracle_warnings"] = r.oracle_warnings;
  j["worst_case"] = r.worst_case;
  return j;
}

} // namespace jacobi::cli
