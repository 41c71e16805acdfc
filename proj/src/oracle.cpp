#include "jacobi/oracle.hpp"

#include "jacobi/errors.hpp"
#include "jacobi/exact.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

namespace jacobi::oracle {

namespace {

TruncatedOperator make(std::size_t dim, Label label) { return {dim, CMatrix(dim, dim), label}; }

// Ladder matrices of D+_k on span{phi_{k,0..dim-1}} from
// K0 phi_m = (k+m) phi_m, K+ phi_m = sqrt((m+1)(m+2k)) phi_{m+1}.
void fill_dseries(std::size_t dim, double k, TruncatedOperator& k0, TruncatedOperator& kp, TruncatedOperator& km) {
  for (std::size_t m = 0; m < dim; ++m) {
    const double md = static_cast<double>(m);
    k0.entries(m, m) = k + md;
    if (m + 1 < dim) {
      const double c = std::sqrt((md + 1.0) * (md + 2.0 * k));
      kp.entries(m + 1, m) = c;
      km.entries(m, m + 1) = c;
    }
  }
}

// Single mode: a phi_n = sqrt(n) phi_{n-1}; K's of the quarter splitting.
void fill_fock(std::size_t dim, TruncatedOperator& a, TruncatedOperator& ad, TruncatedOperator& k0,
               TruncatedOperator& kp, TruncatedOperator& km) {
  for (std::size_t n = 0; n < dim; ++n) {
    const double nd = static_cast<double>(n);
    k0.entries(n, n) = 0.5 * (nd + 0.5);
    if (n + 1 < dim) {
      a.entries(n, n + 1) = std::sqrt(nd + 1.0);
      ad.entries(n + 1, n) = std::sqrt(nd + 1.0);
    }
    if (n + 2 < dim) {
      const double c = 0.5 * std::sqrt((nd + 1.0) * (nd + 2.0));
      kp.entries(n + 2, n) = c;
      km.entries(n, n + 2) = c;
    }
  }
}

CMatrix with_identity(const CMatrix& m, std::size_t other, bool left) {
  return left ? kron(m, CMatrix::identity(other)) : kron(CMatrix::identity(other), m);
}

// Paterson-Stockmeyer evaluation of sum_{j<=16} A^j / j!.
CMatrix taylor16(const CMatrix& a) {
  std::array<double, 17> c{};
  c[0] = 1.0;
  for (std::size_t j = 1; j < c.size(); ++j) {
    c[j] = c[j - 1] / static_cast<double>(j);
  }
  const std::size_t n = a.rows();
  const CMatrix eye = CMatrix::identity(n);
  const CMatrix a2 = a * a;
  const CMatrix a3 = a2 * a;
  const CMatrix a4 = a2 * a2;
  auto block = [&](std::size_t j) {
    return c[4 * j] * eye + c[4 * j + 1] * a + c[4 * j + 2] * a2 + c[4 * j + 3] * a3;
  };
  CMatrix acc = block(3) + c[16] * a4;
  for (std::size_t j = 3; j-- > 0;) {
    acc = block(j) + a4 * acc;
  }
  return acc;
}

void check_disk(cplx w) {
  if (!(std::abs(w) < 1.0)) {
    throw DomainError("oracle: |w| must be < 1");
  }
}

CMatrix k_generators(const OperatorSet& ops, cplx zp, cplx zm) {
  return zp * ops.Kplus.entries + zm * ops.Kminus.entries;
}

// Apply A (x) B to a coefficient array C stored row-major as (fock, prime):
// result = A C B^T.
CoeffVector apply_factorized(const CMatrix& fock, const CMatrix& prime, const CoeffVector& c) {
  const std::size_t nf = static_cast<std::size_t>(c.n_max()) + 1;
  const std::size_t np = static_cast<std::size_t>(c.m_max()) + 1;
  CMatrix cm(nf, np);
  std::copy(c.coeffs().begin(), c.coeffs().end(), cm.data().begin());
  CMatrix pt(np, np);
  for (std::size_t i = 0; i < np; ++i) {
    for (std::size_t j = 0; j < np; ++j) {
      pt(i, j) = prime(j, i);
    }
  }
  const CMatrix r = fock * cm * pt;
  CoeffVector out(c.n_max(), c.m_max(), c.k());
  std::copy(r.data().begin(), r.data().end(), out.coeffs().begin());
  return out;
}

CMatrix displacement_matrix(std::size_t dim, cplx alpha) {
  const OperatorSet ops = build_operators(dim, BargmannIndex(0.25), Realization::fock_quarter);
  return matrix_exp(alpha * ops.a_dagger->entries - std::conj(alpha) * ops.a->entries);
}

CMatrix squeeze_matrix(const OperatorSet& ops, cplx w) {
  const cplx z = squeeze_exponent(w);
  return matrix_exp(k_generators(ops, z, -std::conj(z)));
}

// T(g) on one factor: S(beta) exp(2i phi K0).
CMatrix t_factor(const OperatorSet& ops, cplx beta, double phi) {
  if (std::abs(beta) == 0.0) {
    return oracle_rotation(ops, phi);
  }
  return squeeze_matrix(ops, beta) * oracle_rotation(ops, phi);
}

// Share of |c|^2 on the last Fock row and last K' column. The dense
// operators are corrupted near the cut, but that only reaches the result
// through the components the state actually puts there.
void check_state_edge(const CoeffVector& c) {
  constexpr double threshold = 1e-8;
  const double total = c.norm2();
  if (total == 0.0) {
    return;
  }
  double edge = 0.0;
  for (int n = 0; n <= c.n_max(); ++n) {
    for (int m = 0; m <= c.m_max(); ++m) {
      if (n == c.n_max() || (c.m_max() > 0 && m == c.m_max())) {
        edge += std::norm(c(n, m));
      }
    }
  }
  if (edge / total > threshold) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "oracle: boundary mass of the state %.3e exceeds %.1e; enlarge dims", edge / total,
                  threshold);
    warn(buf);
  }
}

// A ladder chain: basis indices idx[0..L) with K+ e_{idx[q]} = sqrt(sq[q]) e_{idx[q+1]}
// and K0 e_{idx[q]} = (k0 + q) e_{idx[q]}.
struct Chain {
  std::vector<std::size_t> idx;
  std::vector<numerics::Rational> sq;
  double k0;
};

std::vector<Chain> dseries_chains(std::size_t dim, double k) {
  Chain c{{}, {}, k};
  const numerics::Rational two_k = 2 * numerics::exact(k);
  for (std::size_t m = 0; m < dim; ++m) {
    c.idx.push_back(m);
    if (m + 1 < dim) {
      c.sq.emplace_back((m + 1) * (m + two_k));
    }
  }
  return {c};
}

std::vector<Chain> fock_chains(std::size_t dim) {
  std::vector<Chain> out;
  for (std::size_t parity = 0; parity < 2 && parity < dim; ++parity) {
    Chain c{{}, {}, 0.5 * (static_cast<double>(parity) + 0.5)};
    for (std::size_t n = parity; n < dim; n += 2) {
      c.idx.push_back(n);
      if (n + 2 < dim) {
        c.sq.emplace_back(numerics::Rational((n + 1) * (n + 2), 4));
      }
    }
    out.push_back(std::move(c));
  }
  return out;
}

// (exp(w K+) t^{K0} exp(-conj(w) K-))(idx[a], idx[b]) with t = 1 - |w|^2
//   = e^{i theta (a-b)} rho^{(a+b) mod 2} t^{k0}
//     * sum_{l <= min(a,b)} (-1)^{b-l} (rho^2)^{h-l} t^l A(l,a) A(l,b),
// h = floor((a+b)/2), A(l,a) = sqrt(prod_{q=l}^{a-1} sq[q]) / (a-l)!.
CMatrix disentangled_product(const std::vector<Chain>& chains, std::size_t dim, cplx w) {
  constexpr mp_bitcnt_t prec = 384;
  const numerics::Rational r2q = numerics::exact(w.real()) * numerics::exact(w.real()) +
                                 numerics::exact(w.imag()) * numerics::exact(w.imag());
  const mpf_class r2(r2q, prec);
  const mpf_class t(1 - r2q, prec);
  const double rho = std::abs(w);
  const cplx unit = rho > 0.0 ? w / rho : cplx(1.0);
  const double log_t = std::log1p(-std::norm(w));

  CMatrix out(dim, dim);
  for (const Chain& c : chains) {
    const std::size_t len = c.idx.size();
    // A(l, a) for l <= a, row-major in l.
    std::vector<mpf_class> amp(len * len, mpf_class(0, prec));
    for (std::size_t l = 0; l < len; ++l) {
      numerics::Rational prod = 1;
      numerics::Rational fact = 1;
      amp[l * len + l] = 1;
      for (std::size_t a = l + 1; a < len; ++a) {
        prod *= c.sq[a - 1];
        fact *= static_cast<unsigned long>(a - l);
        amp[l * len + a] = sqrt(mpf_class(prod, prec)) / mpf_class(fact, prec);
      }
    }
    std::vector<mpf_class> r2pow(len, mpf_class(1, prec)), tpow(len, mpf_class(1, prec));
    for (std::size_t q = 1; q < len; ++q) {
      r2pow[q] = r2pow[q - 1] * r2;
      tpow[q] = tpow[q - 1] * t;
    }
    mpf_class sum(0, prec), term(0, prec);
    for (std::size_t a = 0; a < len; ++a) {
      for (std::size_t b = 0; b < len; ++b) {
        const std::size_t h = (a + b) / 2;
        sum = 0;
        for (std::size_t l = 0; l <= std::min(a, b); ++l) {
          term = r2pow[h - l] * tpow[l] * amp[l * len + a] * amp[l * len + b];
          if ((b - l) % 2 == 1) {
            sum -= term;
          } else {
            sum += term;
          }
        }
        const double scale = std::exp(c.k0 * log_t) * ((a + b) % 2 == 1 ? rho : 1.0);
        const int shift = static_cast<int>(a) - static_cast<int>(b);
        out(c.idx[a], c.idx[b]) = std::pow(unit, shift) * (scale * sum.get_d());
      }
    }
  }
  return out;
}

void check_sizes(std::size_t fock_dim, std::size_t prime_dim, const BargmannIndex& k) {
  if (fock_dim < 2 || prime_dim < 1) {
    throw DomainError("oracle: fock_dim must be >= 2 and prime_dim >= 1");
  }
  if (k.prime() < -1e-12) {
    throw DomainError("oracle: coherent states need k >= 1/4");
  }
}

CoeffVector oracle_action_impl(cplx alpha, cplx beta, double phi, const CsPoint& p, const BargmannIndex& k,
                               std::size_t fock_dim, std::size_t prime_dim) {
  check_sizes(fock_dim, prime_dim, k);
  const bool trivial_prime = k.prime() <= 1e-12;
  if (trivial_prime) {
    prime_dim = 1;
  }
  const CoeffVector c = oracle_cs_vector(p, k, fock_dim, prime_dim);
  check_state_edge(c);
  const CoeffVector dc = apply_factorized(displacement_matrix(fock_dim, alpha), CMatrix::identity(prime_dim), c);
  check_state_edge(dc);
  const OperatorSet fock = build_operators(fock_dim, BargmannIndex(0.25), Realization::fock_quarter);
  CMatrix prime_t = CMatrix::identity(1);
  if (!trivial_prime) {
    const OperatorSet prime = build_operators(prime_dim, BargmannIndex(k.prime()), Realization::abstract_dseries);
    prime_t = t_factor(prime, beta, phi);
  }
  CoeffVector out = apply_factorized(t_factor(fock, beta, phi), prime_t, dc);
  check_state_edge(out);
  return out;
}

} // namespace

OperatorSet build_operators(std::size_t dim, const BargmannIndex& k, Realization realization, std::size_t prime_dim) {
  if (dim < 2) {
    throw DomainError("build_operators: dim must be >= 2");
  }
  switch (realization) {
  case Realization::abstract_dseries: {
    OperatorSet ops{realization, dim, std::nullopt, std::nullopt, make(dim, Label::K0), make(dim, Label::Kplus),
                    make(dim, Label::Kminus), std::nullopt, std::nullopt, std::nullopt};
    fill_dseries(dim, k.value(), ops.K0, ops.Kplus, ops.Kminus);
    ops.k = k.value();
    return ops;
  }
  case Realization::fock_quarter: {
    OperatorSet ops{realization, dim, make(dim, Label::a), make(dim, Label::a_dagger), make(dim, Label::K0),
                    make(dim, Label::Kplus), make(dim, Label::Kminus), std::nullopt, std::nullopt, std::nullopt};
    fill_fock(dim, *ops.a, *ops.a_dagger, ops.K0, ops.Kplus, ops.Kminus);
    return ops;
  }
  case Realization::tensor_product: {
    if (prime_dim < 1) {
      throw DomainError("build_operators: tensor_product needs prime_dim >= 1");
    }
    const double kp = k.prime();
    if (kp < -1e-12) {
      throw DomainError("build_operators: tensor_product needs k >= 1/4");
    }
    TruncatedOperator a = make(dim, Label::a), ad = make(dim, Label::a_dagger);
    TruncatedOperator f0 = make(dim, Label::K0), fp = make(dim, Label::Kplus), fm = make(dim, Label::Kminus);
    fill_fock(dim, a, ad, f0, fp, fm);
    TruncatedOperator p0 = make(prime_dim, Label::K0_prime), pp = make(prime_dim, Label::Kplus_prime),
                      pm = make(prime_dim, Label::Kminus_prime);
    fill_dseries(prime_dim, std::max(kp, 0.0), p0, pp, pm);

    const std::size_t total = dim * prime_dim;
    auto lift_fock = [&](const TruncatedOperator& op) {
      return TruncatedOperator{total, with_identity(op.entries, prime_dim, true), op.label};
    };
    auto lift_prime = [&](const TruncatedOperator& op) {
      return TruncatedOperator{total, with_identity(op.entries, dim, false), op.label};
    };
    OperatorSet ops{realization,       total,          lift_fock(a),
                    lift_fock(ad),     lift_fock(f0),  lift_fock(fp),
                    lift_fock(fm),     lift_prime(p0), lift_prime(pp),
                    lift_prime(pm)};
    ops.K0.entries += ops.K0_prime->entries;
    ops.Kplus.entries += ops.Kplus_prime->entries;
    ops.Kminus.entries += ops.Kminus_prime->entries;
    ops.k = k.value();
    ops.fock_dim = dim;
    ops.prime_dim = prime_dim;
    return ops;
  }
  }
  throw DomainError("build_operators: unknown realization");
}

CMatrix matrix_exp(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw std::invalid_argument("matrix_exp: matrix must be square");
  }
  if (!m.all_finite()) {
    throw OverflowError("matrix_exp: non-finite entries");
  }
  const double norm = m.norm1();
  if (norm > 1e6) {
    throw OverflowError("matrix_exp: norm " + format_number(norm) + " beyond the supported range");
  }
  int squarings = 0;
  if (norm > 0.5) {
    squarings = static_cast<int>(std::ceil(std::log2(norm / 0.5)));
  }
  CMatrix r = taylor16(m * cplx(std::ldexp(1.0, -squarings)));
  for (int i = 0; i < squarings; ++i) {
    r = r * r;
  }
  if (!r.all_finite()) {
    throw OverflowError("matrix_exp: result overflowed");
  }
  return r;
}

CMatrix oracle_displacement(std::size_t dim, cplx alpha, std::size_t compared) {
  const CMatrix d = displacement_matrix(dim, alpha);
  boundary_mass(d, compared == 0 ? dim / 4 : compared);
  return d;
}

CMatrix oracle_displacement_normal_ordered(std::size_t dim, cplx alpha) {
  const OperatorSet ops = build_operators(dim, BargmannIndex(0.25), Realization::fock_quarter);
  const CMatrix up = matrix_exp(alpha * ops.a_dagger->entries);
  const CMatrix down = matrix_exp(-std::conj(alpha) * ops.a->entries);
  return std::exp(-0.5 * std::norm(alpha)) * (up * down);
}

cplx squeeze_exponent(cplx w) {
  check_disk(w);
  const double r = std::abs(w);
  if (r == 0.0) {
    return 0.0;
  }
  return std::atanh(r) * (w / r);
}

CMatrix oracle_squeeze(const OperatorSet& ops, cplx w, std::size_t compared) {
  const CMatrix s = squeeze_matrix(ops, w);
  boundary_mass(s, compared == 0 ? ops.dim / 4 : compared);
  return s;
}

CMatrix oracle_squeeze_disentangled(const OperatorSet& ops, cplx w) {
  check_disk(w);
  switch (ops.realization) {
  case Realization::abstract_dseries:
    return disentangled_product(dseries_chains(ops.dim, ops.k), ops.dim, w);
  case Realization::fock_quarter:
    return disentangled_product(fock_chains(ops.dim), ops.dim, w);
  case Realization::tensor_product:
    // Every factor splits as (Fock part) (x) (K' part); the parts commute.
    return kron(disentangled_product(fock_chains(ops.fock_dim), ops.fock_dim, w),
                disentangled_product(dseries_chains(ops.prime_dim, std::max(ops.k - 0.25, 0.0)), ops.prime_dim, w));
  }
  throw DomainError("oracle_squeeze_disentangled: unknown realization");
}

CMatrix oracle_squeeze(std::size_t dim, const BargmannIndex& k, cplx w, Realization realization,
                       std::size_t compared) {
  return oracle_squeeze(build_operators(dim, k, realization), w, compared);
}

CMatrix oracle_rotation(const OperatorSet& ops, double phi) {
  std::vector<cplx> d(ops.dim);
  for (std::size_t i = 0; i < ops.dim; ++i) {
    d[i] = std::exp(cplx(0.0, 2.0 * phi * ops.K0.entries(i, i).real()));
  }
  return CMatrix::diagonal(d);
}

CoeffVector oracle_cs_vector(const CsPoint& p, const BargmannIndex& k, std::size_t fock_dim, std::size_t prime_dim) {
  check_sizes(fock_dim, prime_dim, k);
  if (k.prime() <= 1e-12) {
    prime_dim = 1;
  }
  // z a^+ + w K+ = (z a^+ + w (a^+)^2 / 2) (x) 1 + 1 (x) w K'+, two commuting
  // raising operators, so the exponential factorizes and its truncation is
  // the exact projection of the infinite one.
  const OperatorSet fock = build_operators(fock_dim, k, Realization::fock_quarter);
  const CMatrix ef = matrix_exp(p.z() * fock.a_dagger->entries + p.w() * fock.Kplus.entries);
  CMatrix ep = CMatrix::identity(1);
  if (prime_dim > 1) {
    const OperatorSet prime = build_operators(prime_dim, BargmannIndex(k.prime()), Realization::abstract_dseries);
    ep = matrix_exp(p.w() * prime.Kplus.entries);
  }
  CoeffVector out(static_cast<int>(fock_dim) - 1, static_cast<int>(prime_dim) - 1, k);
  for (std::size_t n = 0; n < fock_dim; ++n) {
    for (std::size_t m = 0; m < prime_dim; ++m) {
      out(static_cast<int>(n), static_cast<int>(m)) = ef(n, 0) * ep(m, 0);
    }
  }
  return out;
}

CoeffVector oracle_action_on_cs(const JacobiElement& h, const CsPoint& p, const BargmannIndex& k,
                                std::size_t fock_dim, std::size_t prime_dim) {
  const cplx a = h.g.a();
  const cplx b = h.g.b();
  return oracle_action_impl(h.alpha, b / std::conj(a), std::arg(a), p, k, fock_dim, prime_dim);
}

CoeffVector oracle_action_on_cs_covering(const CoveringElement& c, cplx alpha, const CsPoint& p,
                                         const BargmannIndex& k, std::size_t fock_dim, std::size_t prime_dim) {
  const cplx beta = std::exp(cplx(0.0, 2.0 * c.omega())) * c.gamma();
  return oracle_action_impl(alpha, beta, c.omega(), p, k, fock_dim, prime_dim);
}

std::size_t interior_extent(std::size_t dim, double fraction) {
  const auto cut = static_cast<std::size_t>(std::floor(fraction * static_cast<double>(dim)));
  return dim - std::min(cut, dim);
}

double interior_max_abs_diff(const CMatrix& a, const CMatrix& b, double fraction) {
  return max_abs_diff(a, b, interior_extent(a.rows(), fraction), interior_extent(a.cols(), fraction));
}

double boundary_mass(const CMatrix& m, std::size_t cols, double threshold) {
  if (m.rows() == 0) {
    return 0.0;
  }
  const std::size_t last = m.rows() - 1;
  double worst = 0.0;
  for (std::size_t j = 0; j < std::min(cols, m.cols()); ++j) {
    double total = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      total += std::norm(m(i, j));
    }
    if (total > 0.0) {
      worst = std::max(worst, std::norm(m(last, j)) / total);
    }
  }
  if (worst > threshold) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "oracle: boundary-row mass %.3e exceeds %.1e; enlarge dim", worst, threshold);
    warn(buf);
  }
  return worst;
}

} // namespace jacobi::oracle
