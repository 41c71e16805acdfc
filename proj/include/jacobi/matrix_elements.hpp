#pragma once

#include "jacobi/groups.hpp"
#include "jacobi/matrix.hpp"
#include "jacobi/numerics.hpp"

#include <optional>
#include <vector>

namespace jacobi::me {

/// <phi_m | D(alpha) | phi_n>. For m >= n the Laguerre closed form
/// sqrt(n!/m!) alpha^{m-n} L_n^{m-n}(|alpha|^2) e^{-|alpha|^2/2}; for m < n
/// the adjoint identity conj(<phi_n | D(-alpha) | phi_m>).
cplx displacement_me(int m, int n, cplx alpha);

/// Coefficients of exp(-conj(w) K_-) phi_{k,m} on phi_{k,m-p}, p = 0..m.
std::vector<cplx> expkminus_coeffs(int m, const BargmannIndex& k, cplx wbar);

enum class SqueezeForm { h11, kummer };

/// <phi_{k m'} | S(w) | phi_{k m}>, S(w) = exp(w K+) exp(ln(1-|w|^2) K0) exp(-conj(w) K-).
/// For m' >= m the hypergeometric closed form selected by `form`; for m > m'
/// the symmetry S_{m'm}(w) = S_{m m'}(-conj(w)).
cplx squeeze_me(int m_prime, int m, const BargmannIndex& k, cplx w, SqueezeForm form = SqueezeForm::kummer);

/// <phi_{n'} | S(w) | phi_n> in the single-mode Fock realization
/// K+ = (a^+)^2 / 2: zero across parity, otherwise the k = 1/4 or 3/4 element.
cplx fock_squeeze_me(int n_prime, int n, cplx w);

/// <phi_{k m'} | T(g) | phi_{k m}> = (a/|a|)^{2(k+m)} S_{m'm}(b / conj(a)).
/// For non-integer 2k the phase uses the principal argument of a and a
/// branch warning is emitted.
cplx tg_me(const Su11Element& g, int m_prime, int m, const BargmannIndex& k);
/// Covering-group version: phase e^{2i(k+m) omega}, single-valued for all k.
cplx tg_me(const CoveringElement& c, int m_prime, int m, const BargmannIndex& k);

struct JacobiMe {
  cplx value;
  /// Cauchy-Schwarz bound on the discarded s' > s_max part of the sum.
  double tail_bound;
};

/// <phi_{n'} (x) phi_{k'm'} | D(alpha) S(w, w') | phi_{2s+eps} (x) phi_{k'm}>
///   = S_{k'm'm}(w') sum_{s'=0}^{s_max} <phi_{n'}|D(alpha)|phi_{2s'+eps}> S_{1/4+eps/2, s's}(w),
/// with k the total index and k' = k - 1/4 > 0 carried by the second factor.
/// Throws TruncationError when the tail bound exceeds `tail_tol`.
JacobiMe jacobi_me(int n_prime, int m_prime, int s, int m, int epsilon, const BargmannIndex& k, cplx alpha, cplx w,
                   cplx w_prime, int s_max, double tail_tol = 1e-10);

enum class TableKind { displacement, squeeze, jacobi };

struct MeTable {
  TableKind kind;
  BargmannIndex k;
  /// alpha for displacement and jacobi tables, w for squeeze tables.
  cplx parameter;
  /// Squeeze parameters of a jacobi table (Fock factor, K' factor).
  cplx w{};
  cplx w_prime{};
  std::size_t rows;
  std::size_t cols;
  CMatrix entries;
  /// Per-entry tail bounds (jacobi tables only; empty otherwise).
  std::vector<double> tail_bounds;
  /// For jacobi tables: Fock and K' dimensions; rows index n * prime_dim + m.
  std::size_t fock_dim = 0;
  std::size_t prime_dim = 0;
};

struct TableOptions {
  SqueezeForm form = SqueezeForm::kummer;
  cplx w{};                      // jacobi only
  std::optional<cplx> w_prime{}; // jacobi only; defaults to w
  int s_max = 48;
  double tail_tol = 1e-10;
  std::size_t prime_dim = 1;     // jacobi only; rows/cols = dims * prime_dim
  unsigned threads = 0;          // 0: hardware concurrency
};

/// Bulk evaluation. displacement/squeeze tables are dims x dims; jacobi tables
/// are (dims * prime_dim)^2 over flattened (n, m) with n = 2s + eps.
/// Entries are filled in parallel; values do not depend on the thread count.
MeTable me_table(TableKind kind, const BargmannIndex& k, cplx parameter, std::size_t dims,
                 const TableOptions& options = {});

} // namespace jacobi::me
