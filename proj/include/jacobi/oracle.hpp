#pragma once

// Brute-force reference layer: truncated generator matrices built from the
// algebra relations, exponentiated densely. Nothing here calls the closed
// forms in matrix_elements or states.

#include "jacobi/groups.hpp"
#include "jacobi/matrix.hpp"
#include "jacobi/states.hpp"

#include <optional>

namespace jacobi::oracle {

enum class Label { a, a_dagger, K0, Kplus, Kminus, K0_prime, Kplus_prime, Kminus_prime };

struct TruncatedOperator {
  std::size_t dim;
  CMatrix entries;
  Label label;
};

enum class Realization {
  abstract_dseries, // K's on span{phi_{k,m}}
  fock_quarter,     // K+ = (a^+)^2/2, K- = a^2/2, K0 = (a^+ a + 1/2)/2; sectors k = 1/4, 3/4
  tensor_product,   // K = Fock part (x) I + I (x) K' on Fock (x) D+_{k'}
};

struct OperatorSet {
  Realization realization;
  std::size_t dim;
  std::optional<TruncatedOperator> a;
  std::optional<TruncatedOperator> a_dagger;
  TruncatedOperator K0;
  TruncatedOperator Kplus;
  TruncatedOperator Kminus;
  std::optional<TruncatedOperator> K0_prime;
  std::optional<TruncatedOperator> Kplus_prime;
  std::optional<TruncatedOperator> Kminus_prime;
  double k = 0.25;            // index the ladder was built with (total k for tensor_product)
  std::size_t fock_dim = 0;   // tensor_product factor sizes
  std::size_t prime_dim = 0;
};

/// abstract_dseries and fock_quarter use `dim`; for tensor_product `dim` is
/// the Fock dimension and the K' factor (index k - 1/4) has `prime_dim` states.
OperatorSet build_operators(std::size_t dim, const BargmannIndex& k, Realization realization,
                            std::size_t prime_dim = 0);

/// exp(M) by scaling and squaring with a degree-16 Taylor polynomial
/// (Paterson-Stockmeyer). Throws OverflowError for non-finite input or
/// norms beyond 1e6.
CMatrix matrix_exp(const CMatrix& m);

/// exp(alpha a^+ - conj(alpha) a) on the truncated Fock space. Warns when
/// the boundary row carries mass > 1e-8 in any of the first `compared`
/// columns (default dim / 4).
CMatrix oracle_displacement(std::size_t dim, cplx alpha, std::size_t compared = 0);
/// e^{-|alpha|^2/2} exp(alpha a^+) exp(-conj(alpha) a).
CMatrix oracle_displacement_normal_ordered(std::size_t dim, cplx alpha);

/// z = artanh|w| w/|w|, the exponent matching the disk parameter w.
cplx squeeze_exponent(cplx w);

/// exp(z K+ - conj(z) K-) with z = squeeze_exponent(w); warns like
/// oracle_displacement.
CMatrix oracle_squeeze(const OperatorSet& ops, cplx w, std::size_t compared = 0);
/// exp(w K+) exp(ln(1-|w|^2) K0) exp(-conj(w) K-). The outer factors are
/// nilpotent on the truncation, so their series terminate; the product is
/// summed in 384-bit arithmetic from the ladder coefficients, because in
/// double the binomially large terms cancel to O(1) results.
CMatrix oracle_squeeze_disentangled(const OperatorSet& ops, cplx w);
CMatrix oracle_squeeze(std::size_t dim, const BargmannIndex& k, cplx w, Realization realization,
                       std::size_t compared = 0);

/// exp(2 i phi K0), diagonal.
CMatrix oracle_rotation(const OperatorSet& ops, double phi);

/// exp(z a^+ + w K+) e_0 by matrix exponentials, on Fock dim x K' dim.
CoeffVector oracle_cs_vector(const CsPoint& p, const BargmannIndex& k, std::size_t fock_dim, std::size_t prime_dim);

/// T(g) D(alpha) e_{z,w} with T(g) = S(b/conj(a)) exp(2i arg(a) K0). Requires k >= 1/4.
/// Warns when the state carries more than 1e-8 of its norm on the cut.
CoeffVector oracle_action_on_cs(const JacobiElement& h, const CsPoint& p, const BargmannIndex& k,
                                std::size_t fock_dim, std::size_t prime_dim);
/// Covering version: rotation angle omega (unbounded), boost e^{2i omega} gamma.
CoeffVector oracle_action_on_cs_covering(const CoveringElement& c, cplx alpha, const CsPoint& p,
                                         const BargmannIndex& k, std::size_t fock_dim, std::size_t prime_dim);

/// max |A - B| over the leading (1 - fraction) block of rows and columns.
double interior_max_abs_diff(const CMatrix& a, const CMatrix& b, double fraction = 0.25);
std::size_t interior_extent(std::size_t dim, double fraction = 0.25);

/// Column-wise mass in the last row relative to the column norm; warns
/// through jacobi::warn when it exceeds `threshold` within the first `cols`.
double boundary_mass(const CMatrix& m, std::size_t cols, double threshold = 1e-8);

} // namespace jacobi::oracle
