#pragma once

#include <complex>
#include <vector>

namespace jacobi {

using cplx = std::complex<double>;

/// Bargmann index k > 0 of the positive discrete series D+_k.
class BargmannIndex {
public:
  explicit BargmannIndex(double k);

  double value() const noexcept { return k_; }
  /// True iff 2k is an integer (within 1e-12); the representation of
  /// SU(1,1) is then single-valued.
  bool is_integer_weight() const noexcept { return integer_weight_; }
  /// k' = k - 1/4, the index carried by the K' part of the splitting.
  double prime() const noexcept { return k_ - 0.25; }

  friend bool operator==(const BargmannIndex&, const BargmannIndex&) = default;

private:
  double k_;
  bool integer_weight_;
};

namespace numerics {

/// ln Gamma(x) - ln Gamma(y) for x, y > 0, accurate relative to the result
/// even when x and y are close.
double log_gamma_ratio(double x, double y);

/// Associated Laguerre polynomial L_n^s(x) by the three-term recurrence in n.
/// Requires n >= 0, s >= -n, x >= 0.
double laguerre_assoc(int n, int s, double x);

/// Terminating Gauss series F(-m, b; c; x). The sum is formed exactly on the
/// binary values of b, c, x and rounded once, so alternating cancellation
/// does not cost accuracy. Throws PoleError if (c)_j vanishes for j < m.
double gauss_2f1_terminating(int m, double b, double c, double x);

/// P_n(z, w) = n! sum_p (w/2)^p z^(n-2p) / (p! (n-2p)!), via
/// P_{n+1} = z P_n + n w P_{n-1}.
cplx pn_polynomial(int n, cplx z, cplx w);

/// P_n(z, w) / sqrt(n!) for n = 0..n_max, overflow-free.
std::vector<cplx> pn_normalized(int n_max, cplx z, cplx w);

/// Integer power of a complex number by repeated squaring.
cplx ipow(cplx base, int exponent);

} // namespace numerics
} // namespace jacobi
