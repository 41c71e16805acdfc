#pragma once

#include <vector>

namespace jacobi::quadrature {

struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Jacobi rule on [-1, 1] for the weight (1 - x)^alpha (1 + x)^beta,
/// alpha, beta > -1, via the Golub-Welsch eigenproblem.
GaussRule gauss_jacobi(int n, double alpha, double beta);

/// Gauss rule on [0, 1] for the weight (1 - u)^alpha.
GaussRule gauss_jacobi_unit(int n, double alpha);

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
GaussRule gauss_hermite(int n);

} // namespace jacobi::quadrature
