#include "jacobi/quadrature.hpp"

#include "jacobi/errors.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <numbers>

namespace jacobi::quadrature {

namespace {

// Golub-Welsch: nodes are eigenvalues of the symmetric tridiagonal Jacobi
// matrix, weights are mu0 times the squared first eigenvector components.
GaussRule golub_welsch(const Eigen::VectorXd& diag, const Eigen::VectorXd& offdiag, double mu0) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, offdiag, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw std::runtime_error("golub_welsch: eigenvalue iteration failed");
  }
  const auto n = diag.size();
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double v0 = solver.eigenvectors()(0, i);
    rule.nodes[static_cast<std::size_t>(i)] = solver.eigenvalues()(i);
    rule.weights[static_cast<std::size_t>(i)] = mu0 * v0 * v0;
  }
  return rule;
}

} // namespace

GaussRule gauss_jacobi(int n, double alpha, double beta) {
  if (n < 1 || !(alpha > -1.0) || !(beta > -1.0)) {
    throw DomainError("gauss_jacobi: requires n >= 1 and alpha, beta > -1");
  }
  Eigen::VectorXd diag(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  const double ab = alpha + beta;
  for (int j = 0; j < n; ++j) {
    const double s = 2.0 * j + ab;
    if (j == 0) {
      diag(j) = (beta - alpha) / (ab + 2.0);
    } else {
      diag(j) = (beta * beta - alpha * alpha) / (s * (s + 2.0));
    }
  }
  for (int j = 1; j < n; ++j) {
    const double s = 2.0 * j + ab;
    const double num = 4.0 * j * (j + alpha) * (j + beta) * (j + ab);
    const double den = s * s * (s + 1.0) * (s - 1.0);
    off(j - 1) = std::sqrt(num / den);
  }
  const double mu0 = std::exp((ab + 1.0) * std::log(2.0) + std::lgamma(alpha + 1.0) + std::lgamma(beta + 1.0) -
                              std::lgamma(ab + 2.0));
  return golub_welsch(diag, off, mu0);
}

GaussRule gauss_jacobi_unit(int n, double alpha) {
  GaussRule rule = gauss_jacobi(n, alpha, 0.0);
  // u = (1 + x) / 2, (1 - u)^alpha du = 2^{-alpha-1} (1 - x)^alpha dx
  const double scale = std::pow(2.0, -alpha - 1.0);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = 0.5 * (1.0 + rule.nodes[i]);
    rule.weights[i] *= scale;
  }
  return rule;
}

GaussRule gauss_hermite(int n) {
  if (n < 1) {
    throw DomainError("gauss_hermite: requires n >= 1");
  }
  Eigen::VectorXd diag = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(std::max(n - 1, 0));
  for (int j = 1; j < n; ++j) {
    off(j - 1) = std::sqrt(j / 2.0);
  }
  return golub_welsch(diag, off, std::sqrt(std::numbers::pi));
}

} // namespace jacobi::quadrature
