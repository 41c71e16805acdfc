#pragma once

#include "jacobi/numerics.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace jacobi {

/// Dense row-major complex matrix.
class CMatrix {
public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static CMatrix identity(std::size_t n);
  static CMatrix diagonal(std::span<const cplx> d);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<cplx> data() noexcept { return data_; }
  std::span<const cplx> data() const noexcept { return data_; }

  CMatrix adjoint() const;
  /// Maximum absolute column sum.
  double norm1() const;
  bool all_finite() const;

  CMatrix& operator+=(const CMatrix& rhs);
  CMatrix& operator-=(const CMatrix& rhs);
  CMatrix& operator*=(cplx s);

  friend CMatrix operator+(CMatrix lhs, const CMatrix& rhs) { return lhs += rhs; }
  friend CMatrix operator-(CMatrix lhs, const CMatrix& rhs) { return lhs -= rhs; }
  friend CMatrix operator*(CMatrix lhs, cplx s) { return lhs *= s; }
  friend CMatrix operator*(cplx s, CMatrix rhs) { return rhs *= s; }
  friend CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs);

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cplx> data_;
};

/// Kronecker product A (x) B.
CMatrix kron(const CMatrix& a, const CMatrix& b);
/// Matrix-vector product.
std::vector<cplx> apply(const CMatrix& m, std::span<const cplx> v);
/// max |A_ij - B_ij| over i < rows, j < cols.
double max_abs_diff(const CMatrix& a, const CMatrix& b, std::size_t rows, std::size_t cols);

} // namespace jacobi
