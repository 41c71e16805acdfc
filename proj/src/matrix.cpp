#include "jacobi/matrix.hpp"

#include "jacobi/simd.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace jacobi {

CMatrix CMatrix::identity(std::size_t n) {
  CMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    m(i, i) = 1.0;
  }
  return m;
}

CMatrix CMatrix::diagonal(std::span<const cplx> d) {
  CMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) {
    m(i, i) = d[i];
  }
  return m;
}

CMatrix CMatrix::adjoint() const {
  CMatrix out(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) {
      out(j, i) = std::conj((*this)(i, j));
    }
  }
  return out;
}

double CMatrix::norm1() const {
  double best = 0.0;
  for (std::size_t j = 0; j < cols_; ++j) {
    double col = 0.0;
    for (std::size_t i = 0; i < rows_; ++i) {
      col += std::abs((*this)(i, j));
    }
    best = std::max(best, col);
  }
  return best;
}

bool CMatrix::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

CMatrix& CMatrix::operator+=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("CMatrix: shape mismatch in +=");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] += rhs.data_[i];
  }
  return *this;
}

CMatrix& CMatrix::operator-=(const CMatrix& rhs) {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) {
    throw std::invalid_argument("CMatrix: shape mismatch in -=");
  }
  for (std::size_t i = 0; i < data_.size(); ++i) {
    data_[i] -= rhs.data_[i];
  }
  return *this;
}

CMatrix& CMatrix::operator*=(cplx s) {
  for (auto& z : data_) {
    z *= s;
  }
  return *this;
}

CMatrix operator*(const CMatrix& lhs, const CMatrix& rhs) {
  if (lhs.cols_ != rhs.rows_) {
    throw std::invalid_argument("CMatrix: shape mismatch in product");
  }
  CMatrix out(lhs.rows_, rhs.cols_);
  simd::cgemm(lhs.rows_, rhs.cols_, lhs.cols_, lhs.data(), rhs.data(), out.data());
  return out;
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const cplx s = a(i, j);
      if (s == cplx{}) {
        continue;
      }
      for (std::size_t p = 0; p < b.rows(); ++p) {
        for (std::size_t q = 0; q < b.cols(); ++q) {
          out(i * b.rows() + p, j * b.cols() + q) = s * b(p, q);
        }
      }
    }
  }
  return out;
}

std::vector<cplx> apply(const CMatrix& m, std::span<const cplx> v) {
  if (v.size() != m.cols()) {
    throw std::invalid_argument("apply: vector length does not match matrix");
  }
  std::vector<cplx> out(m.rows());
  simd::cgemm(m.rows(), 1, m.cols(), m.data(), v, out);
  return out;
}

double max_abs_diff(const CMatrix& a, const CMatrix& b, std::size_t rows, std::size_t cols) {
  rows = std::min({rows, a.rows(), b.rows()});
  cols = std::min({cols, a.cols(), b.cols()});
  double worst = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) {
      worst = std::max(worst, std::abs(a(i, j) - b(i, j)));
    }
  }
  return worst;
}

} // namespace jacobi
