#pragma once

// Dense row-major complex matrix. Square in all physics uses; storage is a
// flat vector so the kernel layer and LAPACK can work on it directly.

#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include "gradtc/kernels.hpp"

namespace gradtc {

class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cplx(0.0, 0.0)) {}

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = cplx(1.0, 0.0);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cplx& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    check_same_shape(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

  // C = this * B via the kernel layer (square only)
  ComplexMatrix operator*(const ComplexMatrix& b) const {
    check_square_pair(b);
    ComplexMatrix c(rows_, rows_);
    kernels::matmul(data(), b.data(), c.data(), rows_);
    return c;
  }

  // C = this * B^H
  ComplexMatrix multiply_adjoint(const ComplexMatrix& b) const {
    check_square_pair(b);
    ComplexMatrix c(rows_, rows_);
    kernels::matmul_adj(data(), b.data(), c.data(), rows_);
    return c;
  }

  ComplexMatrix adjoint() const {
    ComplexMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = std::conj((*this)(i, j));
    return t;
  }

  std::vector<cplx> apply(std::span<const cplx> x) const {
    if (!square() || x.size() != cols_)
      throw std::invalid_argument("ComplexMatrix::apply: shape mismatch");
    std::vector<cplx> y(rows_);
    kernels::matvec(data(), x.data(), y.data(), rows_);
    return y;
  }

  std::vector<cplx> apply_adjoint(std::span<const cplx> x) const {
    if (!square() || x.size() != rows_)
      throw std::invalid_argument("ComplexMatrix::apply_adjoint: shape mismatch");
    std::vector<cplx> y(cols_);
    kernels::matvec_adj(data(), x.data(), y.data(), cols_);
    return y;
  }

  cplx trace() const {
    cplx t(0.0, 0.0);
    for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    return std::sqrt(kernels::norm_sq(data(), data_.size()));
  }

  double max_abs() const {
    double m = 0.0;
    for (const auto& v : data_) m = std::max(m, std::abs(v));
    return m;
  }

  double max_abs_diff(const ComplexMatrix& o) const {
    check_same_shape(o);
    double m = 0.0;
    for (std::size_t i = 0; i < data_.size(); ++i)
      m = std::max(m, std::abs(data_[i] - o.data_[i]));
    return m;
  }

  // max_ij |A_ij - conj(A_ji)|
  double max_asymmetry() const {
    double m = 0.0;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i; j < cols_; ++j)
        m = std::max(m, std::abs((*this)(i, j) - std::conj((*this)(j, i))));
    return m;
  }

 private:
  void check_same_shape(const ComplexMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("ComplexMatrix: shape mismatch");
  }
  void check_square_pair(const ComplexMatrix& o) const {
    if (!square() || !o.square() || rows_ != o.rows_)
      throw std::invalid_argument("ComplexMatrix: product requires equal square matrices");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<cplx> data_;
};

} // namespace gradtc
