#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

#include "oscnet/kernels.hpp"

// Minimal dense row-major matrix/vector helpers on top of the kernel layer.
// Sizes here are desk-scale (n up to a few hundred), everything is owned and
// value-semantic.

namespace oscnet {

using cplx = std::complex<double>;
using Vec = std::vector<double>;
using CVec = std::vector<cplx>;

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, 0.0) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  static Matrix diag(const Vec& d) {
    Matrix m(d.size(), d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  // scale row i by s[i] (diag(s) * M)
  void scale_rows(const Vec& s) {
    assert(s.size() == rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) a_[i * cols_ + j] *= s[i];
  }

  // scale column j by s[j] (M * diag(s))
  void scale_cols(const Vec& s) {
    assert(s.size() == cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) a_[i * cols_ + j] *= s[j];
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  Vec a_;
};

class CMatrix {
 public:
  CMatrix() = default;
  CMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), a_(rows * cols, cplx(0.0, 0.0)) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  cplx& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  cplx operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }

  cplx* data() { return a_.data(); }
  const cplx* data() const { return a_.data(); }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  CVec a_;
};

inline Matrix matmul(const Matrix& a, const Matrix& b) {
  assert(a.cols() == b.rows());
  Matrix c(a.rows(), b.cols());
  kern::active().gemm_d(a.rows(), a.cols(), b.cols(), a.data(), b.data(), c.data());
  return c;
}

inline Vec matvec(const Matrix& a, const Vec& x) {
  assert(a.cols() == x.size());
  Vec y(a.rows());
  kern::active().gemv_d(a.rows(), a.cols(), a.data(), x.data(), y.data());
  return y;
}

inline CVec matvec(const Matrix& a, const CVec& x) {
  assert(a.cols() == x.size());
  CVec y(a.rows());
  kern::active().gemv_dz(a.rows(), a.cols(), a.data(), x.data(), y.data());
  return y;
}

inline CVec matvec(const CMatrix& a, const CVec& x) {
  assert(a.cols() == x.size());
  CVec y(a.rows());
  kern::active().gemv_z(a.rows(), a.cols(), a.data(), x.data(), y.data());
  return y;
}

inline Matrix add(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Matrix c = a;
  kern::active().axpy_d(b.rows() * b.cols(), 1.0, b.data(), c.data());
  return c;
}

inline Matrix subtract(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  Matrix c = a;
  kern::active().axpy_d(b.rows() * b.cols(), -1.0, b.data(), c.data());
  return c;
}

inline double max_abs(const Matrix& m) {
  double v = 0.0;
  for (std::size_t i = 0; i < m.rows() * m.cols(); ++i)
    v = std::max(v, std::abs(m.data()[i]));
  return v;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  assert(a.rows() == b.rows() && a.cols() == b.cols());
  double v = 0.0;
  for (std::size_t i = 0; i < a.rows() * a.cols(); ++i)
    v = std::max(v, std::abs(a.data()[i] - b.data()[i]));
  return v;
}

inline double max_abs(const CVec& x) {
  double v = 0.0;
  for (const cplx& c : x) v = std::max(v, std::abs(c));
  return v;
}

inline double max_abs_diff(const CVec& a, const CVec& b) {
  assert(a.size() == b.size());
  double v = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) v = std::max(v, std::abs(a[i] - b[i]));
  return v;
}

inline std::vector<double> linspace(double t0, double t1, std::size_t samples) {
  std::vector<double> ts(samples);
  if (samples == 1) {
    ts[0] = t0;
    return ts;
  }
  const double dt = (t1 - t0) / static_cast<double>(samples - 1);
  for (std::size_t k = 0; k < samples; ++k) ts[k] = t0 + dt * static_cast<double>(k);
  return ts;
}

}  // namespace oscnet
