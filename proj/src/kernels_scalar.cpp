#include "oscnet/kernels.hpp"

namespace oscnet::kern {

namespace {

void axpy_d_scalar(std::size_t n, double a, const double* x, double* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpy_z_scalar(std::size_t n, cplx a, const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

double dot_d_scalar(std::size_t n, const double* x, const double* y) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void gemv_d_scalar(std::size_t rows, std::size_t cols, const double* a,
                   const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + i * cols;
    double s = 0.0;
    for (std::size_t j = 0; j < cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void gemv_dz_scalar(std::size_t rows, std::size_t cols, const double* a,
                    const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + i * cols;
    double sre = 0.0, sim = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      sre += row[j] * x[j].real();
      sim += row[j] * x[j].imag();
    }
    y[i] = cplx(sre, sim);
  }
}

void gemv_z_scalar(std::size_t rows, std::size_t cols, const cplx* a,
                   const cplx* x, cplx* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const cplx* row = a + i * cols;
    double sre = 0.0, sim = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
      const double ar = row[j].real(), ai = row[j].imag();
      const double xr = x[j].real(), xi = x[j].imag();
      sre += ar * xr - ai * xi;
      sim += ar * xi + ai * xr;
    }
    y[i] = cplx(sre, sim);
  }
}

void gemm_d_scalar(std::size_t rows, std::size_t inner, std::size_t cols,
                   const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < rows * cols; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = c + i * cols;
    for (std::size_t l = 0; l < inner; ++l) {
      const double ail = a[i * inner + l];
      const double* brow = b + l * cols;
      for (std::size_t j = 0; j < cols; ++j) crow[j] += ail * brow[j];
    }
  }
}

constexpr KernelTable kScalarTable = {
    "scalar",      axpy_d_scalar,  axpy_z_scalar, dot_d_scalar,
    gemv_d_scalar, gemv_dz_scalar, gemv_z_scalar, gemm_d_scalar,
};

}  // namespace

const KernelTable& scalar_table() { return kScalarTable; }

}  // namespace oscnet::kern
