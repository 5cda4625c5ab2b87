#pragma once

#include <complex>
#include <cstddef>

// Dense double-precision inner-loop kernels. Every entry point has a scalar
// reference implementation and, on x86-64, an AVX2+FMA variant selected at
// runtime. The active table is chosen once per process: the OSCNET_KERNELS
// environment variable ("scalar", "avx2", "auto") overrides cpuid detection.
//
// Conventions shared by all kernels:
//   * matrices are row-major, dimensions rows x cols
//   * gemv outputs must not alias their inputs
//   * gemm writes C = A*B into a caller-provided buffer (overwritten)

namespace oscnet::kern {

using cplx = std::complex<double>;

struct KernelTable {
  const char* name;

  // y += a*x
  void (*axpy_d)(std::size_t n, double a, const double* x, double* y);
  void (*axpy_z)(std::size_t n, cplx a, const cplx* x, cplx* y);

  // sum_i x[i]*y[i]
  double (*dot_d)(std::size_t n, const double* x, const double* y);

  // y = A*x with A rows x cols
  void (*gemv_d)(std::size_t rows, std::size_t cols, const double* a,
                 const double* x, double* y);
  void (*gemv_dz)(std::size_t rows, std::size_t cols, const double* a,
                  const cplx* x, cplx* y);
  void (*gemv_z)(std::size_t rows, std::size_t cols, const cplx* a,
                 const cplx* x, cplx* y);

  // C = A*B with A rows x inner, B inner x cols
  void (*gemm_d)(std::size_t rows, std::size_t inner, std::size_t cols,
                 const double* a, const double* b, double* c);
};

const KernelTable& scalar_table();

// nullptr when the AVX2 variants were not compiled in or the CPU lacks them.
const KernelTable* avx2_table();

// Table used by the rest of the library; resolved once, thread-safe.
const KernelTable& active();

}  // namespace oscnet::kern
