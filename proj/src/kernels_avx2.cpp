// AVX2 + FMA kernel variants. This translation unit is the only one compiled
// with -mavx2 -mfma; it is reached at runtime only after a cpuid check.

#include "oscnet/kernels.hpp"

#if defined(OSCNET_HAVE_AVX2)

#include <immintrin.h>

namespace oscnet::kern {

namespace {

// (c0, c1) duplicated pairwise: (c0, c0, c1, c1)
inline __m256d dup_pairs(__m128d v) {
  return _mm256_permute4x64_pd(_mm256_castpd128_pd256(v), 0x50);
}

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_hadd_pd(s, s));
}

// collapse two interleaved complex partial sums into one
inline __m128d hsum_cplx(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  return _mm_add_pd(lo, hi);
}

void axpy_d_avx2(std::size_t n, double a, const double* x, double* y) {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d vy = _mm256_loadu_pd(y + i);
    vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
    _mm256_storeu_pd(y + i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpy_z_avx2(std::size_t n, cplx a, const cplx* x, cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  double* ys = reinterpret_cast<double*>(y);
  const __m256d are = _mm256_set1_pd(a.real());
  const __m256d aim = _mm256_set1_pd(a.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d vx = _mm256_loadu_pd(xs + 2 * i);
    __m256d vxsw = _mm256_permute_pd(vx, 0x5);
    __m256d prod = _mm256_fmaddsub_pd(are, vx, _mm256_mul_pd(aim, vxsw));
    __m256d vy = _mm256_add_pd(_mm256_loadu_pd(ys + 2 * i), prod);
    _mm256_storeu_pd(ys + 2 * i, vy);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

double dot_d_avx2(std::size_t n, const double* x, const double* y) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
  double s = hsum(acc);
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void gemv_d_avx2(std::size_t rows, std::size_t cols, const double* a,
                 const double* x, double* y) {
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + i * cols;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 4 <= cols; j += 4)
      acc = _mm256_fmadd_pd(_mm256_loadu_pd(row + j), _mm256_loadu_pd(x + j), acc);
    double s = hsum(acc);
    for (; j < cols; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void gemv_dz_avx2(std::size_t rows, std::size_t cols, const double* a,
                  const cplx* x, cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = a + i * cols;
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= cols; j += 2) {
      __m256d va = dup_pairs(_mm_loadu_pd(row + j));
      acc = _mm256_fmadd_pd(va, _mm256_loadu_pd(xs + 2 * j), acc);
    }
    __m128d s = hsum_cplx(acc);
    double sre = _mm_cvtsd_f64(s);
    double sim = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; j < cols; ++j) {
      sre += row[j] * x[j].real();
      sim += row[j] * x[j].imag();
    }
    y[i] = cplx(sre, sim);
  }
}

void gemv_z_avx2(std::size_t rows, std::size_t cols, const cplx* a,
                 const cplx* x, cplx* y) {
  const double* xs = reinterpret_cast<const double*>(x);
  for (std::size_t i = 0; i < rows; ++i) {
    const double* row = reinterpret_cast<const double*>(a + i * cols);
    __m256d acc = _mm256_setzero_pd();
    std::size_t j = 0;
    for (; j + 2 <= cols; j += 2) {
      __m256d va = _mm256_loadu_pd(row + 2 * j);
      __m256d vx = _mm256_loadu_pd(xs + 2 * j);
      __m256d vare = _mm256_movedup_pd(va);
      __m256d vaim = _mm256_permute_pd(va, 0xF);
      __m256d vxsw = _mm256_permute_pd(vx, 0x5);
      acc = _mm256_add_pd(
          acc, _mm256_fmaddsub_pd(vare, vx, _mm256_mul_pd(vaim, vxsw)));
    }
    __m128d s = hsum_cplx(acc);
    double sre = _mm_cvtsd_f64(s);
    double sim = _mm_cvtsd_f64(_mm_unpackhi_pd(s, s));
    for (; j < cols; ++j) {
      const cplx aj = a[i * cols + j];
      sre += aj.real() * x[j].real() - aj.imag() * x[j].imag();
      sim += aj.real() * x[j].imag() + aj.imag() * x[j].real();
    }
    y[i] = cplx(sre, sim);
  }
}

void gemm_d_avx2(std::size_t rows, std::size_t inner, std::size_t cols,
                 const double* a, const double* b, double* c) {
  for (std::size_t i = 0; i < rows * cols; ++i) c[i] = 0.0;
  for (std::size_t i = 0; i < rows; ++i) {
    double* crow = c + i * cols;
    for (std::size_t l = 0; l < inner; ++l) {
      const __m256d val = _mm256_broadcast_sd(a + i * inner + l);
      const double* brow = b + l * cols;
      std::size_t j = 0;
      for (; j + 4 <= cols; j += 4) {
        __m256d vc = _mm256_loadu_pd(crow + j);
        vc = _mm256_fmadd_pd(val, _mm256_loadu_pd(brow + j), vc);
        _mm256_storeu_pd(crow + j, vc);
      }
      const double ail = a[i * inner + l];
      for (; j < cols; ++j) crow[j] += ail * brow[j];
    }
  }
}

constexpr KernelTable kAvx2Table = {
    "avx2",      axpy_d_avx2,  axpy_z_avx2, dot_d_avx2,
    gemv_d_avx2, gemv_dz_avx2, gemv_z_avx2, gemm_d_avx2,
};

}  // namespace

const KernelTable* avx2_table_impl() { return &kAvx2Table; }

}  // namespace oscnet::kern

#endif  // OSCNET_HAVE_AVX2
