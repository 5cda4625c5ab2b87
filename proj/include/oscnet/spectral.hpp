#pragma once

#include "oscnet/linalg.hpp"

namespace oscnet {

inline constexpr double kDefaultZeroTol = 1e-9;

// Eigendecomposition of a Laplacian-family matrix L = P diag(lambda) P^-1.
//
// Eigenvalues are sorted ascending. Modes with lambda <= zero_tol are
// treated as zero modes: their omega and mho entries are exactly 0. For all
// other modes omega = sqrt(lambda) and mho = 1/omega.
struct SpectralDecomposition {
  Matrix P;     // eigenvectors as columns, unit norm, sign-normalized
  Matrix Pinv;  // P^-1 (equals P^T for symmetric input)
  Vec lambda;
  Vec omega;
  Vec mho;
  double zero_tol = kDefaultZeroTol;
  bool symmetric = false;

  std::size_t size() const { return lambda.size(); }
  bool is_zero_mode(std::size_t mu) const { return lambda[mu] <= zero_tol; }
};

// Dense eigendecomposition. With `symmetric` set the input must satisfy
// L = L^T within 1e-12 and an orthonormal eigenbasis is produced. Otherwise
// a general solver runs and the spectrum must be real: any eigenvalue with
// |Im| > zero_tol*(1+|lambda|) raises NonRealSpectrumError. A decomposition
// whose P*diag(lambda)*P^-1 misses L by more than 1e-10*(1+max|L|) raises
// IllConditionedBasisError.
SpectralDecomposition eigendecompose(const Matrix& L, bool symmetric,
                                     double zero_tol = kDefaultZeroTol);

// P f(Omega t) P^-1 with f applied to the diagonal frequencies.
Matrix matrix_trig_cos(const SpectralDecomposition& sd, double t);
Matrix matrix_trig_sin(const SpectralDecomposition& sd, double t);

enum class ExpSign { minus_i, plus_i };

// P exp(-+ i Omega t) P^-1, assembled as cos -+ i sin of the above so the
// real/imaginary parts match matrix_trig_cos/sin entry for entry.
CMatrix matrix_trig_exp(const SpectralDecomposition& sd, double t, ExpSign sign);

// P diag(omega) P^-1, the semi-positive square root. Raises
// NegativeEigenvalueError when some lambda < -zero_tol.
Matrix sqrt_from_spectrum(const SpectralDecomposition& sd);

}  // namespace oscnet
