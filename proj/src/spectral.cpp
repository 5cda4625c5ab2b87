#include "oscnet/spectral.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "oscnet/errors.hpp"

namespace oscnet {

namespace {

using EMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::Map<const EMatrix> as_eigen(const Matrix& m) {
  return {m.data(), static_cast<Eigen::Index>(m.rows()),
          static_cast<Eigen::Index>(m.cols())};
}

Matrix from_eigen(const EMatrix& e) {
  Matrix m(static_cast<std::size_t>(e.rows()), static_cast<std::size_t>(e.cols()));
  EMatrix::Map(m.data(), e.rows(), e.cols()) = e;
  return m;
}

// unit-norm columns, first component with |v_i| > 1e-12 made positive
void normalize_columns(EMatrix& p) {
  for (Eigen::Index j = 0; j < p.cols(); ++j) {
    auto col = p.col(j);
    const double norm = col.norm();
    if (norm > 0.0) col /= norm;
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      if (std::abs(col(i)) > 1e-12) {
        if (col(i) < 0.0) col = -col;
        break;
      }
    }
  }
}

void fill_derived(SpectralDecomposition& sd) {
  const std::size_t n = sd.lambda.size();
  sd.omega.assign(n, 0.0);
  sd.mho.assign(n, 0.0);
  for (std::size_t mu = 0; mu < n; ++mu) {
    if (sd.lambda[mu] > sd.zero_tol) {
      sd.omega[mu] = std::sqrt(sd.lambda[mu]);
      sd.mho[mu] = 1.0 / sd.omega[mu];
    }
  }
}

void check_reconstruction(const SpectralDecomposition& sd, const Matrix& l) {
  Matrix scaled = sd.Pinv;
  scaled.scale_rows(sd.lambda);
  const Matrix rec = matmul(sd.P, scaled);
  double err = 0.0;
  for (std::size_t i = 0; i < rec.rows() * rec.cols(); ++i) {
    const double d = std::abs(rec.data()[i] - l.data()[i]);
    if (!std::isfinite(d)) {
      err = d;  // singular or overflowing inverse
      break;
    }
    err = std::max(err, d);
  }
  const double tol = 1e-10 * (1.0 + max_abs(l));
  if (!(err <= tol))
    throw IllConditionedBasisError(
        "eigenbasis reconstruction error " + std::to_string(err) +
        " exceeds tolerance " + std::to_string(tol));
}

}  // namespace

SpectralDecomposition eigendecompose(const Matrix& L, bool symmetric,
                                     double zero_tol) {
  if (L.rows() != L.cols()) throw ValidationError("eigendecompose: matrix not square");
  const std::size_t n = L.rows();

  SpectralDecomposition sd;
  sd.zero_tol = zero_tol;
  sd.symmetric = symmetric;

  if (symmetric) {
    const Matrix lt = L.transposed();
    if (max_abs_diff(L, lt) > 1e-12)
      throw ValidationError("eigendecompose: symmetric flag set but L != L^T");

    Eigen::SelfAdjointEigenSolver<EMatrix> solver(as_eigen(L));
    if (solver.info() != Eigen::Success)
      throw IllConditionedBasisError("symmetric eigensolver failed to converge");

    EMatrix p = solver.eigenvectors();  // ascending eigenvalues already
    normalize_columns(p);
    sd.P = from_eigen(p);
    sd.Pinv = sd.P.transposed();
    sd.lambda.assign(solver.eigenvalues().data(), solver.eigenvalues().data() + n);
  } else {
    Eigen::EigenSolver<EMatrix> solver(as_eigen(L));
    if (solver.info() != Eigen::Success)
      throw IllConditionedBasisError("general eigensolver failed to converge");

    const auto& vals = solver.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) {
      if (std::abs(vals(i).imag()) > zero_tol * (1.0 + std::abs(vals(i))))
        throw NonRealSpectrumError(
            "Laplacian spectrum is not real: eigenvalue " +
            std::to_string(vals(i).real()) + " + " +
            std::to_string(vals(i).imag()) + "i");
    }

    // Real spectrum: rotate each eigenvector to a real representative.
    EMatrix p(n, n);
    for (Eigen::Index j = 0; j < vals.size(); ++j) {
      Eigen::VectorXcd col = solver.eigenvectors().col(j);
      Eigen::Index imax = 0;
      col.cwiseAbs().maxCoeff(&imax);
      const std::complex<double> pivot = col(imax);
      if (std::abs(pivot) > 0.0) col *= std::abs(pivot) / pivot;
      if (col.imag().cwiseAbs().maxCoeff() > 1e-8)
        throw NonRealSpectrumError(
            "eigenvector for a real eigenvalue has a significant imaginary part");
      p.col(j) = col.real();
    }

    std::vector<Eigen::Index> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&vals](auto a, auto b) {
      return vals(a).real() < vals(b).real();
    });

    EMatrix sorted(n, n);
    sd.lambda.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      sorted.col(static_cast<Eigen::Index>(j)) = p.col(order[j]);
      sd.lambda[j] = vals(order[j]).real();
    }
    normalize_columns(sorted);

    Eigen::PartialPivLU<EMatrix> lu(sorted);
    sd.P = from_eigen(sorted);
    sd.Pinv = from_eigen(lu.inverse());
  }

  fill_derived(sd);
  check_reconstruction(sd, L);
  return sd;
}

namespace {

Matrix apply_diag_function(const SpectralDecomposition& sd, const Vec& f) {
  Matrix scaled = sd.Pinv;
  scaled.scale_rows(f);
  return matmul(sd.P, scaled);
}

}  // namespace

Matrix matrix_trig_cos(const SpectralDecomposition& sd, double t) {
  Vec f(sd.size());
  for (std::size_t mu = 0; mu < sd.size(); ++mu) f[mu] = std::cos(sd.omega[mu] * t);
  return apply_diag_function(sd, f);
}

Matrix matrix_trig_sin(const SpectralDecomposition& sd, double t) {
  Vec f(sd.size());
  for (std::size_t mu = 0; mu < sd.size(); ++mu) f[mu] = std::sin(sd.omega[mu] * t);
  return apply_diag_function(sd, f);
}

CMatrix matrix_trig_exp(const SpectralDecomposition& sd, double t, ExpSign sign) {
  const Matrix c = matrix_trig_cos(sd, t);
  const Matrix s = matrix_trig_sin(sd, t);
  const double si = sign == ExpSign::minus_i ? -1.0 : 1.0;
  CMatrix e(c.rows(), c.cols());
  for (std::size_t i = 0; i < c.rows(); ++i)
    for (std::size_t j = 0; j < c.cols(); ++j)
      e(i, j) = cplx(c(i, j), si * s(i, j));
  return e;
}

Matrix sqrt_from_spectrum(const SpectralDecomposition& sd) {
  for (std::size_t mu = 0; mu < sd.size(); ++mu) {
    if (sd.lambda[mu] < -sd.zero_tol)
      throw NegativeEigenvalueError("eigenvalue " + std::to_string(sd.lambda[mu]) +
                                    " below -zero_tol; no real square root");
  }
  return apply_diag_function(sd, sd.omega);
}

}  // namespace oscnet
