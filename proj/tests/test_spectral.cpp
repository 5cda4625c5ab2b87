#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oscnet/errors.hpp"
#include "oscnet/operators.hpp"
#include "oscnet/spectral.hpp"
#include "support.hpp"

using namespace oscnet;

namespace {

Matrix laplacian_of(const Graph& g) { return build_operators(g).L; }

// Hand-written spectral synthesis sum_mu omega_mu v_mu v_mu^T from known
// eigenpairs; independent of eigendecompose / sqrt_from_spectrum.
Matrix synth_sqrt(const std::vector<double>& omegas,
                  const std::vector<Vec>& vecs) {
  const std::size_t n = vecs[0].size();
  Matrix m(n, n);
  for (std::size_t mu = 0; mu < omegas.size(); ++mu)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) += omegas[mu] * vecs[mu][i] * vecs[mu][j];
  return m;
}

}  // namespace

TEST_CASE("two-node graph eigenpairs") {
  const SpectralDecomposition sd = eigendecompose(laplacian_of(testsupport::k2()), true);
  REQUIRE(sd.size() == 2);
  CHECK(std::abs(sd.lambda[0]) < 1e-10);
  CHECK(sd.lambda[1] == doctest::Approx(2.0));
  CHECK(sd.omega[0] == 0.0);  // clamped exactly on the zero mode
  CHECK(sd.omega[1] == doctest::Approx(std::sqrt(2.0)));
  CHECK(sd.mho[0] == 0.0);
  CHECK(sd.mho[1] == doctest::Approx(1.0 / std::sqrt(2.0)));
}

TEST_CASE("three-node path eigenvalues are 0, 1, 3") {
  const SpectralDecomposition sd = eigendecompose(laplacian_of(testsupport::p3()), true);
  REQUIRE(sd.size() == 3);
  CHECK(std::abs(sd.lambda[0]) < 1e-10);
  CHECK(sd.lambda[1] == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(sd.lambda[2] == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("1x1 zero matrix decomposes to the zero spectrum") {
  Matrix z(1, 1);
  const SpectralDecomposition sd = eigendecompose(z, true);
  CHECK(sd.lambda[0] == doctest::Approx(0.0));
  CHECK(sd.omega[0] == 0.0);
  CHECK(sd.mho[0] == 0.0);
  CHECK(max_abs_diff(sqrt_from_spectrum(sd), z) == 0.0);
}

TEST_CASE("mho times omega is exactly zero or one within 1e-12") {
  std::mt19937 rng(101);
  for (int trial = 0; trial < 10; ++trial) {
    const Graph g = testsupport::random_connected_graph(15, rng);
    const SpectralDecomposition sd = eigendecompose(laplacian_of(g), true);
    for (std::size_t mu = 0; mu < sd.size(); ++mu) {
      const double prod = sd.mho[mu] * sd.omega[mu];
      const bool zero_or_one = std::abs(prod) <= 1e-12 || std::abs(prod - 1.0) <= 1e-12;
      CHECK(zero_or_one);
      if (sd.is_zero_mode(mu)) CHECK(prod == 0.0);
    }
  }
}

TEST_CASE("reconstruction error stays within tolerance on random graphs") {
  std::mt19937 rng(202);
  for (int n : {5, 12, 25, 50}) {
    const Graph g = testsupport::random_connected_graph(n, rng);
    const Matrix l = laplacian_of(g);
    const SpectralDecomposition sd = eigendecompose(l, true);
    Matrix scaled = sd.Pinv;
    scaled.scale_rows(sd.lambda);
    CHECK(max_abs_diff(matmul(sd.P, scaled), l) <= 1e-10 * (1.0 + max_abs(l)));
    // orthonormal basis for symmetric input
    CHECK(max_abs_diff(matmul(sd.P, sd.Pinv), Matrix::identity(sd.size())) < 1e-12);
  }
}

TEST_CASE("eigenvalues are ascending and the sign convention is deterministic") {
  std::mt19937 rng(303);
  const Graph g = testsupport::random_connected_graph(20, rng);
  const Matrix l = laplacian_of(g);
  const SpectralDecomposition a = eigendecompose(l, true);
  const SpectralDecomposition b = eigendecompose(l, true);
  for (std::size_t mu = 1; mu < a.size(); ++mu)
    CHECK(a.lambda[mu] >= a.lambda[mu - 1]);
  CHECK(max_abs_diff(a.P, b.P) == 0.0);
  for (std::size_t j = 0; j < a.size(); ++j) {
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (std::abs(a.P(i, j)) > 1e-12) {
        CHECK(a.P(i, j) > 0.0);
        break;
      }
    }
  }
}

TEST_CASE("symmetric flag rejects asymmetric input") {
  Matrix m(2, 2);
  m(0, 1) = 1.0;
  CHECK_THROWS_AS(eigendecompose(m, true), ValidationError);
}

TEST_CASE("directed graph with real spectrum decomposes; complex spectrum throws") {
  // tree with asymmetric two-way weights: similar to a symmetric matrix,
  // spectrum is real
  Matrix real_spec(3, 3);
  const double entries[9] = {2, -2, 0, -1, 2, -1, 0, -2, 2};
  for (int i = 0; i < 9; ++i) real_spec.data()[i] = entries[i];
  const SpectralDecomposition sd = eigendecompose(real_spec, false);
  CHECK(std::abs(sd.lambda[0]) < 1e-9);
  CHECK(sd.lambda[1] == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(sd.lambda[2] == doctest::Approx(4.0).epsilon(1e-9));

  // directed 3-cycle: eigenvalues 0, 3/2 +- i sqrt(3)/2
  Matrix cyc(3, 3);
  const double centries[9] = {1, -1, 0, 0, 1, -1, -1, 0, 1};
  for (int i = 0; i < 9; ++i) cyc.data()[i] = centries[i];
  CHECK_THROWS_AS(eigendecompose(cyc, false), NonRealSpectrumError);
}

TEST_CASE("matrix_trig at t=0 gives identity and zero") {
  std::mt19937 rng(404);
  const Graph g = testsupport::random_connected_graph(9, rng);
  const SpectralDecomposition sd = eigendecompose(laplacian_of(g), true);
  CHECK(max_abs_diff(matrix_trig_cos(sd, 0.0), Matrix::identity(9)) < 1e-12);
  CHECK(max_abs(matrix_trig_sin(sd, 0.0)) < 1e-12);
}

TEST_CASE("exp kind equals cos -+ i sin entry for entry") {
  std::mt19937 rng(505);
  const Graph g = testsupport::random_connected_graph(8, rng);
  const SpectralDecomposition sd = eigendecompose(laplacian_of(g), true);
  const double t = 1.37;
  const Matrix c = matrix_trig_cos(sd, t);
  const Matrix s = matrix_trig_sin(sd, t);
  const CMatrix em = matrix_trig_exp(sd, t, ExpSign::minus_i);
  const CMatrix ep = matrix_trig_exp(sd, t, ExpSign::plus_i);
  for (std::size_t i = 0; i < 8; ++i)
    for (std::size_t j = 0; j < 8; ++j) {
      CHECK(std::abs(em(i, j) - cplx(c(i, j), -s(i, j))) <= 1e-14);
      CHECK(std::abs(ep(i, j) - cplx(c(i, j), s(i, j))) <= 1e-14);
    }
}

TEST_CASE("cos^2 + sin^2 identity on symmetric fixtures") {
  std::mt19937 rng(606);
  for (int trial = 0; trial < 5; ++trial) {
    const Graph g = testsupport::random_connected_graph(10, rng);
    const SpectralDecomposition sd = eigendecompose(laplacian_of(g), true);
    const double t = 0.9 + 0.3 * trial;
    const Matrix c = matrix_trig_cos(sd, t);
    const Matrix s = matrix_trig_sin(sd, t);
    const Matrix sum = add(matmul(c, c), matmul(s, s));
    CHECK(max_abs_diff(sum, Matrix::identity(10)) < 1e-10);
  }
}

TEST_CASE("exp_minus_i rotates the two-node impulse onto the second node") {
  const SpectralDecomposition sd = eigendecompose(laplacian_of(testsupport::k2()), true);
  const double t = M_PI / std::sqrt(2.0);
  const CMatrix e = matrix_trig_exp(sd, t, ExpSign::minus_i);
  const CVec out = matvec(e, CVec{cplx(1, 0), cplx(0, 0)});
  CHECK(std::abs(out[0]) < 1e-12);
  CHECK(std::abs(out[1] - cplx(1, 0)) < 1e-12);
}

TEST_CASE("square root of the two-node Laplacian is L/sqrt(2)") {
  const Matrix l = laplacian_of(testsupport::k2());
  const SpectralDecomposition sd = eigendecompose(l, true);
  const Matrix sq = sqrt_from_spectrum(sd);
  const double v = 1.0 / std::sqrt(2.0);
  CHECK(sq(0, 0) == doctest::Approx(v).epsilon(1e-10));
  CHECK(sq(0, 1) == doctest::Approx(-v).epsilon(1e-10));
  CHECK(max_abs_diff(matmul(sq, sq), l) < 1e-10);
}

TEST_CASE("square root of the path Laplacian matches hand-built eigenpairs") {
  const Matrix l = laplacian_of(testsupport::p3());
  const SpectralDecomposition sd = eigendecompose(l, true);
  const Matrix sq = sqrt_from_spectrum(sd);

  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
  const Matrix expected = synth_sqrt(
      {1.0, r3},
      {{1.0 / r2, 0.0, -1.0 / r2}, {1.0 / r6, -2.0 / r6, 1.0 / r6}});
  CHECK(max_abs_diff(sq, expected) < 1e-10);
  CHECK(sq(0, 2) == doctest::Approx(-0.21132).epsilon(1e-4));
  CHECK(max_abs_diff(matmul(sq, sq), l) < 1e-10);
}

TEST_CASE("squared square root reproduces L on random graphs") {
  std::mt19937 rng(707);
  for (int trial = 0; trial < 8; ++trial) {
    const Graph g = testsupport::random_connected_graph(4 + 5 * trial % 30, rng);
    const Matrix l = laplacian_of(g);
    const SpectralDecomposition sd = eigendecompose(l, true);
    const Matrix sq = sqrt_from_spectrum(sd);
    CHECK(max_abs_diff(matmul(sq, sq), l) <= 1e-10 * (1.0 + max_abs(l)));
  }
}

TEST_CASE("a defective matrix is rejected as ill-conditioned") {
  // single 2x2 Jordan block: eigenvalues real but no eigenbasis
  Matrix m(2, 2);
  m(0, 0) = 1.0;
  m(0, 1) = 1.0;
  m(1, 1) = 1.0;
  CHECK_THROWS_AS(eigendecompose(m, false), IllConditionedBasisError);
}

TEST_CASE("negative eigenvalues beyond tolerance are rejected for sqrt") {
  Matrix m(2, 2);
  m(0, 0) = -1.0;
  m(1, 1) = 1.0;
  const SpectralDecomposition sd = eigendecompose(m, true);
  CHECK_THROWS_AS(sqrt_from_spectrum(sd), NegativeEigenvalueError);
}
