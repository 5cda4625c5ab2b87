#include "oscnet/operators.hpp"

#include <cmath>
#include <string>

#include "oscnet/errors.hpp"

namespace oscnet {

OperatorSet build_operators(const Graph& g) {
  OperatorSet ops;
  ops.n = static_cast<std::size_t>(g.node_count());
  ops.A = g.adjacency();
  ops.deg = g.degrees();

  ops.sqrt_deg.resize(ops.n);
  ops.inv_sqrt_deg.resize(ops.n);
  for (std::size_t i = 0; i < ops.n; ++i) {
    ops.sqrt_deg[i] = std::sqrt(ops.deg[i]);
    ops.inv_sqrt_deg[i] = 1.0 / ops.sqrt_deg[i];
  }

  ops.L = Matrix(ops.n, ops.n);
  for (std::size_t i = 0; i < ops.n; ++i) {
    for (std::size_t j = 0; j < ops.n; ++j)
      ops.L(i, j) = (i == j) ? ops.deg[i] : -ops.A(i, j);
  }

  ops.H = ops.L;
  ops.H.scale_rows(ops.inv_sqrt_deg);

  ops.N = ops.H;
  ops.N.scale_cols(ops.inv_sqrt_deg);

  return ops;
}

void attach_sqrt(OperatorSet& ops, const SpectralDecomposition& sd) {
  if (sd.size() != ops.n)
    throw ValidationError("attach_sqrt: decomposition size mismatch");
  ops.sqrtL = sqrt_from_spectrum(sd);
}

Matrix kron_spinor(const Matrix& m, const Spinor2& s) {
  const std::size_t n = m.rows();
  Matrix k(2 * n, 2 * m.cols());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      const double v = m(i, j);
      if (v == 0.0) continue;
      for (int p = 0; p < 2; ++p)
        for (int q = 0; q < 2; ++q) k(2 * i + p, 2 * j + q) = v * s.m[p][q];
    }
  return k;
}

Hamiltonian build_hamiltonian(const OperatorSet& ops, const SpinorBasis& basis) {
  // H (x) a + sqrtD (x) b  -- the returned form
  Matrix spinor_form = add(kron_spinor(ops.H, basis.a),
                           kron_spinor(ops.sqrtD_matrix(), basis.b));

  // sqrtD (x) diag(+1,-1) - (sqrt D)^-1 A (x) a  -- cross-check route
  Matrix scaled_adj = ops.A;
  scaled_adj.scale_rows(ops.inv_sqrt_deg);
  Matrix block_form = subtract(kron_spinor(ops.sqrtD_matrix(), basis.sz),
                               kron_spinor(scaled_adj, basis.a));

  const double err = max_abs_diff(spinor_form, block_form);
  if (err > 1e-14)
    throw ValidationError("Hamiltonian construction routes disagree by " +
                          std::to_string(err));
  return Hamiltonian{std::move(spinor_form)};
}

namespace {

Matrix matrix_power(const Matrix& m, unsigned k) {
  Matrix r = Matrix::identity(m.rows());
  for (unsigned i = 0; i < k; ++i) r = matmul(r, m);
  return r;
}

}  // namespace

Matrix hamiltonian_power_closed_form(const OperatorSet& ops, unsigned k,
                                     Parity parity, const SpinorBasis& basis) {
  const Matrix lk = matrix_power(ops.L, k);
  if (parity == Parity::even) {
    Matrix conj = lk;               // (sqrt D)^-1 L^k sqrt D
    conj.scale_rows(ops.inv_sqrt_deg);
    conj.scale_cols(ops.sqrt_deg);
    return add(kron_spinor(conj, basis.ab), kron_spinor(lk, basis.ba));
  }
  const Matrix hlk = matmul(ops.H, lk);  // H L^k
  Matrix lk_sqrtd = lk;                  // L^k sqrt D
  lk_sqrtd.scale_cols(ops.sqrt_deg);
  return add(kron_spinor(hlk, basis.a), kron_spinor(lk_sqrtd, basis.b));
}

std::size_t nnz_offdiag(const Matrix& m, double threshold) {
  std::size_t count = 0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && std::abs(m(i, j)) > threshold) ++count;
  return count;
}

bool same_offdiag_pattern(const Matrix& a, const Matrix& b, double threshold) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (i == j) continue;
      if ((std::abs(a(i, j)) > threshold) != (std::abs(b(i, j)) > threshold))
        return false;
    }
  return true;
}

}  // namespace oscnet
