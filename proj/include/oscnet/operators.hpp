#pragma once

#include <optional>

#include "oscnet/graph.hpp"
#include "oscnet/linalg.hpp"
#include "oscnet/spectral.hpp"

namespace oscnet {

// 2x2 spinor-slot matrix with exact dyadic entries (0, +-1/2, +-1). All
// products of basis elements stay exact in double arithmetic, so identity
// tests on the algebra use exact equality.
struct Spinor2 {
  double m[2][2];

  friend constexpr Spinor2 operator*(const Spinor2& x, const Spinor2& y) {
    Spinor2 r{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        r.m[i][j] = x.m[i][0] * y.m[0][j] + x.m[i][1] * y.m[1][j];
    return r;
  }
  friend constexpr Spinor2 operator+(const Spinor2& x, const Spinor2& y) {
    Spinor2 r{};
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j) r.m[i][j] = x.m[i][j] + y.m[i][j];
    return r;
  }
  friend constexpr bool operator==(const Spinor2& x, const Spinor2& y) {
    for (int i = 0; i < 2; ++i)
      for (int j = 0; j < 2; ++j)
        if (x.m[i][j] != y.m[i][j]) return false;
    return true;
  }
};

// The nilpotent pair and its products: a^2 = b^2 = 0, ab + ba = e.
struct SpinorBasis {
  Spinor2 a{{{0.5, 0.5}, {-0.5, -0.5}}};
  Spinor2 b{{{0.5, -0.5}, {0.5, -0.5}}};
  Spinor2 e{{{1.0, 0.0}, {0.0, 1.0}}};
  Spinor2 zero{{{0.0, 0.0}, {0.0, 0.0}}};
  Spinor2 ab{{{0.5, -0.5}, {-0.5, 0.5}}};   // a*b, idempotent projector
  Spinor2 ba{{{0.5, 0.5}, {0.5, 0.5}}};     // b*a, idempotent projector
  Spinor2 sz{{{1.0, 0.0}, {0.0, -1.0}}};    // a + b
};

// Laplacian operator family of a graph. Diagonal matrices are stored as
// vectors; L, N, H are dense.
struct OperatorSet {
  std::size_t n = 0;
  Matrix A;           // adjacency
  Vec deg;            // d_i (weighted out-degrees)
  Vec sqrt_deg;       // sqrt(d_i)
  Vec inv_sqrt_deg;   // 1/sqrt(d_i)
  Matrix L;           // D - A
  Matrix N;           // (sqrt D)^-1 L (sqrt D)^-1
  Matrix H;           // (sqrt D)^-1 L, the semi-normalized Laplacian
  std::optional<Matrix> sqrtL;

  Matrix D_matrix() const { return Matrix::diag(deg); }
  Matrix sqrtD_matrix() const { return Matrix::diag(sqrt_deg); }
  Matrix invSqrtD_matrix() const { return Matrix::diag(inv_sqrt_deg); }
};

OperatorSet build_operators(const Graph& g);

// Populate ops.sqrtL from a decomposition of ops.L.
void attach_sqrt(OperatorSet& ops, const SpectralDecomposition& sd);

// Kronecker product M (x) s as a 2n x 2n matrix of 2x2 blocks s * M_ij; the
// spinor slot is the fast index, so states interleave as
// (x+_1, x-_1, x+_2, x-_2, ...).
Matrix kron_spinor(const Matrix& m, const Spinor2& s);

struct Hamiltonian {
  Matrix Hhat;  // 2n x 2n
};

// Builds H (x) a + sqrtD (x) b and cross-checks it entrywise (<= 1e-14)
// against the equivalent form sqrtD (x) diag(+1,-1) - (sqrt D)^-1 A (x) a.
Hamiltonian build_hamiltonian(const OperatorSet& ops,
                              const SpinorBasis& basis = SpinorBasis{});

enum class Parity { even, odd };

// Closed form for Hhat^(2k) (even) and Hhat^(2k+1) (odd):
//   even: (sqrt D)^-1 L^k sqrt D (x) ab + L^k (x) ba
//   odd:  H L^k (x) a + L^k sqrt D (x) b
Matrix hamiltonian_power_closed_form(const OperatorSet& ops, unsigned k,
                                     Parity parity,
                                     const SpinorBasis& basis = SpinorBasis{});

// Off-diagonal entries with magnitude > threshold (sparsity pattern size).
std::size_t nnz_offdiag(const Matrix& m, double threshold = 1e-12);

// True when the off-diagonal zero patterns of a and b coincide.
bool same_offdiag_pattern(const Matrix& a, const Matrix& b,
                          double threshold = 1e-12);

}  // namespace oscnet
