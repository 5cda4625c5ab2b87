#pragma once

#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "oscnet/graph.hpp"
#include "oscnet/linalg.hpp"
#include "oscnet/solvers.hpp"
#include "oscnet/spectral.hpp"

// Shared fixtures and generators for the test suites.

namespace testsupport {

using namespace oscnet;

inline Graph k2() { return Graph::generate(GraphKind::path, 2, 1.0); }
inline Graph p3() { return Graph::generate(GraphKind::path, 3, 1.0); }
inline Graph k3() { return Graph::generate(GraphKind::cycle, 3, 1.0); }

// Connected non-regular 6-node graph: a triangle 1-2-3 bridged through
// node 4 to the leaves 5 and 6. Degrees (2,3,2,3,1,1).
inline Graph sixnode() {
  std::vector<Edge> edges;
  auto both = [&edges](int i, int j) {
    edges.push_back({i, j, 1.0});
    edges.push_back({j, i, 1.0});
  };
  both(0, 1);
  both(0, 2);
  both(1, 2);
  both(1, 3);
  both(3, 4);
  both(3, 5);
  return Graph::from_edges(6, edges, /*directed=*/false);
}

inline std::string sixnode_edge_list() {
  return "1 2 1.0\n1 3 1.0\n2 3 1.0\n2 4 1.0\n4 5 1.0\n4 6 1.0\n";
}

// Random connected undirected graph: a random spanning tree plus extra
// edges, weights in [0.5, 2].
inline Graph random_connected_graph(int n, std::mt19937& rng) {
  std::uniform_real_distribution<double> weight(0.5, 2.0);
  std::vector<Edge> edges;
  std::set<std::pair<int, int>> used;
  auto add = [&](int i, int j) {
    if (i == j) return false;
    if (i > j) std::swap(i, j);
    if (!used.insert({i, j}).second) return false;
    const double w = weight(rng);
    edges.push_back({i, j, w});
    edges.push_back({j, i, w});
    return true;
  };
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    add(parent(rng), v);
  }
  const int extras = n / 2;
  std::uniform_int_distribution<int> any(0, n - 1);
  for (int e = 0; e < extras; ++e) add(any(rng), any(rng));
  return Graph::from_edges(n, edges, /*directed=*/false);
}

inline CVec random_complex_vector(std::size_t n, std::mt19937& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CVec v(n);
  for (auto& c : v) c = cplx(dist(rng), dist(rng));
  return v;
}

inline SpinorState random_state(std::size_t n, std::mt19937& rng) {
  SpinorState s;
  s.plus = random_complex_vector(n, rng);
  s.minus = random_complex_vector(n, rng);
  return s;
}

// Random state with the zero-mode drift channel removed: the P^-1 sqrtD
// projection of (x+ - x-) onto each zero mode is zeroed, so the closed-form
// fermion solution coincides with exp(-i Hhat t) exactly.
inline SpinorState random_drift_free_state(const SpectralDecomposition& sd,
                                           const Vec& sqrt_deg,
                                           const Vec& inv_sqrt_deg,
                                           std::mt19937& rng) {
  const std::size_t n = sd.size();
  SpinorState s = random_state(n, rng);
  for (std::size_t mu = 0; mu < n; ++mu) {
    if (!sd.is_zero_mode(mu)) continue;
    cplx proj(0, 0);
    for (std::size_t i = 0; i < n; ++i)
      proj += sd.Pinv(mu, i) * sqrt_deg[i] * (s.plus[i] - s.minus[i]);
    for (std::size_t i = 0; i < n; ++i)
      s.plus[i] -= proj * sd.P(i, mu) * inv_sqrt_deg[i];
  }
  return s;
}

}  // namespace testsupport
