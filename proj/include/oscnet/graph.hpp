#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "oscnet/linalg.hpp"

namespace oscnet {

// One directed link src -> dst with positive weight. Node ids are 0-based
// internally; files and the CLI use 1-based ids.
struct Edge {
  int src = 0;
  int dst = 0;
  double weight = 1.0;
};

enum class GraphKind { path, cycle, complete, d_regular_ring };

GraphKind graph_kind_from_string(const std::string& name);

// Immutable weighted graph. For undirected graphs the internal edge list is
// symmetric: (i,j,w) is stored together with (j,i,w). All invariants
// (positive weights, no self-loops, no duplicates, no isolated nodes) are
// enforced at construction.
class Graph {
 public:
  static Graph from_edges(int node_count, std::vector<Edge> directed_edges,
                          bool directed);

  // "src dst weight" per line, '#' starts a comment; undirected files list
  // each edge once and are mirrored on load.
  static Graph load_edge_list(const std::string& path, bool directed);
  static Graph parse_edge_list(std::istream& in, bool directed,
                               const std::string& origin);

  static Graph generate(GraphKind kind, int n, double weight,
                        int ring_degree = 2);

  int node_count() const { return n_; }
  bool directed() const { return directed_; }
  const std::vector<Edge>& edges() const { return edges_; }

  // weighted out-degrees d_i = sum of outgoing edge weights
  const Vec& degrees() const { return degrees_; }

  Matrix adjacency() const;

  // Inverse of load_edge_list: 1-based ids, undirected edges emitted once
  // with src < dst, deterministic order.
  std::string to_edge_list() const;

 private:
  Graph() = default;

  int n_ = 0;
  bool directed_ = false;
  std::vector<Edge> edges_;
  Vec degrees_;
};

}  // namespace oscnet
