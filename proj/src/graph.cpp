#include "oscnet/graph.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include "oscnet/errors.hpp"

namespace oscnet {

GraphKind graph_kind_from_string(const std::string& name) {
  if (name == "path") return GraphKind::path;
  if (name == "cycle") return GraphKind::cycle;
  if (name == "complete") return GraphKind::complete;
  if (name == "d_regular_ring") return GraphKind::d_regular_ring;
  throw ValidationError("unknown graph kind: '" + name + "'");
}

Graph Graph::from_edges(int node_count, std::vector<Edge> directed_edges,
                        bool directed) {
  if (node_count < 1) throw ValidationError("graph must have at least one node");

  std::set<std::pair<int, int>> seen;
  for (const Edge& e : directed_edges) {
    if (e.src < 0 || e.src >= node_count || e.dst < 0 || e.dst >= node_count)
      throw ValidationError("edge endpoint out of range: " +
                            std::to_string(e.src + 1) + " -> " +
                            std::to_string(e.dst + 1));
    if (e.src == e.dst)
      throw ValidationError("self-loop at node " + std::to_string(e.src + 1));
    if (!(e.weight > 0.0))
      throw ValidationError("non-positive weight on edge " +
                            std::to_string(e.src + 1) + " -> " +
                            std::to_string(e.dst + 1));
    if (!seen.insert({e.src, e.dst}).second)
      throw ValidationError("duplicate edge " + std::to_string(e.src + 1) +
                            " -> " + std::to_string(e.dst + 1));
  }
  if (!directed) {
    for (const Edge& e : directed_edges) {
      if (seen.find({e.dst, e.src}) == seen.end())
        throw ValidationError("undirected graph missing mirror of edge " +
                              std::to_string(e.src + 1) + " -> " +
                              std::to_string(e.dst + 1));
    }
  }

  Graph g;
  g.n_ = node_count;
  g.directed_ = directed;
  g.edges_ = std::move(directed_edges);
  std::sort(g.edges_.begin(), g.edges_.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.src, a.dst) < std::tie(b.src, b.dst);
  });

  g.degrees_.assign(static_cast<std::size_t>(node_count), 0.0);
  for (const Edge& e : g.edges_) g.degrees_[static_cast<std::size_t>(e.src)] += e.weight;
  for (int i = 0; i < node_count; ++i) {
    if (!(g.degrees_[static_cast<std::size_t>(i)] > 0.0))
      throw ValidationError("isolated node " + std::to_string(i + 1) +
                            " (weighted degree is zero)");
  }
  return g;
}

Graph Graph::parse_edge_list(std::istream& in, bool directed,
                             const std::string& origin) {
  std::vector<Edge> edges;
  int max_id = 0;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    std::istringstream ls(line);
    long src = 0, dst = 0;
    double w = 0.0;
    if (!(ls >> src >> dst >> w)) {
      throw ParseError(origin + ":" + std::to_string(lineno) +
                       ": expected 'src dst weight'");
    }
    std::string extra;
    if (ls >> extra)
      throw ParseError(origin + ":" + std::to_string(lineno) +
                       ": trailing token '" + extra + "'");
    if (src < 1 || dst < 1)
      throw ParseError(origin + ":" + std::to_string(lineno) +
                       ": node ids are 1-based positive integers");
    edges.push_back({static_cast<int>(src - 1), static_cast<int>(dst - 1), w});
    max_id = std::max(max_id, static_cast<int>(std::max(src, dst)));
    if (!directed) {
      edges.push_back({static_cast<int>(dst - 1), static_cast<int>(src - 1), w});
    }
  }
  if (edges.empty()) throw ParseError(origin + ": no edges found");
  return from_edges(max_id, std::move(edges), directed);
}

Graph Graph::load_edge_list(const std::string& path, bool directed) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open edge list file: " + path);
  return parse_edge_list(in, directed, path);
}

Graph Graph::generate(GraphKind kind, int n, double weight, int ring_degree) {
  if (n < 2) throw ValidationError("generate: n must be >= 2");
  if (!(weight > 0.0)) throw ValidationError("generate: weight must be > 0");

  std::vector<Edge> edges;
  auto both = [&edges, weight](int i, int j) {
    edges.push_back({i, j, weight});
    edges.push_back({j, i, weight});
  };

  switch (kind) {
    case GraphKind::path:
      for (int i = 0; i + 1 < n; ++i) both(i, i + 1);
      break;
    case GraphKind::cycle:
      if (n == 2) throw ValidationError("generate: cycle needs n >= 3");
      for (int i = 0; i < n; ++i) both(i, (i + 1) % n);
      break;
    case GraphKind::complete:
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) both(i, j);
      break;
    case GraphKind::d_regular_ring: {
      if (ring_degree <= 0 || ring_degree % 2 != 0 || ring_degree >= n)
        throw ValidationError(
            "generate: d_regular_ring degree must be even, positive and < n");
      for (int i = 0; i < n; ++i)
        for (int k = 1; k <= ring_degree / 2; ++k) {
          const int j = (i + k) % n;
          both(i, j);
        }
      break;
    }
  }
  return from_edges(n, std::move(edges), /*directed=*/false);
}

Matrix Graph::adjacency() const {
  Matrix a(static_cast<std::size_t>(n_), static_cast<std::size_t>(n_));
  for (const Edge& e : edges_)
    a(static_cast<std::size_t>(e.src), static_cast<std::size_t>(e.dst)) = e.weight;
  return a;
}

std::string Graph::to_edge_list() const {
  std::ostringstream out;
  char buf[64];
  for (const Edge& e : edges_) {
    if (!directed_ && e.src > e.dst) continue;  // one line per undirected edge
    std::snprintf(buf, sizeof(buf), "%.17g", e.weight);
    out << (e.src + 1) << ' ' << (e.dst + 1) << ' ' << buf << '\n';
  }
  return out.str();
}

}  // namespace oscnet
