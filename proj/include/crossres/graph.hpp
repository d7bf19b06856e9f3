#pragma once

#include <memory>
#include <vector>

namespace crossres {

struct Edge {
  int u = -1;
  int v = -1;
};

struct AdjEntry {
  int neighbor;
  int edge;  // index into Graph::edges()
};

/// Immutable simple undirected graph over dense vertex ids 0..n-1.
/// Construction rejects self-loops, duplicate edges (unordered comparison)
/// and out-of-range endpoints. Safe to share across threads.
class Graph {
 public:
  static std::shared_ptr<const Graph> make(int n, std::vector<Edge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<AdjEntry>& neighbors(int v) const { return adj_[v]; }
  int degree(int v) const { return static_cast<int>(adj_[v].size()); }

  bool edges_adjacent(int e, int f) const {
    const Edge& a = edges_[e];
    const Edge& b = edges_[f];
    return a.u == b.u || a.u == b.v || a.v == b.u || a.v == b.v;
  }

  bool incident(int e, int vertex) const {
    return edges_[e].u == vertex || edges_[e].v == vertex;
  }

 private:
  Graph(int n, std::vector<Edge> edges);

  int n_;
  std::vector<Edge> edges_;
  std::vector<std::vector<AdjEntry>> adj_;
};

using GraphPtr = std::shared_ptr<const Graph>;

}  // namespace crossres
