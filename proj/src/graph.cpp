#include "crossres/graph.hpp"

#include <algorithm>
#include <set>
#include <string>
#include <utility>

#include "crossres/errors.hpp"

namespace crossres {

std::shared_ptr<const Graph> Graph::make(int n, std::vector<Edge> edges) {
  if (n < 0) throw Error("graph: negative vertex count");
  std::set<std::pair<int, int>> seen;
  for (const Edge& e : edges) {
    if (e.u < 0 || e.u >= n || e.v < 0 || e.v >= n) {
      throw Error("graph: edge endpoint out of range: " + std::to_string(e.u) +
                  " " + std::to_string(e.v));
    }
    if (e.u == e.v) {
      throw Error("graph: self-loop at vertex " + std::to_string(e.u));
    }
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second) {
      throw Error("graph: duplicate edge " + std::to_string(e.u) + " " +
                  std::to_string(e.v));
    }
  }
  return std::shared_ptr<const Graph>(new Graph(n, std::move(edges)));
}

Graph::Graph(int n, std::vector<Edge> edges)
    : n_(n), edges_(std::move(edges)), adj_(n) {
  for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
    adj_[edges_[e].u].push_back({edges_[e].v, e});
    adj_[edges_[e].v].push_back({edges_[e].u, e});
  }
}

}  // namespace crossres
