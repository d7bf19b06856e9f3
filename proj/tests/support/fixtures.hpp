#pragma once

#include <cmath>
#include <vector>

#include "crossres/drawing.hpp"
#include "crossres/graph.hpp"

namespace fixtures {

using crossres::Drawing;
using crossres::Edge;
using crossres::Graph;
using crossres::GraphPtr;
using crossres::Vec2;
using crossres::make_drawing;

inline GraphPtr triangle() {
  return Graph::make(3, {{0, 1}, {1, 2}, {2, 0}});
}

inline Drawing triangle_drawing() {
  return make_drawing(triangle(), {{0, 0}, {1, 0}, {0, 1}});
}

/// Unit square 0..3 counterclockwise, four sides plus both diagonals.
/// The diagonals (edges 4 and 5) form the only crossing, at 90 degrees.
inline Drawing square_with_diagonals() {
  GraphPtr g = Graph::make(
      4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}, {0, 2}, {1, 3}});
  return make_drawing(g, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

/// Path a-b-c with the given bend angle at b (vertex 1 at the origin).
inline Drawing path_with_bend(double degrees) {
  GraphPtr g = Graph::make(3, {{0, 1}, {1, 2}});
  double rad = degrees * M_PI / 180.0;
  return make_drawing(g, {{1, 0}, {0, 0}, {std::cos(rad), std::sin(rad)}});
}

inline GraphPtr complete_graph(int n) {
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v});
  }
  return Graph::make(n, std::move(edges));
}

/// Star K_{1,4} with leaves on the axes; every gap at the center is 90 deg.
inline Drawing right_angle_star() {
  GraphPtr g = Graph::make(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  return make_drawing(g, {{0, 0}, {1, 0}, {0, 1}, {-1, 0}, {0, -1}});
}

}  // namespace fixtures
