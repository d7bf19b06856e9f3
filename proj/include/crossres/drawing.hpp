#pragma once

#include <string>
#include <vector>

#include "crossres/geometry.hpp"
#include "crossres/graph.hpp"

namespace crossres {

/// Absolute distance (drawing units) below which points count as coincident
/// and a vertex counts as lying on an edge.
inline constexpr double kGeometricEpsilon = 1e-9;

/// A straight-line drawing: one position per vertex of an immutable graph.
/// Value type; the optimizer works on its own copy.
struct Drawing {
  GraphPtr graph;
  std::vector<Vec2> positions;

  Vec2 position(int v) const { return positions[v]; }
  Segment segment(int e) const {
    return {positions[graph->edge(e).u], positions[graph->edge(e).v]};
  }
};

Drawing make_drawing(GraphPtr graph, std::vector<Vec2> positions);

struct BoundingBox {
  double min_x = 0, min_y = 0, max_x = 0, max_y = 0;
  double width() const { return max_x - min_x; }
  double height() const { return max_y - min_y; }
};

/// Tight axis-aligned box over the vertex positions. Throws on an empty
/// drawing.
BoundingBox bounding_box(const Drawing& drawing);

enum class ViolationKind {
  nonfinite_position,
  coincident_vertices,   // a, b vertex ids
  edge_overlap,          // a, b edge ids (zero-angle overlap)
  vertex_on_edge,        // a vertex id, b edge id
};

struct Violation {
  ViolationKind kind;
  int a = -1;
  int b = -1;
};

std::string to_string(const Violation& violation);

/// Checks the drawing invariants: finite coordinates, pairwise distinct
/// vertices, no zero-angle edge overlaps (collinear overlap or touching
/// between non-adjacent edges, collinear overlap between adjacent ones) and
/// no vertex in the relative interior of a non-incident edge. Returns all
/// violations found.
std::vector<Violation> validate(const Drawing& drawing);

inline bool is_valid(const Drawing& drawing) { return validate(drawing).empty(); }

/// True when two edges leaving `shared` toward tip_a and tip_b run on top of
/// each other: same side and the shorter arm's tip within kGeometricEpsilon
/// of the other arm's line.
bool adjacent_edges_overlap(Vec2 shared, Vec2 tip_a, Vec2 tip_b);

}  // namespace crossres
