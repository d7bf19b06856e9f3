#include "crossres/drawing.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "crossres/errors.hpp"

namespace crossres {

Drawing make_drawing(GraphPtr graph, std::vector<Vec2> positions) {
  if (!graph) throw Error("drawing: null graph");
  if (static_cast<int>(positions.size()) != graph->vertex_count()) {
    throw Error("drawing: position count does not match vertex count");
  }
  return Drawing{std::move(graph), std::move(positions)};
}

BoundingBox bounding_box(const Drawing& drawing) {
  if (drawing.positions.empty()) {
    throw Error("bounding_box: empty drawing");
  }
  BoundingBox box{drawing.positions[0].x, drawing.positions[0].y,
                  drawing.positions[0].x, drawing.positions[0].y};
  for (const Vec2& p : drawing.positions) {
    box.min_x = std::min(box.min_x, p.x);
    box.min_y = std::min(box.min_y, p.y);
    box.max_x = std::max(box.max_x, p.x);
    box.max_y = std::max(box.max_y, p.y);
  }
  return box;
}

std::string to_string(const Violation& violation) {
  switch (violation.kind) {
    case ViolationKind::nonfinite_position:
      return "non-finite position at vertex " + std::to_string(violation.a);
    case ViolationKind::coincident_vertices:
      return "vertices " + std::to_string(violation.a) + " and " +
             std::to_string(violation.b) + " coincide";
    case ViolationKind::edge_overlap:
      return "edges " + std::to_string(violation.a) + " and " +
             std::to_string(violation.b) + " overlap at zero angle";
    case ViolationKind::vertex_on_edge:
      return "vertex " + std::to_string(violation.a) + " lies on edge " +
             std::to_string(violation.b);
  }
  return "unknown violation";
}

bool adjacent_edges_overlap(Vec2 shared, Vec2 tip_a, Vec2 tip_b) {
  Vec2 da = tip_a - shared;
  Vec2 db = tip_b - shared;
  if (dot(da, db) <= 0.0) return false;
  double longest = std::max(norm(da), norm(db));
  if (longest == 0.0) return true;
  return std::fabs(cross(da, db)) / longest < kGeometricEpsilon;
}

std::vector<Violation> validate(const Drawing& drawing) {
  std::vector<Violation> out;
  const Graph& g = *drawing.graph;
  const auto& pos = drawing.positions;
  const int n = g.vertex_count();
  const int m = g.edge_count();

  for (int v = 0; v < n; ++v) {
    if (!std::isfinite(pos[v].x) || !std::isfinite(pos[v].y)) {
      out.push_back({ViolationKind::nonfinite_position, v, -1});
    }
  }
  if (!out.empty()) return out;  // distance tests need finite input

  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (distance(pos[i], pos[j]) < kGeometricEpsilon) {
        out.push_back({ViolationKind::coincident_vertices, i, j});
      }
    }
  }

  for (int e = 0; e < m; ++e) {
    Segment se = drawing.segment(e);
    for (int f = e + 1; f < m; ++f) {
      Segment sf = drawing.segment(f);
      if (g.edges_adjacent(e, f)) {
        const Edge& ee = g.edge(e);
        const Edge& ef = g.edge(f);
        int shared = (ee.u == ef.u || ee.u == ef.v) ? ee.u : ee.v;
        int tip_e = ee.u == shared ? ee.v : ee.u;
        int tip_f = ef.u == shared ? ef.v : ef.u;
        if (adjacent_edges_overlap(pos[shared], pos[tip_e], pos[tip_f])) {
          out.push_back({ViolationKind::edge_overlap, e, f});
        }
      } else if (classify_segments(se, sf) == SegmentRelation::degenerate) {
        out.push_back({ViolationKind::edge_overlap, e, f});
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    for (int e = 0; e < m; ++e) {
      if (g.incident(e, v)) continue;
      Segment s = drawing.segment(e);
      if (point_segment_distance(pos[v], s.a, s.b) < kGeometricEpsilon) {
        out.push_back({ViolationKind::vertex_on_edge, v, e});
      }
    }
  }
  return out;
}

}  // namespace crossres
