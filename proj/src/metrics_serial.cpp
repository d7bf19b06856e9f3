#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <tuple>

#include "crossres/errors.hpp"
#include "crossres/metrics.hpp"

// Straightforward single-threaded kernels. Same contracts as the parallel
// versions in metrics.cpp, written independently as the reference for tests
// and the kernel benchmark.

namespace crossres::serial {

namespace {

void add_pair_vertices(const Graph& g, const CriticalPair& p, std::set<int>& out) {
  out.insert(g.edge(p.edge_a).u);
  out.insert(g.edge(p.edge_a).v);
  out.insert(g.edge(p.edge_b).u);
  out.insert(g.edge(p.edge_b).v);
}

}  // namespace

Resolution crossing_resolution(const Drawing& drawing) {
  const Graph& g = *drawing.graph;
  const int m = g.edge_count();
  double min = std::numeric_limits<double>::infinity();

  for (int e = 0; e < m; ++e) {
    for (int f = e + 1; f < m; ++f) {
      if (g.edges_adjacent(e, f)) continue;
      CrossingAngle ca = crossing_angle(drawing.segment(e), drawing.segment(f));
      if (ca.degenerate) {
        throw InvalidDrawingError("zero-angle overlap between edges " +
                                  std::to_string(e) + " and " +
                                  std::to_string(f));
      }
      if (ca.degrees) min = std::min(min, *ca.degrees);
    }
  }

  Resolution res;
  if (std::isinf(min)) return res;
  res.degrees = min;
  std::set<int> vertices;
  for (int e = 0; e < m; ++e) {
    for (int f = e + 1; f < m; ++f) {
      if (g.edges_adjacent(e, f)) continue;
      CrossingAngle ca = crossing_angle(drawing.segment(e), drawing.segment(f));
      if (ca.degrees && *ca.degrees <= min + kTieToleranceDeg) {
        CriticalPair pair{e, f, -1, *ca.degrees};
        res.critical.pairs.push_back(pair);
        add_pair_vertices(g, pair, vertices);
      }
    }
  }
  res.critical.vertices.assign(vertices.begin(), vertices.end());
  return res;
}

Resolution angular_resolution(const Drawing& drawing) {
  const Graph& g = *drawing.graph;
  const int n = g.vertex_count();
  double min = std::numeric_limits<double>::infinity();
  std::vector<CriticalPair> all_gaps;

  for (int v = 0; v < n; ++v) {
    if (g.degree(v) < 2) continue;
    std::vector<std::pair<double, int>> dirs;
    for (const AdjEntry& adj : g.neighbors(v)) {
      Vec2 d = drawing.positions[adj.neighbor] - drawing.positions[v];
      if (d.x == 0.0 && d.y == 0.0) {
        throw InvalidDrawingError("adjacent edges overlap at vertex " +
                                  std::to_string(v));
      }
      dirs.emplace_back(degrees_from_radians(std::atan2(d.y, d.x)), adj.edge);
    }
    std::sort(dirs.begin(), dirs.end());
    for (std::size_t i = 0; i < dirs.size(); ++i) {
      std::size_t j = (i + 1) % dirs.size();
      double gap = i + 1 < dirs.size()
                       ? dirs[j].first - dirs[i].first
                       : 360.0 - (dirs[i].first - dirs[j].first);
      if (gap == 0.0) {
        throw InvalidDrawingError("adjacent edges overlap at vertex " +
                                  std::to_string(v));
      }
      all_gaps.push_back({dirs[i].second, dirs[j].second, v, gap});
      min = std::min(min, gap);
    }
  }

  Resolution res;
  if (std::isinf(min)) return res;
  res.degrees = min;
  std::set<int> vertices;
  for (const CriticalPair& p : all_gaps) {
    if (p.angle_deg <= min + kTieToleranceDeg) {
      res.critical.pairs.push_back(p);
      add_pair_vertices(g, p, vertices);
    }
  }
  std::sort(res.critical.pairs.begin(), res.critical.pairs.end(),
            [](const CriticalPair& a, const CriticalPair& b) {
              return std::tie(a.apex, a.edge_a, a.edge_b) <
                     std::tie(b.apex, b.edge_a, b.edge_b);
            });
  res.critical.vertices.assign(vertices.begin(), vertices.end());
  return res;
}

long crossing_count(const Drawing& drawing) {
  const Graph& g = *drawing.graph;
  const int m = g.edge_count();
  long count = 0;
  for (int e = 0; e < m; ++e) {
    for (int f = e + 1; f < m; ++f) {
      if (g.edges_adjacent(e, f)) continue;
      CrossingAngle ca = crossing_angle(drawing.segment(e), drawing.segment(f));
      if (ca.degenerate) {
        throw InvalidDrawingError("zero-angle overlap between edges " +
                                  std::to_string(e) + " and " +
                                  std::to_string(f));
      }
      if (ca.degrees) ++count;
    }
  }
  return count;
}

}  // namespace crossres::serial
