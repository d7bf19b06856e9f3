#include "crossres/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <set>
#include <string>
#include <tuple>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Tracks the running minimum angle together with every pair within the tie
// tolerance of it.
struct MinCollector {
  double min = kInf;
  std::vector<CriticalPair> pairs;

  void add(double angle, const CriticalPair& pair) {
    if (angle < min) {
      min = angle;
      std::erase_if(pairs, [&](const CriticalPair& p) {
        return p.angle_deg > min + kTieToleranceDeg;
      });
      pairs.push_back(pair);
    } else if (angle <= min + kTieToleranceDeg) {
      pairs.push_back(pair);
    }
  }

  void merge(const MinCollector& other) {
    min = std::min(min, other.min);
    pairs.insert(pairs.end(), other.pairs.begin(), other.pairs.end());
    std::erase_if(pairs, [&](const CriticalPair& p) {
      return p.angle_deg > min + kTieToleranceDeg;
    });
  }
};

std::vector<int> pair_endpoints(const Graph& g, const std::vector<CriticalPair>& pairs) {
  std::set<int> vertices;
  for (const CriticalPair& p : pairs) {
    vertices.insert(g.edge(p.edge_a).u);
    vertices.insert(g.edge(p.edge_a).v);
    vertices.insert(g.edge(p.edge_b).u);
    vertices.insert(g.edge(p.edge_b).v);
  }
  return {vertices.begin(), vertices.end()};
}

Resolution finish(const Graph& g, MinCollector collector, bool angular) {
  Resolution res;
  if (collector.min == kInf) return res;
  res.degrees = collector.min;
  if (angular) {
    std::sort(collector.pairs.begin(), collector.pairs.end(),
              [](const CriticalPair& a, const CriticalPair& b) {
                return std::tie(a.apex, a.edge_a, a.edge_b) <
                       std::tie(b.apex, b.edge_a, b.edge_b);
              });
  } else {
    std::sort(collector.pairs.begin(), collector.pairs.end(),
              [](const CriticalPair& a, const CriticalPair& b) {
                return std::tie(a.edge_a, a.edge_b) <
                       std::tie(b.edge_a, b.edge_b);
              });
  }
  res.critical.vertices = pair_endpoints(g, collector.pairs);
  res.critical.pairs = std::move(collector.pairs);
  return res;
}

[[noreturn]] void throw_overlap(int e, int f) {
  throw InvalidDrawingError("zero-angle overlap between edges " +
                            std::to_string(e) + " and " + std::to_string(f));
}

// Sorted directions of the edges incident to v; angle in degrees, paired with
// the edge id. `moved` substitutes the position of one vertex.
struct RayList {
  std::vector<std::pair<double, int>> rays;  // (direction angle, edge id)
  bool degenerate = false;                   // coincident endpoints

  void build(const Drawing& drawing, int v, int moved_vertex, Vec2 moved_pos) {
    rays.clear();
    degenerate = false;
    const Graph& g = *drawing.graph;
    Vec2 center = v == moved_vertex ? moved_pos : drawing.positions[v];
    for (const AdjEntry& adj : g.neighbors(v)) {
      Vec2 p = adj.neighbor == moved_vertex ? moved_pos
                                            : drawing.positions[adj.neighbor];
      if (p == center) {
        degenerate = true;
        continue;
      }
      Vec2 d = p - center;
      rays.emplace_back(degrees_from_radians(std::atan2(d.y, d.x)), adj.edge);
    }
    std::sort(rays.begin(), rays.end());
  }

  // Visits each consecutive gap as (gap_degrees, edge_a, edge_b).
  template <typename Fn>
  void each_gap(Fn&& fn) const {
    const std::size_t k = rays.size();
    if (k < 2) return;
    for (std::size_t i = 0; i + 1 < k; ++i) {
      fn(rays[i + 1].first - rays[i].first, rays[i].second, rays[i + 1].second);
    }
    fn(360.0 - (rays.back().first - rays.front().first), rays.back().second,
       rays.front().second);
  }
};

}  // namespace

std::string to_string(Objective objective) {
  switch (objective) {
    case Objective::crossing:
      return "crossing";
    case Objective::angular:
      return "angular";
    case Objective::total:
      return "total";
  }
  return "?";
}

std::optional<Objective> parse_objective(const std::string& name) {
  if (name == "crossing") return Objective::crossing;
  if (name == "angular") return Objective::angular;
  if (name == "total") return Objective::total;
  return std::nullopt;
}

Resolution crossing_resolution(const Drawing& drawing) {
  const Graph& g = *drawing.graph;
  const int m = g.edge_count();
  MinCollector global;
  int degenerate_e = -1, degenerate_f = -1;

#pragma omp parallel if (m >= 64)
  {
    MinCollector local;
#pragma omp for schedule(dynamic, 8) nowait
    for (int e = 0; e < m; ++e) {
      Segment se = drawing.segment(e);
      for (int f = e + 1; f < m; ++f) {
        if (g.edges_adjacent(e, f)) continue;
        Segment sf = drawing.segment(f);
        switch (classify_segments(se, sf)) {
          case SegmentRelation::crossing: {
            double angle = angle_between_degrees(se.b - se.a, sf.b - sf.a);
            local.add(angle, {e, f, -1, angle});
            break;
          }
          case SegmentRelation::degenerate:
#pragma omp critical(crossres_metrics_degenerate)
            {
              degenerate_e = e;
              degenerate_f = f;
            }
            break;
          case SegmentRelation::disjoint:
            break;
        }
      }
    }
#pragma omp critical(crossres_metrics_merge)
    global.merge(local);
  }

  if (degenerate_e >= 0) throw_overlap(degenerate_e, degenerate_f);
  return finish(g, std::move(global), /*angular=*/false);
}

Resolution angular_resolution(const Drawing& drawing) {
  const Graph& g = *drawing.graph;
  const int n = g.vertex_count();
  MinCollector global;
  int degenerate_vertex = -1;

#pragma omp parallel if (n >= 512)
  {
    MinCollector local;
    RayList rays;
#pragma omp for schedule(dynamic, 32) nowait
    for (int v = 0; v < n; ++v) {
      if (g.degree(v) < 2) continue;
      rays.build(drawing, v, -1, {});
      if (rays.degenerate) {
#pragma omp critical(crossres_metrics_degenerate)
        degenerate_vertex = v;
        continue;
      }
      bool zero_gap = false;
      rays.each_gap([&](double gap, int ea, int eb) {
        if (gap == 0.0) zero_gap = true;
        local.add(gap, {ea, eb, v, gap});
      });
      if (zero_gap) {
#pragma omp critical(crossres_metrics_degenerate)
        degenerate_vertex = v;
      }
    }
#pragma omp critical(crossres_metrics_merge)
    global.merge(local);
  }

  if (degenerate_vertex >= 0) {
    throw InvalidDrawingError("adjacent edges overlap at vertex " +
                              std::to_string(degenerate_vertex));
  }
  return finish(g, std::move(global), /*angular=*/true);
}

Resolution total_resolution(const Drawing& drawing) {
  Resolution cr = crossing_resolution(drawing);
  Resolution ar = angular_resolution(drawing);
  if (!cr.degrees) return ar;
  if (!ar.degrees) return cr;

  Resolution res;
  res.degrees = std::min(*cr.degrees, *ar.degrees);
  if (*cr.degrees <= *res.degrees + kTieToleranceDeg) {
    res.critical.pairs.insert(res.critical.pairs.end(), cr.critical.pairs.begin(),
                              cr.critical.pairs.end());
  }
  if (*ar.degrees <= *res.degrees + kTieToleranceDeg) {
    res.critical.pairs.insert(res.critical.pairs.end(), ar.critical.pairs.begin(),
                              ar.critical.pairs.end());
  }
  res.critical.vertices = pair_endpoints(*drawing.graph, res.critical.pairs);
  return res;
}

Resolution objective_resolution(const Drawing& drawing, Objective objective) {
  switch (objective) {
    case Objective::crossing:
      return crossing_resolution(drawing);
    case Objective::angular:
      return angular_resolution(drawing);
    case Objective::total:
      return total_resolution(drawing);
  }
  throw Error("unknown objective");
}

LocalScan local_min_crossing_angle(const Drawing& drawing, int v,
                                   std::optional<Vec2> at) {
  const Graph& g = *drawing.graph;
  LocalScan scan;
  Vec2 pos = at.value_or(drawing.positions[v]);
  double min = kInf;
  for (const AdjEntry& adj : g.neighbors(v)) {
    Vec2 other = drawing.positions[adj.neighbor];
    if (other == pos) {
      scan.degenerate = true;
      return scan;
    }
    Segment se{pos, other};
    for (int f = 0; f < g.edge_count(); ++f) {
      if (g.edges_adjacent(adj.edge, f)) continue;
      Segment sf = drawing.segment(f);
      switch (classify_segments(se, sf)) {
        case SegmentRelation::crossing:
          min = std::min(min, angle_between_degrees(se.b - se.a, sf.b - sf.a));
          break;
        case SegmentRelation::degenerate:
          scan.degenerate = true;
          return scan;
        case SegmentRelation::disjoint:
          break;
      }
    }
  }
  if (min != kInf) scan.min_angle_deg = min;
  return scan;
}

LocalScan local_min_angular(const Drawing& drawing, int v,
                            std::optional<Vec2> at) {
  const Graph& g = *drawing.graph;
  LocalScan scan;
  Vec2 pos = at.value_or(drawing.positions[v]);
  double min = kInf;
  RayList rays;

  auto scan_vertex = [&](int center) {
    if (g.degree(center) < 2) return;
    rays.build(drawing, center, v, pos);
    if (rays.degenerate) {
      scan.degenerate = true;
      return;
    }
    rays.each_gap([&](double gap, int, int) {
      if (gap == 0.0) scan.degenerate = true;
      min = std::min(min, gap);
    });
  };

  scan_vertex(v);
  for (const AdjEntry& adj : g.neighbors(v)) {
    if (scan.degenerate) break;
    scan_vertex(adj.neighbor);
  }
  if (scan.degenerate) return LocalScan{true, {}};
  if (min != kInf) scan.min_angle_deg = min;
  return scan;
}

double aspect_ratio(const Drawing& drawing) {
  if (drawing.graph->vertex_count() < 2) {
    throw Error("aspect_ratio: needs at least two vertices");
  }
  BoundingBox box = bounding_box(drawing);
  double lo = std::min(box.width(), box.height());
  double hi = std::max(box.width(), box.height());
  if (lo < 1e-12) return kInf;
  return hi / lo;
}

long crossing_count(const Drawing& drawing) {
  const Graph& g = *drawing.graph;
  const int m = g.edge_count();
  long count = 0;
  int degenerate_e = -1, degenerate_f = -1;

#pragma omp parallel for schedule(dynamic, 8) reduction(+ : count) \
    if (m >= 64)
  for (int e = 0; e < m; ++e) {
    Segment se = drawing.segment(e);
    for (int f = e + 1; f < m; ++f) {
      if (g.edges_adjacent(e, f)) continue;
      switch (classify_segments(se, drawing.segment(f))) {
        case SegmentRelation::crossing:
          ++count;
          break;
        case SegmentRelation::degenerate:
#pragma omp critical(crossres_metrics_degenerate)
          {
            degenerate_e = e;
            degenerate_f = f;
          }
          break;
        case SegmentRelation::disjoint:
          break;
      }
    }
  }
  if (degenerate_e >= 0) throw_overlap(degenerate_e, degenerate_f);
  return count;
}

MetricsRecord compute_metrics(const Drawing& drawing, long iterations) {
  MetricsRecord record;
  record.crossing_resolution = crossing_resolution(drawing).degrees;
  record.angular_resolution = angular_resolution(drawing).degrees;
  if (record.crossing_resolution && record.angular_resolution) {
    record.total_resolution =
        std::min(*record.crossing_resolution, *record.angular_resolution);
  } else if (record.crossing_resolution) {
    record.total_resolution = record.crossing_resolution;
  } else {
    record.total_resolution = record.angular_resolution;
  }
  record.crossing_count = crossing_count(drawing);
  record.aspect_ratio =
      drawing.graph->vertex_count() >= 2 ? aspect_ratio(drawing) : 1.0;
  record.iterations = iterations;
  return record;
}

namespace {

std::string csv_value(std::optional<double> v) {
  if (!v) return "";
  char buf[40];
  if (std::isinf(*v)) return "inf";
  std::snprintf(buf, sizeof(buf), "%.6f", *v);
  return buf;
}

}  // namespace

std::string metrics_csv_header() {
  return "crossing_resolution;angular_resolution;total_resolution;"
         "aspect_ratio;crossings;iterations";
}

std::string metrics_csv_row(const MetricsRecord& r) {
  return csv_value(r.crossing_resolution) + ";" +
         csv_value(r.angular_resolution) + ";" + csv_value(r.total_resolution) +
         ";" + csv_value(r.aspect_ratio) + ";" + std::to_string(r.crossing_count) +
         ";" + std::to_string(r.iterations);
}

}  // namespace crossres
