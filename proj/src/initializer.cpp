#include "crossres/initializer.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "crossres/errors.hpp"
#include "crossres/rng.hpp"

namespace crossres {

Drawing circular_layout(GraphPtr graph, double radius) {
  if (radius <= 0.0) throw Error("circular_layout: radius must be positive");
  const int n = graph->vertex_count();
  std::vector<Vec2> positions(n);
  for (int k = 0; k < n; ++k) {
    double angle = 2.0 * M_PI * k / std::max(n, 1);
    positions[k] = {radius * std::cos(angle), radius * std::sin(angle)};
  }
  return make_drawing(std::move(graph), std::move(positions));
}

Drawing random_grid_layout(GraphPtr graph, int grid_w, int grid_h,
                           std::uint64_t seed) {
  const int n = graph->vertex_count();
  if (grid_w <= 0 || grid_h <= 0) {
    throw Error("random_grid_layout: grid bounds must be positive");
  }
  if (static_cast<long>(grid_w) * grid_h < n) {
    throw CapacityError("random_grid_layout: grid smaller than vertex count");
  }

  Rng rng(seed);
  const long budget = 1000L * std::max(n, 1);
  long draws = 0;
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> cells(n);

  auto draw_cell = [&](int v) {
    while (true) {
      if (++draws > budget) {
        throw CapacityError("random_grid_layout: no valid placement within " +
                            std::to_string(budget) + " draws");
      }
      int x = static_cast<int>(rng.uniform_index(grid_w));
      int y = static_cast<int>(rng.uniform_index(grid_h));
      if (used.insert({x, y}).second) {
        cells[v] = {x, y};
        return;
      }
    }
  };

  std::vector<Vec2> positions(n);
  for (int v = 0; v < n; ++v) draw_cell(v);
  for (int v = 0; v < n; ++v) {
    positions[v] = {static_cast<double>(cells[v].first),
                    static_cast<double>(cells[v].second)};
  }
  Drawing drawing = make_drawing(std::move(graph), std::move(positions));

  while (true) {
    std::vector<Violation> violations = validate(drawing);
    if (violations.empty()) return drawing;
    std::set<int> redraw;
    for (const Violation& violation : violations) {
      switch (violation.kind) {
        case ViolationKind::coincident_vertices:
          redraw.insert(violation.a);
          redraw.insert(violation.b);
          break;
        case ViolationKind::vertex_on_edge:
          redraw.insert(violation.a);
          break;
        case ViolationKind::edge_overlap: {
          const Edge& e = drawing.graph->edge(violation.a);
          const Edge& f = drawing.graph->edge(violation.b);
          redraw.insert({e.u, e.v, f.u, f.v});
          break;
        }
        case ViolationKind::nonfinite_position:
          break;  // impossible for grid cells
      }
    }
    for (int v : redraw) {
      used.erase(cells[v]);
      draw_cell(v);
      drawing.positions[v] = {static_cast<double>(cells[v].first),
                              static_cast<double>(cells[v].second)};
    }
  }
}

Drawing spring_layout(GraphPtr graph, int iterations, std::uint64_t seed) {
  const int n = graph->vertex_count();
  Rng rng(seed);
  const double side = 100.0;
  std::vector<Vec2> pos(n);
  for (int v = 0; v < n; ++v) {
    pos[v] = {rng.uniform(0.0, side), rng.uniform(0.0, side)};
  }

  if (n > 1) {
    const double k = side / std::sqrt(static_cast<double>(n));
    std::vector<Vec2> disp(n);
    for (int it = 0; it < iterations; ++it) {
      double temp = 0.1 * side * (1.0 - static_cast<double>(it) / iterations);
      std::fill(disp.begin(), disp.end(), Vec2{0, 0});
      for (int u = 0; u < n; ++u) {
        for (int v = u + 1; v < n; ++v) {
          Vec2 d = pos[u] - pos[v];
          double dist = std::max(norm(d), 1e-9);
          double force = k * k / dist;
          Vec2 push = (force / dist) * d;
          disp[u] = disp[u] + push;
          disp[v] = disp[v] - push;
        }
      }
      for (const Edge& e : graph->edges()) {
        Vec2 d = pos[e.u] - pos[e.v];
        double dist = std::max(norm(d), 1e-9);
        double force = dist * dist / k;
        Vec2 pull = (force / dist) * d;
        disp[e.u] = disp[e.u] - pull;
        disp[e.v] = disp[e.v] + pull;
      }
      for (int v = 0; v < n; ++v) {
        double len = norm(disp[v]);
        if (len > 0.0) {
          pos[v] = pos[v] + (std::min(len, temp) / len) * disp[v];
        }
      }
    }
  }

  Drawing drawing = make_drawing(std::move(graph), std::move(pos));
  double jitter = 1e-6 * side;
  for (int round = 0; round < 100; ++round) {
    std::vector<Violation> violations = validate(drawing);
    if (violations.empty()) return drawing;
    std::set<int> shake;
    for (const Violation& violation : violations) {
      switch (violation.kind) {
        case ViolationKind::coincident_vertices:
          shake.insert(violation.a);
          shake.insert(violation.b);
          break;
        case ViolationKind::vertex_on_edge:
          shake.insert(violation.a);
          break;
        case ViolationKind::edge_overlap: {
          const Edge& e = drawing.graph->edge(violation.a);
          shake.insert({e.u, e.v});
          break;
        }
        case ViolationKind::nonfinite_position:
          shake.insert(violation.a);
          break;
      }
    }
    for (int v : shake) {
      drawing.positions[v] =
          drawing.positions[v] +
          Vec2{rng.uniform(-jitter, jitter), rng.uniform(-jitter, jitter)};
    }
    jitter *= 2.0;
  }
  throw CapacityError("spring_layout: jitter pass failed to repair drawing");
}

Drawing make_initial(GraphPtr graph, const InitSpec& spec) {
  switch (spec.kind) {
    case InitSpec::Kind::circle:
      return circular_layout(std::move(graph), spec.radius);
    case InitSpec::Kind::random_grid:
      return random_grid_layout(std::move(graph), spec.grid_w, spec.grid_h,
                                spec.seed);
    case InitSpec::Kind::spring:
      return spring_layout(std::move(graph), spec.spring_iterations, spec.seed);
  }
  throw Error("unknown initializer kind");
}

}  // namespace crossres
