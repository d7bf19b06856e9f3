#include "crossres/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <deque>
#include <limits>
#include <string>
#include <utility>

#include "crossres/errors.hpp"

namespace crossres {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Everything validate() would flag after moving v to `candidate`, except
// vertex-vertex coincidence (checked separately) and crossings (the local
// scans decide those).
bool move_creates_degeneracy(const Drawing& drawing, int v, Vec2 candidate) {
  const Graph& g = *drawing.graph;
  const auto& pos = drawing.positions;
  const int n = g.vertex_count();

  for (int f = 0; f < g.edge_count(); ++f) {
    if (g.incident(f, v)) continue;
    Segment s = drawing.segment(f);
    if (point_segment_distance(candidate, s.a, s.b) < kGeometricEpsilon) {
      return true;
    }
  }

  const auto& neighbors = g.neighbors(v);
  for (const AdjEntry& adj : neighbors) {
    Vec2 tip = pos[adj.neighbor];
    for (int w = 0; w < n; ++w) {
      if (w == v || w == adj.neighbor) continue;
      if (point_segment_distance(pos[w], candidate, tip) < kGeometricEpsilon) {
        return true;
      }
    }
  }

  for (std::size_t i = 0; i < neighbors.size(); ++i) {
    for (std::size_t j = i + 1; j < neighbors.size(); ++j) {
      if (adjacent_edges_overlap(candidate, pos[neighbors[i].neighbor],
                           pos[neighbors[j].neighbor])) {
        return true;
      }
    }
  }
  for (const AdjEntry& adj : neighbors) {
    for (const AdjEntry& other : g.neighbors(adj.neighbor)) {
      if (other.neighbor == v) continue;
      if (adjacent_edges_overlap(pos[adj.neighbor], candidate, pos[other.neighbor])) {
        return true;
      }
    }
  }
  return false;
}

double local_value_at(const Drawing& drawing, int v, std::optional<Vec2> at,
                      Objective objective, bool& degenerate) {
  double value = kInf;
  if (objective == Objective::crossing || objective == Objective::total) {
    LocalScan scan = local_min_crossing_angle(drawing, v, at);
    if (scan.degenerate) {
      degenerate = true;
      return value;
    }
    if (scan.min_angle_deg) value = std::min(value, *scan.min_angle_deg);
  }
  if (objective == Objective::angular || objective == Objective::total) {
    LocalScan scan = local_min_angular(drawing, v, at);
    if (scan.degenerate) {
      degenerate = true;
      return value;
    }
    if (scan.min_angle_deg) value = std::min(value, *scan.min_angle_deg);
  }
  return value;
}

CandidateOutcome evaluate_with_reference(const OptimizerState& state, int v,
                                         Vec2 candidate, double reference) {
  const Drawing& drawing = state.current;
  const OptimizerParams& params = state.params;
  const auto& pos = drawing.positions;

  if (params.grid) {
    if (candidate.x != std::floor(candidate.x) ||
        candidate.y != std::floor(candidate.y) || candidate.x < 0 ||
        candidate.x > params.grid->width - 1 || candidate.y < 0 ||
        candidate.y > params.grid->height - 1) {
      return {};
    }
  }

  for (const Vec2& p : pos) {
    if (distance(p, candidate) < kGeometricEpsilon) return {};
  }

  if (move_creates_degeneracy(drawing, v, candidate)) return {};

  if (params.aspect_cap) {
    double min_x = kInf, min_y = kInf, max_x = -kInf, max_y = -kInf;
    for (int w = 0; w < drawing.graph->vertex_count(); ++w) {
      Vec2 p = w == v ? candidate : pos[w];
      min_x = std::min(min_x, p.x);
      min_y = std::min(min_y, p.y);
      max_x = std::max(max_x, p.x);
      max_y = std::max(max_y, p.y);
    }
    double lo = std::min(max_x - min_x, max_y - min_y);
    double hi = std::max(max_x - min_x, max_y - min_y);
    double ratio = lo < 1e-12 ? kInf : hi / lo;
    if (ratio > *params.aspect_cap) return {};
  }

  bool degenerate = false;
  double value = local_value_at(drawing, v, candidate, params.objective,
                                degenerate);
  if (degenerate || value < reference) return {};
  return {true, value};
}

void apply_escape(OptimizerState& state) {
  switch (state.params.escape) {
    case EscapeStrategy::widen_pool:
      state.pool_mode = PoolMode::all;
      break;
    case EscapeStrategy::amplify:
      state.effective_rho = 2 * state.params.rho;
      state.effective_delta_min = 2.0 * *state.params.delta_min;
      state.effective_delta_max = 2.0 * *state.params.delta_max;
      break;
    case EscapeStrategy::none:
      break;
  }
}

void restore_baseline(OptimizerState& state) {
  state.pool_mode = PoolMode::critical;
  state.effective_rho = state.params.rho;
  state.effective_delta_min = *state.params.delta_min;
  state.effective_delta_max = *state.params.delta_max;
}

}  // namespace

std::vector<int> critical_vertex_pool(const Drawing& drawing,
                                      Objective objective) {
  Resolution res = objective_resolution(drawing, objective);
  if (!res.degrees) {
    std::vector<int> all(drawing.graph->vertex_count());
    for (int v = 0; v < drawing.graph->vertex_count(); ++v) all[v] = v;
    return all;
  }
  return res.critical.vertices;
}

int select_vertex(const Graph& graph, const std::vector<int>& pool,
                  PoolMode mode, double pool_decay, Rng& rng) {
  const int n = graph.vertex_count();
  if (n == 0) throw Error("select_vertex: empty graph");
  if (mode == PoolMode::all) {
    return static_cast<int>(rng.uniform_index(n));
  }
  if (pool.empty()) throw Error("select_vertex: empty pool");

  std::vector<int> dist(n, -1);
  std::deque<int> queue;
  for (int v : pool) {
    if (dist[v] != 0) {
      dist[v] = 0;
      queue.push_back(v);
    }
  }
  int max_finite = 0;
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    max_finite = std::max(max_finite, dist[u]);
    for (const AdjEntry& adj : graph.neighbors(u)) {
      if (dist[adj.neighbor] < 0) {
        dist[adj.neighbor] = dist[u] + 1;
        queue.push_back(adj.neighbor);
      }
    }
  }

  std::vector<double> weight(n);
  double total = 0.0;
  for (int v = 0; v < n; ++v) {
    int d = dist[v] < 0 ? max_finite + 1 : dist[v];
    weight[v] = std::pow(pool_decay, d);
    total += weight[v];
  }
  double r = rng.uniform01() * total;
  for (int v = 0; v < n; ++v) {
    r -= weight[v];
    if (r < 0.0) return v;
  }
  return n - 1;
}

double grid_round_coord(double x) { return std::ceil(x - 0.5); }

Vec2 grid_round(Vec2 p) { return {grid_round_coord(p.x), grid_round_coord(p.y)}; }

std::vector<Vec2> candidate_points(Vec2 position, double theta,
                                   const std::vector<double>& deltas,
                                   const std::optional<GridBounds>& grid) {
  const int rho = static_cast<int>(deltas.size());
  std::vector<Vec2> out;
  out.reserve(deltas.size());
  for (int j = 0; j < rho; ++j) {
    double angle = 2.0 * M_PI * j / rho + theta;
    Vec2 p = position + deltas[j] * Vec2{std::cos(angle), std::sin(angle)};
    if (grid) {
      p = grid_round(p);
      if (p.x < 0 || p.x > grid->width - 1 || p.y < 0 || p.y > grid->height - 1) {
        continue;
      }
    }
    out.push_back(p);
  }
  return out;
}

std::vector<Vec2> generate_candidates(Vec2 position, int rho, double delta_min,
                                      double delta_max,
                                      const std::optional<GridBounds>& grid,
                                      Rng& rng) {
  double theta = rng.uniform(0.0, 2.0 * M_PI);
  std::vector<double> deltas(rho);
  for (int j = 0; j < rho; ++j) deltas[j] = rng.uniform(delta_min, delta_max);
  return candidate_points(position, theta, deltas, grid);
}

double reference_value(const Drawing& drawing, int v, Objective objective) {
  bool degenerate = false;
  double value = local_value_at(drawing, v, {}, objective, degenerate);
  if (degenerate) {
    throw InvalidDrawingError("reference_value: degenerate current drawing");
  }
  return value;
}

CandidateOutcome evaluate_candidate(const OptimizerState& state, int v,
                                    Vec2 candidate) {
  return evaluate_with_reference(
      state, v, candidate,
      reference_value(state.current, v, state.params.objective));
}

int choose_candidate(const std::vector<CandidateOutcome>& outcomes,
                     bool random_acceptance, Rng& rng) {
  if (random_acceptance) {
    std::vector<int> feasible;
    for (int j = 0; j < static_cast<int>(outcomes.size()); ++j) {
      if (outcomes[j].feasible) feasible.push_back(j);
    }
    if (feasible.empty()) return -1;
    return feasible[rng.uniform_index(feasible.size())];
  }
  int chosen = -1;
  double best = -kInf;
  for (int j = 0; j < static_cast<int>(outcomes.size()); ++j) {
    if (outcomes[j].feasible && outcomes[j].local_value > best) {
      best = outcomes[j].local_value;
      chosen = j;
    }
  }
  return chosen;
}

OptimizerState make_state(Drawing initial, const OptimizerParams& params) {
  std::vector<Violation> violations = validate(initial);
  if (!violations.empty()) {
    throw InvalidDrawingError("initial drawing invalid: " +
                              to_string(violations.front()));
  }

  OptimizerParams resolved = params;
  if (!resolved.delta_max) {
    double side = 1.0;
    if (!initial.positions.empty()) {
      BoundingBox box = bounding_box(initial);
      side = std::max(box.width(), box.height());
    }
    resolved.delta_max = side > 0.0 ? 0.5 * side : 1.0;
  }
  if (!resolved.delta_min) resolved.delta_min = *resolved.delta_max / 100.0;

  if (resolved.rho < 1) throw Error("params: rho must be >= 1");
  if (*resolved.delta_min <= 0 || *resolved.delta_max < *resolved.delta_min) {
    throw Error("params: need 0 < delta_min <= delta_max");
  }
  if (resolved.tau < 1) throw Error("params: tau must be >= 1");
  if (resolved.epsilon < 0) throw Error("params: epsilon must be >= 0");
  if (resolved.zeta < 1 || resolved.zeta_prime < 1) {
    throw Error("params: zeta and zeta_prime must be >= 1");
  }
  if (resolved.pool_decay <= 0.0 || resolved.pool_decay >= 1.0) {
    throw Error("params: pool_decay must lie in (0,1)");
  }
  if (resolved.grid) {
    if (resolved.grid->width < 1 || resolved.grid->height < 1) {
      throw Error("params: grid bounds must be positive");
    }
    for (const Vec2& p : initial.positions) {
      if (p.x != std::floor(p.x) || p.y != std::floor(p.y) || p.x < 0 ||
          p.x > resolved.grid->width - 1 || p.y < 0 ||
          p.y > resolved.grid->height - 1) {
        throw Error("grid mode requires an integer in-bounds initial drawing");
      }
    }
  }

  OptimizerState state;
  state.current = std::move(initial);
  state.params = resolved;
  state.rng = Rng(resolved.seed);
  Resolution res = objective_resolution(state.current, resolved.objective);
  state.objective_value = res.degrees;
  state.critical = std::move(res.critical);
  state.improvement_mark = state.objective_value;
  restore_baseline(state);
  state.report.initial_objective = state.objective_value;
  return state;
}

void escape_update(OptimizerState& state) {
  if (state.params.escape == EscapeStrategy::none) return;
  if (state.escape_active && state.escape_remaining == 0) {
    restore_baseline(state);
    state.escape_active = false;
    state.escape_clock = 0;  // re-arming needs zeta stagnant iterations again
  }
  if (!state.escape_active && state.escape_clock >= state.params.zeta) {
    state.escape_active = true;
    state.escape_remaining = state.params.zeta_prime;
    apply_escape(state);
  }
}

void step(OptimizerState& state) {
  const Graph& g = *state.current.graph;
  const OptimizerParams& params = state.params;

  PoolMode mode = state.pool_mode;
  const std::vector<int>* pool = &state.critical.vertices;
  if (mode == PoolMode::critical && pool->empty()) {
    mode = PoolMode::all;  // undefined objective: every vertex, uniform
  }
  int v = select_vertex(g, *pool, mode, params.pool_decay, state.rng);

  std::vector<Vec2> candidates = generate_candidates(
      state.current.positions[v], state.effective_rho,
      state.effective_delta_min, state.effective_delta_max, params.grid,
      state.rng);

  double reference = reference_value(state.current, v, params.objective);

  std::vector<CandidateOutcome> outcomes(candidates.size());
  const int count = static_cast<int>(candidates.size());
#pragma omp parallel for schedule(static) \
    if (count > 1 && g.edge_count() >= 256)
  for (int j = 0; j < count; ++j) {
    outcomes[j] = evaluate_with_reference(state, v, candidates[j], reference);
  }

  int chosen = choose_candidate(outcomes, params.random_acceptance, state.rng);
  bool accepted = chosen >= 0;
  if (accepted) {
    state.current.positions[v] = candidates[chosen];
    bool critical_vertex =
        std::binary_search(state.critical.vertices.begin(),
                           state.critical.vertices.end(), v);
    bool above_tie_band =
        !state.objective_value ||
        outcomes[chosen].local_value > *state.objective_value + kTieToleranceDeg;
    if (critical_vertex || !above_tie_band) {
      Resolution res = objective_resolution(state.current, params.objective);
      state.objective_value = res.degrees;
      state.critical = std::move(res.critical);
    }
    // else: the move cannot touch the minimum or the critical set
  }

  double gain = 0.0;
  if (state.objective_value && state.improvement_mark) {
    gain = *state.objective_value - *state.improvement_mark;
  } else if (state.objective_value && !state.improvement_mark) {
    state.improvement_mark = state.objective_value;
  }
  if (gain > params.epsilon) {
    state.since_improvement = 0;
    state.escape_clock = 0;
    state.improvement_mark = state.objective_value;
  } else {
    ++state.since_improvement;
    ++state.escape_clock;
  }

  ++state.iterations_done;
  state.report.iterations.push_back({state.iterations_done, v, accepted,
                                     state.objective_value, state.effective_rho,
                                     state.effective_delta_min,
                                     state.effective_delta_max,
                                     state.pool_mode});
}

void iterate(OptimizerState& state) {
  escape_update(state);
  step(state);
  if (state.escape_active) --state.escape_remaining;
}

OptimizeResult optimize(const Drawing& initial, const OptimizerParams& params,
                        const IterationObserver& observer) {
  OptimizerState state = make_state(initial, params);
  auto start = std::chrono::steady_clock::now();
  auto elapsed = [&start]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  if (state.current.graph->vertex_count() > 0) {
    while (state.iterations_done < params.max_iterations &&
           state.since_improvement < state.params.tau) {
      if (params.time_limit_seconds && elapsed() > *params.time_limit_seconds) {
        break;
      }
      iterate(state);
      if (observer) observer(state);
    }
  }

  state.report.final_objective = state.objective_value;
  state.report.final_metrics =
      compute_metrics(state.current, state.iterations_done);
  state.report.wall_seconds = elapsed();
  return {std::move(state.current), std::move(state.report)};
}

}  // namespace crossres
