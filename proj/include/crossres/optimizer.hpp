#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "crossres/drawing.hpp"
#include "crossres/metrics.hpp"
#include "crossres/rng.hpp"

namespace crossres {

enum class EscapeStrategy { none, widen_pool, amplify };
enum class PoolMode { critical, all };

struct GridBounds {
  int width = 0;
  int height = 0;
};

struct OptimizerParams {
  int rho = 10;
  std::optional<double> delta_min;  // defaults to delta_max / 100
  std::optional<double> delta_max;  // defaults to half the larger initial bbox side
  long tau = 500;                   // stop after this many stagnant iterations
  double epsilon = 0.001;           // improvement threshold, degrees
  long zeta = 200;                  // stagnant iterations arming an escape
  long zeta_prime = 100;            // escape window length
  Objective objective = Objective::crossing;
  EscapeStrategy escape = EscapeStrategy::amplify;
  std::optional<double> aspect_cap;
  std::optional<GridBounds> grid;
  long max_iterations = 100000;
  std::uint64_t seed = 1;
  double pool_decay = 0.5;          // selection weight decay per graph-distance
  bool random_acceptance = false;   // uniform choice among feasible candidates
  std::optional<double> time_limit_seconds;
};

struct IterationRecord {
  long iteration = 0;  // 1-based
  int vertex = -1;
  bool accepted = false;
  std::optional<double> objective;  // global objective after this iteration
  int effective_rho = 0;
  double effective_delta_min = 0.0;
  double effective_delta_max = 0.0;
  PoolMode pool_mode = PoolMode::critical;
};

struct RunReport {
  std::vector<IterationRecord> iterations;
  std::optional<double> initial_objective;
  std::optional<double> final_objective;
  MetricsRecord final_metrics;
  double wall_seconds = 0.0;
};

struct OptimizerState {
  Drawing current;
  OptimizerParams params;  // resolved baseline: delta_min/max always set
  std::optional<double> objective_value;  // cached global objective
  CriticalSet critical;                   // cached, consistent with the value
  std::optional<double> improvement_mark; // value at the last counted improvement
  long iterations_done = 0;
  long since_improvement = 0;  // tau window; counts every iteration
  long escape_clock = 0;       // resets on improvement and when an escape ends
  long escape_remaining = 0;
  bool escape_active = false;
  int effective_rho = 0;
  double effective_delta_min = 0.0;
  double effective_delta_max = 0.0;
  PoolMode pool_mode = PoolMode::critical;
  Rng rng{0};
  RunReport report;
};

/// Endpoints of the pairs attaining the objective; every vertex when the
/// objective is undefined for the drawing.
std::vector<int> critical_vertex_pool(const Drawing& drawing, Objective objective);

/// PoolMode::all draws uniformly. PoolMode::critical weights each vertex by
/// pool_decay^dist, dist from a multi-source BFS out of the pool; unreachable
/// vertices sit one step beyond the farthest reachable one.
int select_vertex(const Graph& graph, const std::vector<int>& pool,
                  PoolMode mode, double pool_decay, Rng& rng);

/// Rounds to the nearest integer, ties toward -infinity.
double grid_round_coord(double x);
Vec2 grid_round(Vec2 p);

/// Candidate j sits at position + deltas[j] * (cos a_j, sin a_j) with
/// a_j = 2*pi*j/rho + theta. In grid mode candidates are rounded and
/// out-of-bounds ones dropped.
std::vector<Vec2> candidate_points(Vec2 position, double theta,
                                   const std::vector<double>& deltas,
                                   const std::optional<GridBounds>& grid);

/// Draws theta ~ U[0,2pi) and one distance per ray ~ U[delta_min, delta_max].
std::vector<Vec2> generate_candidates(Vec2 position, int rho, double delta_min,
                                      double delta_max,
                                      const std::optional<GridBounds>& grid,
                                      Rng& rng);

struct CandidateOutcome {
  bool feasible = false;
  double local_value = 0.0;  // +infinity when no relevant angle exists
};

/// Objective-specific local value at the vertex's current position;
/// +infinity when undefined.
double reference_value(const Drawing& drawing, int v, Objective objective);

/// Index of the winning candidate, -1 when none is feasible. Best local value
/// wins, ties go to the lowest index; with random_acceptance a uniform draw
/// decides among the feasible ones.
int choose_candidate(const std::vector<CandidateOutcome>& outcomes,
                     bool random_acceptance, Rng& rng);

/// Applies the feasibility rules: candidate occupied, degeneracy created,
/// local value below the reference, aspect cap exceeded, off-grid.
CandidateOutcome evaluate_candidate(const OptimizerState& state, int v,
                                    Vec2 candidate);

OptimizerState make_state(Drawing initial, const OptimizerParams& params);

/// One vertex move attempt: select, generate, evaluate, accept best feasible.
void step(OptimizerState& state);

/// Arms or unwinds the escape strategy; call before step.
void escape_update(OptimizerState& state);

/// escape_update + step + escape window countdown.
void iterate(OptimizerState& state);

struct OptimizeResult {
  Drawing drawing;
  RunReport report;
};

using IterationObserver = std::function<void(const OptimizerState&)>;

/// Runs iterations until tau stagnant ones, the iteration cap, or the time
/// limit. Deterministic given the seed (without a time limit).
OptimizeResult optimize(const Drawing& initial, const OptimizerParams& params,
                        const IterationObserver& observer = {});

}  // namespace crossres
