#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>

#include <doctest.h>

#include "crossres/errors.hpp"
#include "crossres/initializer.hpp"
#include "crossres/optimizer.hpp"
#include "../support/fixtures.hpp"
#include "../support/oracles.hpp"

using namespace crossres;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A drawing on a tiny grid with move distances far beyond the bounds: every
// candidate is rounded outside the grid and dropped, so no move is ever
// feasible and stagnation counters tick deterministically.
OptimizerState stuck_grid_state(EscapeStrategy escape, long zeta,
                                long zeta_prime) {
  GraphPtr g = Graph::make(4, {{0, 2}, {1, 3}});
  Drawing d = make_drawing(g, {{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  OptimizerParams params;
  params.grid = GridBounds{3, 3};
  params.delta_min = 1000.0;
  params.delta_max = 2000.0;
  params.rho = 4;
  params.zeta = zeta;
  params.zeta_prime = zeta_prime;
  params.escape = escape;
  params.seed = 21;
  return make_state(d, params);
}

}  // namespace

TEST_CASE("critical vertex pool per objective") {
  Drawing square = fixtures::square_with_diagonals();
  CHECK(critical_vertex_pool(square, Objective::crossing) ==
        std::vector<int>{0, 1, 2, 3});

  Drawing bend = fixtures::path_with_bend(30.0);
  CHECK(critical_vertex_pool(bend, Objective::angular) ==
        std::vector<int>{0, 1, 2});
  // no crossings: the crossing pool falls back to every vertex
  CHECK(critical_vertex_pool(bend, Objective::crossing) ==
        std::vector<int>{0, 1, 2});

  Rng rng(61);
  for (int trial = 0; trial < 50; ++trial) {
    GraphPtr g = oracle::random_graph(8, 14, rng);
    Drawing d = oracle::random_valid_drawing(g, rng);
    oracle::ResolutionResult want = oracle::crossing_resolution(d);
    std::vector<int> pool = critical_vertex_pool(d, Objective::crossing);
    if (!want.degrees) continue;
    std::set<int> expect;
    for (auto [e, f] : want.pairs) {
      expect.insert(g->edge(e).u);
      expect.insert(g->edge(e).v);
      expect.insert(g->edge(f).u);
      expect.insert(g->edge(f).v);
    }
    CHECK(pool == std::vector<int>(expect.begin(), expect.end()));
  }
}

TEST_CASE("select_vertex trivial and weighted cases") {
  Rng rng(67);
  GraphPtr single = Graph::make(1, {});
  CHECK(select_vertex(*single, {0}, PoolMode::critical, 0.5, rng) == 0);

  // star: center in the pool has weight 1, each leaf 0.5
  GraphPtr star = Graph::make(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
  std::map<int, long> counts;
  const int samples = 100000;
  for (int i = 0; i < samples; ++i) {
    ++counts[select_vertex(*star, {0}, PoolMode::critical, 0.5, rng)];
  }
  // expected: center 1/3, each leaf 1/6
  CHECK(std::fabs(counts[0] / double(samples) - 1.0 / 3) < 0.01);
  for (int leaf = 1; leaf <= 4; ++leaf) {
    CHECK(std::fabs(counts[leaf] / double(samples) - 1.0 / 6) < 0.01);
  }
}

TEST_CASE("select_vertex distance weights match within 3 sigma on a path") {
  const int n = 8;
  std::vector<Edge> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1});
  GraphPtr path = Graph::make(n, edges);

  const double decay = 0.5;
  double total = 0;
  std::vector<double> want(n);
  for (int v = 0; v < n; ++v) {
    want[v] = std::pow(decay, v);  // distance from vertex 0
    total += want[v];
  }

  Rng rng(71);
  const int samples = 100000;
  std::vector<long> counts(n, 0);
  for (int i = 0; i < samples; ++i) {
    ++counts[select_vertex(*path, {0}, PoolMode::critical, decay, rng)];
  }
  for (int v = 0; v < n; ++v) {
    double p = want[v] / total;
    double sigma = std::sqrt(p * (1 - p) / samples);
    CHECK(std::fabs(counts[v] / double(samples) - p) < 3 * sigma + 1e-12);
  }
}

TEST_CASE("select_vertex uniform mode and unreachable vertices") {
  Rng rng(73);
  GraphPtr two = Graph::make(2, {});  // disconnected pair
  // pool {0}: vertex 1 unreachable, sits at distance max_finite+1 = 1
  std::map<int, long> counts;
  for (int i = 0; i < 30000; ++i) {
    ++counts[select_vertex(*two, {0}, PoolMode::critical, 0.5, rng)];
  }
  CHECK(std::fabs(counts[0] / 30000.0 - 2.0 / 3) < 0.02);

  counts.clear();
  for (int i = 0; i < 30000; ++i) {
    ++counts[select_vertex(*two, {0}, PoolMode::all, 0.5, rng)];
  }
  CHECK(std::fabs(counts[0] / 30000.0 - 0.5) < 0.02);

  CHECK_THROWS_AS(select_vertex(*Graph::make(0, {}), {}, PoolMode::all, 0.5, rng),
                  Error);
}

TEST_CASE("candidate points with forced rotation and distance") {
  std::vector<double> deltas{1.0, 1.0, 1.0, 1.0};
  std::vector<Vec2> pts = candidate_points({0, 0}, 0.0, deltas, {});
  REQUIRE(pts.size() == 4);
  CHECK(pts[0].x == doctest::Approx(1.0));
  CHECK(pts[0].y == doctest::Approx(0.0));
  CHECK(pts[1].x == doctest::Approx(0.0).epsilon(1e-9));
  CHECK(pts[1].y == doctest::Approx(1.0));
  CHECK(pts[2].x == doctest::Approx(-1.0));
  CHECK(pts[3].y == doctest::Approx(-1.0));
}

TEST_CASE("generated candidates stay in the distance ring") {
  Rng rng(79);
  for (int trial = 0; trial < 200; ++trial) {
    Vec2 origin{rng.uniform(-10, 10), rng.uniform(-10, 10)};
    auto pts = generate_candidates(origin, 7, 0.5, 2.5, {}, rng);
    REQUIRE(pts.size() == 7);
    for (const Vec2& p : pts) {
      double d = distance(p, origin);
      CHECK(d >= 0.5 - 1e-9);
      CHECK(d <= 2.5 + 1e-9);
    }
  }
}

TEST_CASE("grid rounding: nearest integer, ties toward minus infinity") {
  CHECK(grid_round_coord(50.7) == 51.0);
  CHECK(grid_round_coord(50.2) == 50.0);
  CHECK(grid_round_coord(49.5) == 49.0);   // tie goes down
  CHECK(grid_round_coord(-0.5) == -1.0);   // tie goes down
  CHECK(grid_round_coord(-0.49) == 0.0);
  CHECK(grid_round_coord(-1.2) == -1.0);

  // one case per quadrant around (50.2, 49.7)
  Vec2 base{50.2, 49.7};
  CHECK(grid_round(base + Vec2{0.5, 0.5}) == Vec2{51, 50});
  CHECK(grid_round(base + Vec2{-0.5, 0.5}) == Vec2{50, 50});
  CHECK(grid_round(base + Vec2{-0.5, -0.5}) == Vec2{50, 49});
  CHECK(grid_round(base + Vec2{0.5, -0.5}) == Vec2{51, 49});
}

TEST_CASE("grid candidates are integral, in bounds or dropped") {
  std::vector<double> deltas{5.0, 5.0, 5.0, 5.0};
  GridBounds bounds{100, 100};
  // position near the boundary: the ray pointing outside is dropped
  auto pts = candidate_points({97.3, 50.0}, 0.0, deltas, bounds);
  REQUIRE(pts.size() == 3);
  for (const Vec2& p : pts) {
    CHECK(p.x == std::floor(p.x));
    CHECK(p.y == std::floor(p.y));
    CHECK(p.x >= 0);
    CHECK(p.x <= 99);
  }
}

TEST_CASE("evaluate_candidate applies the feasibility rules") {
  Drawing square = fixtures::square_with_diagonals();
  OptimizerParams params;
  params.seed = 5;
  OptimizerState state = make_state(square, params);

  // rule: an occupied position is infeasible
  CHECK_FALSE(evaluate_candidate(state, 0, Vec2{1, 0}).feasible);
  CHECK_FALSE(evaluate_candidate(state, 0, Vec2{0, 0}).feasible);

  // vertex on edge: the square's corner moved onto a side
  CHECK_FALSE(evaluate_candidate(state, 0, Vec2{0.5, 1.0}).feasible);

  // a harmless outward move keeps 90-degree symmetry intact
  CandidateOutcome fine = evaluate_candidate(state, 0, Vec2{-0.5, -0.5});
  CHECK(fine.feasible);

  // degree-0 vertex: feasible anywhere free, local value +infinity
  GraphPtr with_isolated = Graph::make(3, {{0, 1}});
  Drawing iso = make_drawing(with_isolated, {{0, 0}, {1, 0}, {5, 5}});
  OptimizerState iso_state = make_state(iso, params);
  CandidateOutcome out = evaluate_candidate(iso_state, 2, Vec2{7, 7});
  CHECK(out.feasible);
  CHECK(out.local_value == kInf);
}

TEST_CASE("evaluate_candidate honors the aspect cap") {
  GraphPtr g = Graph::make(4, {});
  Drawing unit = make_drawing(g, {{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  OptimizerParams params;
  params.aspect_cap = 1.5;
  OptimizerState state = make_state(unit, params);
  CHECK(evaluate_candidate(state, 0, Vec2{-0.4, 0.5}).feasible);
  CHECK_FALSE(evaluate_candidate(state, 0, Vec2{-2.0, 0.5}).feasible);
}

TEST_CASE("evaluate_candidate rejects off-grid and out-of-bounds points") {
  GraphPtr g = fixtures::triangle();
  Drawing d = make_drawing(g, {{0, 0}, {4, 0}, {0, 4}});
  OptimizerParams params;
  params.grid = GridBounds{10, 10};
  OptimizerState state = make_state(d, params);
  CHECK(evaluate_candidate(state, 0, Vec2{1, 1}).feasible);
  CHECK_FALSE(evaluate_candidate(state, 0, Vec2{1.5, 1}).feasible);
  CHECK_FALSE(evaluate_candidate(state, 0, Vec2{12, 1}).feasible);
  CHECK_FALSE(evaluate_candidate(state, 0, Vec2{-1, 1}).feasible);
}

TEST_CASE("choose_candidate: max rule with index tie-break") {
  Rng rng(83);
  std::vector<CandidateOutcome> outcomes{
      {false, 0}, {true, 40.0}, {true, 55.0}, {true, 55.0}};
  CHECK(choose_candidate(outcomes, false, rng) == 2);

  std::vector<CandidateOutcome> none{{false, 0}, {false, 0}};
  CHECK(choose_candidate(none, false, rng) == -1);

  std::vector<CandidateOutcome> single{{false, 0}, {true, 10.0}};
  CHECK(choose_candidate(single, false, rng) == 1);

  std::vector<CandidateOutcome> vacuous{{true, kInf}, {true, kInf}};
  CHECK(choose_candidate(vacuous, false, rng) == 0);
}

TEST_CASE("choose_candidate: randomized acceptance draws among feasible only") {
  Rng rng(85);
  std::vector<CandidateOutcome> outcomes{
      {false, 0}, {true, 40.0}, {false, 0}, {true, 55.0}};
  std::map<int, long> counts;
  for (int i = 0; i < 5000; ++i) {
    int chosen = choose_candidate(outcomes, true, rng);
    REQUIRE((chosen == 1 || chosen == 3));
    ++counts[chosen];
  }
  CHECK(counts[1] > 2000);  // roughly uniform between the two feasible ones
  CHECK(counts[3] > 2000);

  std::vector<CandidateOutcome> none{{false, 0}};
  CHECK(choose_candidate(none, true, rng) == -1);
}

TEST_CASE("time limit stops a run early") {
  Rng rng(107);
  GraphPtr g = oracle::random_graph(30, 60, rng);
  Drawing initial = circular_layout(g, 100.0);
  OptimizerParams params;
  params.seed = 3;
  params.max_iterations = 100000000;
  params.tau = 100000000;
  params.time_limit_seconds = 0.05;
  OptimizeResult result = optimize(initial, params);
  CHECK(result.report.iterations.size() <
        static_cast<std::size_t>(params.max_iterations));
  CHECK(result.report.wall_seconds < 5.0);  // generous: just not unbounded
}

TEST_CASE("step leaves the drawing unchanged when nothing is feasible") {
  OptimizerState state = stuck_grid_state(EscapeStrategy::none, 5, 3);
  std::vector<Vec2> before = state.current.positions;
  step(state);
  CHECK(state.report.iterations.size() == 1);
  CHECK_FALSE(state.report.iterations[0].accepted);
  for (int v = 0; v < 4; ++v) CHECK(state.current.positions[v] == before[v]);
}

TEST_CASE("amplify escape doubles parameters exactly at the trigger") {
  OptimizerState state = stuck_grid_state(EscapeStrategy::amplify, 5, 3);
  for (int i = 0; i < 12; ++i) iterate(state);
  const auto& trace = state.report.iterations;
  REQUIRE(trace.size() == 12);
  // iterations 1..5 baseline, 6..8 doubled, 9.. restored
  for (int i = 0; i < 5; ++i) {
    CHECK(trace[i].effective_rho == 4);
    CHECK(trace[i].effective_delta_min == 1000.0);
  }
  for (int i = 5; i < 8; ++i) {
    CHECK(trace[i].effective_rho == 8);
    CHECK(trace[i].effective_delta_min == 2000.0);
    CHECK(trace[i].effective_delta_max == 4000.0);
  }
  for (int i = 8; i < 12; ++i) {
    CHECK(trace[i].effective_rho == 4);
    CHECK(trace[i].effective_delta_min == 1000.0);
  }
}

TEST_CASE("widen escape switches the pool and switches back") {
  OptimizerState state = stuck_grid_state(EscapeStrategy::widen_pool, 5, 3);
  for (int i = 0; i < 14; ++i) iterate(state);
  const auto& trace = state.report.iterations;
  for (int i = 0; i < 5; ++i) CHECK(trace[i].pool_mode == PoolMode::critical);
  for (int i = 5; i < 8; ++i) CHECK(trace[i].pool_mode == PoolMode::all);
  for (int i = 8; i < 13; ++i) CHECK(trace[i].pool_mode == PoolMode::critical);
  // re-armed after five more stagnant iterations
  CHECK(trace[13].pool_mode == PoolMode::all);
}

TEST_CASE("improvement during the escape window does not cut it short") {
  OptimizerState state = stuck_grid_state(EscapeStrategy::amplify, 5, 3);
  for (int i = 0; i < 6; ++i) iterate(state);  // escape active at iteration 6
  CHECK(state.escape_active);
  // simulate an improvement as step() would record it
  state.escape_clock = 0;
  state.since_improvement = 0;
  iterate(state);
  CHECK(state.escape_active);  // window still running
  iterate(state);
  escape_update(state);  // window exhausted: restores
  CHECK_FALSE(state.escape_active);
  CHECK(state.effective_rho == 4);
}

TEST_CASE("optimize with a zero iteration budget returns the input") {
  Drawing square = fixtures::square_with_diagonals();
  OptimizerParams params;
  params.max_iterations = 0;
  OptimizeResult result = optimize(square, params);
  for (int v = 0; v < 4; ++v) {
    CHECK(result.drawing.positions[v] == square.positions[v]);
  }
  CHECK(result.report.iterations.empty());
  CHECK(result.report.final_metrics.iterations == 0);
}

TEST_CASE("optimize is deterministic given the seed") {
  Rng rng(89);
  GraphPtr g = oracle::random_graph(12, 16, rng);
  Drawing initial = circular_layout(g, 50.0);
  OptimizerParams params;
  params.seed = 1234;
  params.max_iterations = 800;
  OptimizeResult a = optimize(initial, params);
  OptimizeResult b = optimize(initial, params);
  REQUIRE(a.drawing.positions.size() == b.drawing.positions.size());
  for (std::size_t v = 0; v < a.drawing.positions.size(); ++v) {
    CHECK(a.drawing.positions[v] == b.drawing.positions[v]);
  }
  REQUIRE(a.report.iterations.size() == b.report.iterations.size());
  for (std::size_t i = 0; i < a.report.iterations.size(); ++i) {
    CHECK(a.report.iterations[i].vertex == b.report.iterations[i].vertex);
    CHECK(a.report.iterations[i].accepted == b.report.iterations[i].accepted);
  }
}

TEST_CASE("optimize rejects invalid input") {
  GraphPtr g = Graph::make(4, {{0, 1}, {2, 3}});
  Drawing overlap = make_drawing(g, {{0, 0}, {4, 0}, {1, 0}, {3, 0}});
  OptimizerParams params;
  CHECK_THROWS_AS(optimize(overlap, params), InvalidDrawingError);

  OptimizerParams grid_params;
  grid_params.grid = GridBounds{10, 10};
  Drawing off_grid = make_drawing(g, {{0, 0}, {4, 0}, {1.5, 1}, {3, 2}});
  CHECK_THROWS_AS(optimize(off_grid, grid_params), Error);
}

TEST_CASE("objective trace is monotone, drawings stay valid, cache is exact") {
  Rng rng(97);
  for (int trial = 0; trial < 6; ++trial) {
    Objective objective = trial % 3 == 0   ? Objective::crossing
                          : trial % 3 == 1 ? Objective::angular
                                           : Objective::total;
    GraphPtr g = oracle::random_graph(10, 13, rng);
    Drawing initial = circular_layout(g, 50.0);
    OptimizerParams params;
    params.objective = objective;
    params.seed = 1000 + trial;
    params.max_iterations = 400;
    params.tau = 400;
    params.zeta = 60;
    params.zeta_prime = 30;

    std::optional<double> last;
    long checked = 0;
    auto observer = [&](const OptimizerState& state) {
      const IterationRecord& rec = state.report.iterations.back();
      if (last && rec.objective) {
        CHECK(*rec.objective >= *last - 1e-9);
      }
      last = rec.objective;
      if (state.iterations_done % 37 == 0) {
        CHECK(is_valid(state.current));
        Resolution fresh = objective_resolution(state.current, objective);
        REQUIRE(fresh.degrees.has_value() ==
                state.objective_value.has_value());
        if (fresh.degrees) {
          CHECK(*fresh.degrees == *state.objective_value);  // exact cache
          CHECK(fresh.critical.vertices == state.critical.vertices);
        }
        ++checked;
      }
    };
    OptimizeResult result = optimize(initial, params, observer);
    CHECK(checked > 0);
    if (result.report.initial_objective && result.report.final_objective) {
      CHECK(*result.report.final_objective >=
            *result.report.initial_objective - 1e-9);
    }
    CHECK(is_valid(result.drawing));
  }
}

TEST_CASE("aspect-capped runs never exceed the cap") {
  Rng rng(101);
  GraphPtr g = oracle::random_graph(12, 16, rng);
  Drawing initial = circular_layout(g, 50.0);
  OptimizerParams params;
  params.seed = 77;
  params.max_iterations = 500;
  params.aspect_cap = aspect_ratio(initial);

  auto observer = [&](const OptimizerState& state) {
    CHECK(aspect_ratio(state.current) <= *params.aspect_cap + 1e-9);
  };
  optimize(initial, params, observer);
}

TEST_CASE("grid runs keep every vertex on the bounded grid") {
  Rng rng(103);
  GraphPtr g = oracle::random_graph(10, 13, rng);
  Drawing initial = random_grid_layout(g, 100, 100, 9);
  OptimizerParams params;
  params.seed = 31;
  params.grid = GridBounds{100, 100};
  params.max_iterations = 400;

  auto observer = [&](const OptimizerState& state) {
    for (const Vec2& p : state.current.positions) {
      CHECK(p.x == std::floor(p.x));
      CHECK(p.y == std::floor(p.y));
      CHECK(p.x >= 0);
      CHECK(p.x <= 99);
      CHECK(p.y >= 0);
      CHECK(p.y <= 99);
    }
  };
  OptimizeResult result = optimize(initial, params, observer);
  CHECK(is_valid(result.drawing));
}
