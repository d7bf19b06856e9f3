#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "crossres/harness.hpp"

namespace {

using crossres::GridBounds;
using crossres::InitSpec;
using crossres::Objective;
using crossres::OptimizerParams;
using crossres::Variant;

struct CommonFlags {
  std::string objective = "crossing";
  std::string variant = "unrestricted";
  std::string escape = "amplify";
  std::string init = "circle";
  std::string grid;
  int rho = 10;
  std::optional<double> delta_min, delta_max;
  long tau = 500;
  double epsilon = 0.001;
  long zeta = 200;
  long zeta_prime = 100;
  double pool_decay = 0.5;
  std::uint64_t seed = 1;
  long max_iterations = 100000;
  std::optional<double> time_limit;
  double radius = 100.0;
  int spring_iters = 300;
};

void add_common_flags(CLI::App* cmd, CommonFlags& flags) {
  cmd->add_option("--objective", flags.objective, "crossing|angular|total")
      ->check(CLI::IsMember({"crossing", "angular", "total"}));
  cmd->add_option("--variant", flags.variant, "unrestricted|ar-restricted")
      ->check(CLI::IsMember({"unrestricted", "ar-restricted"}));
  cmd->add_option("--escape", flags.escape, "widen|amplify|none")
      ->check(CLI::IsMember({"widen", "amplify", "none"}));
  cmd->add_option("--init", flags.init, "circle|random-grid|spring")
      ->check(CLI::IsMember({"circle", "random-grid", "spring"}));
  cmd->add_option("--grid", flags.grid, "grid bounds WxH (e.g. 1000x1000)");
  cmd->add_option("--rho", flags.rho, "rays per iteration");
  cmd->add_option("--delta-min", flags.delta_min, "min move distance");
  cmd->add_option("--delta-max", flags.delta_max, "max move distance");
  cmd->add_option("--tau", flags.tau, "stagnant iterations before stopping");
  cmd->add_option("--epsilon", flags.epsilon, "improvement threshold (deg)");
  cmd->add_option("--zeta", flags.zeta, "stagnant iterations arming an escape");
  cmd->add_option("--zeta-prime", flags.zeta_prime, "escape window length");
  cmd->add_option("--pool-decay", flags.pool_decay,
                  "selection weight decay per graph distance");
  cmd->add_option("--seed", flags.seed, "random seed");
  cmd->add_option("--max-iterations", flags.max_iterations, "iteration cap");
  cmd->add_option("--time-limit", flags.time_limit, "wall clock cap (s)");
  cmd->add_option("--radius", flags.radius, "circle initializer radius");
  cmd->add_option("--spring-iters", flags.spring_iters,
                  "spring initializer iterations");
}

GridBounds parse_grid(const std::string& text) {
  auto x = text.find('x');
  if (x == std::string::npos) {
    throw CLI::ValidationError("--grid expects WxH, e.g. 1000x1000");
  }
  try {
    return {std::stoi(text.substr(0, x)), std::stoi(text.substr(x + 1))};
  } catch (const std::exception&) {
    throw CLI::ValidationError("--grid expects WxH, e.g. 1000x1000");
  }
}

void fill_configs(const CommonFlags& flags, InitSpec& init,
                  OptimizerParams& params, Variant& variant) {
  params.objective = *crossres::parse_objective(flags.objective);
  variant = *crossres::parse_variant(flags.variant);
  if (flags.escape == "widen") {
    params.escape = crossres::EscapeStrategy::widen_pool;
  } else if (flags.escape == "amplify") {
    params.escape = crossres::EscapeStrategy::amplify;
  } else {
    params.escape = crossres::EscapeStrategy::none;
  }
  params.rho = flags.rho;
  params.delta_min = flags.delta_min;
  params.delta_max = flags.delta_max;
  params.tau = flags.tau;
  params.epsilon = flags.epsilon;
  params.zeta = flags.zeta;
  params.zeta_prime = flags.zeta_prime;
  params.pool_decay = flags.pool_decay;
  params.seed = flags.seed;
  params.max_iterations = flags.max_iterations;
  params.time_limit_seconds = flags.time_limit;
  if (!flags.grid.empty()) {
    GridBounds bounds = parse_grid(flags.grid);
    params.grid = bounds;
    init.grid_w = bounds.width;
    init.grid_h = bounds.height;
  }
  if (flags.init == "circle") {
    init.kind = InitSpec::Kind::circle;
  } else if (flags.init == "random-grid") {
    init.kind = InitSpec::Kind::random_grid;
  } else {
    init.kind = InitSpec::Kind::spring;
  }
  init.radius = flags.radius;
  init.spring_iterations = flags.spring_iters;
  init.seed = flags.seed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"crossres: crossing/angular/total resolution maximization for "
               "straight-line graph drawings"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "optimize a single graph");
  CommonFlags run_flags;
  crossres::RunConfig run_config;
  run->add_option("--graph", run_config.graph_path, "input graph file");
  run->add_option("--layout", run_config.layout_path,
                  "layout JSON used as the initial drawing");
  run->add_option("--out", run_config.out_dir, "output directory");
  run->add_flag("--svg", run_config.write_svg, "write before/after SVG");
  run->add_flag("--trace", run_config.write_trace, "write trace.jsonl");
  add_common_flags(run, run_flags);

  // bench
  auto* bench = app.add_subcommand("bench", "sweep a corpus directory");
  CommonFlags bench_flags;
  crossres::BenchConfig bench_config;
  bench->add_option("--corpus", bench_config.corpus_dir, "corpus directory")
      ->required();
  bench->add_option("--out", bench_config.out_dir, "output directory");
  bench->add_option("--reps", bench_config.repetitions, "repetitions per graph");
  bench->add_option("--jobs", bench_config.jobs, "parallel workers");
  add_common_flags(bench, bench_flags);

  // metrics
  auto* metrics = app.add_subcommand("metrics", "print metrics of a layout");
  std::string metrics_layout;
  bool metrics_json = false;
  metrics->add_option("--layout", metrics_layout, "layout JSON file")
      ->required();
  metrics->add_flag("--json", metrics_json, "print JSON instead of CSV");

  // render
  auto* render = app.add_subcommand("render", "render a layout to SVG");
  crossres::RenderConfig render_config;
  std::string highlight;
  render->add_option("--layout", render_config.layout_path, "layout JSON file")
      ->required();
  render->add_option("--out", render_config.out_path,
                     "output SVG file (default: stdout)");
  render->add_option("--width", render_config.width_px, "SVG width in px");
  render->add_option("--highlight", highlight,
                     "outline critical edges of this measure")
      ->check(CLI::IsMember({"crossing", "angular", "total"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      fill_configs(run_flags, run_config.init, run_config.params,
                   run_config.variant);
      return crossres::cmd_run(run_config, std::cout, std::cerr);
    }
    if (bench->parsed()) {
      fill_configs(bench_flags, bench_config.init, bench_config.params,
                   bench_config.variant);
      return crossres::cmd_bench(bench_config, std::cout, std::cerr);
    }
    if (metrics->parsed()) {
      return crossres::cmd_metrics(metrics_layout, metrics_json, std::cout,
                                   std::cerr);
    }
    if (render->parsed()) {
      if (!highlight.empty()) {
        render_config.highlight = crossres::parse_objective(highlight);
      }
      return crossres::cmd_render(render_config, std::cout, std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
