#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "crossres/initializer.hpp"
#include "crossres/io.hpp"
#include "crossres/metrics.hpp"
#include "crossres/optimizer.hpp"

namespace crossres {

enum class Variant { unrestricted, ar_restricted };

std::string to_string(Variant variant);
std::optional<Variant> parse_variant(const std::string& name);

struct RunConfig {
  std::string graph_path;   // exactly one of graph_path / layout_path
  std::string layout_path;  // positions taken as the initial drawing
  InitSpec init;
  OptimizerParams params;
  Variant variant = Variant::unrestricted;
  std::string out_dir = ".";
  bool write_svg = false;
  bool write_trace = false;
};

/// Initialize (or load), optimize, write layout.json + metrics.csv and the
/// optional SVG/trace artifacts; prints the final objective value to `out`.
int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err);

struct BenchConfig {
  std::string corpus_dir;
  InitSpec init;
  OptimizerParams params;  // params.seed acts as the master seed
  Variant variant = Variant::unrestricted;
  int repetitions = 1;
  int jobs = 1;
  std::string out_dir = ".";
};

/// One aggregated bucket: arithmetic means over the runs with this vertex
/// count; undefined values are excluded from their column's mean.
struct AggregateRow {
  int n = 0;
  std::optional<double> crossing_resolution;
  std::optional<double> angular_resolution;
  std::optional<double> total_resolution;
  std::optional<double> aspect_ratio;
  std::optional<double> crossings;
  std::optional<double> iterations;
  long samples = 0;
};

struct RunOutcome {
  std::string name;  // "<file stem>_r<rep>"
  int n = 0;
  MetricsRecord metrics;
};

std::vector<AggregateRow> aggregate(const std::vector<RunOutcome>& runs);
std::string aggregate_csv_header();
std::string aggregate_csv_row(const AggregateRow& row);

/// Stable per-run seed: FNV-1a over file name, repetition and master seed, so
/// results are independent of corpus traversal order.
std::uint64_t per_run_seed(const std::string& filename, int repetition,
                           std::uint64_t master_seed);

int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err);

int cmd_metrics(const std::string& layout_path, bool as_json, std::ostream& out,
                std::ostream& err);

struct RenderConfig {
  std::string layout_path;
  std::string out_path;  // empty writes to `out`
  int width_px = 800;
  std::optional<Objective> highlight;  // outline this measure's critical edges
};

int cmd_render(const RenderConfig& config, std::ostream& out, std::ostream& err);

}  // namespace crossres
