#include "crossres/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>
#include <thread>
#include <utility>

#include "crossres/errors.hpp"
#include "crossres/rng.hpp"

namespace fs = std::filesystem;

namespace crossres {

namespace {

std::string fmt(double value, const char* spec = "%.6f") {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, value);
  return buf;
}

std::string opt_fmt(const std::optional<double>& value) {
  return value ? fmt(*value) : "";
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  out << text;
}

void write_trace_jsonl(const RunReport& report, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open for writing: " + path);
  for (const IterationRecord& rec : report.iterations) {
    out << "{\"iter\":" << rec.iteration << ",\"vertex\":" << rec.vertex
        << ",\"accepted\":" << (rec.accepted ? "true" : "false")
        << ",\"objective\":"
        << (rec.objective ? fmt(*rec.objective, "%.17g") : "null")
        << ",\"rho\":" << rec.effective_rho << ",\"delta_min\":"
        << fmt(rec.effective_delta_min, "%.17g") << ",\"delta_max\":"
        << fmt(rec.effective_delta_max, "%.17g") << ",\"pool\":\""
        << (rec.pool_mode == PoolMode::critical ? "critical" : "all")
        << "\"}\n";
  }
}

Drawing initial_drawing(const std::string& graph_path,
                        const std::string& layout_path, const InitSpec& init) {
  if (!layout_path.empty()) return load_layout_file(layout_path);
  GraphPtr graph = load_graph_file(graph_path);
  return make_initial(std::move(graph), init);
}

void apply_variant(OptimizerParams& params, Variant variant,
                   const Drawing& initial) {
  if (variant == Variant::ar_restricted &&
      initial.graph->vertex_count() >= 2) {
    params.aspect_cap = aspect_ratio(initial);
  }
}

std::string variant_token(const BenchConfig& config) {
  std::string token = to_string(config.variant);
  if (config.params.grid) {
    token += "-grid" + std::to_string(config.params.grid->width) + "x" +
             std::to_string(config.params.grid->height);
  }
  return token;
}

}  // namespace

std::string to_string(Variant variant) {
  return variant == Variant::unrestricted ? "unrestricted" : "ar-restricted";
}

std::optional<Variant> parse_variant(const std::string& name) {
  if (name == "unrestricted") return Variant::unrestricted;
  if (name == "ar-restricted") return Variant::ar_restricted;
  return std::nullopt;
}

int cmd_run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.graph_path.empty() == config.layout_path.empty()) {
      throw Error("run: need exactly one of --graph / --layout");
    }
    Drawing initial =
        initial_drawing(config.graph_path, config.layout_path, config.init);
    OptimizerParams params = config.params;
    apply_variant(params, config.variant, initial);

    fs::create_directories(config.out_dir);
    if (config.write_svg) {
      write_text_file(config.out_dir + "/before.svg", render_svg(initial));
    }

    OptimizeResult result = optimize(initial, params);

    save_layout_file(result.drawing, config.out_dir + "/layout.json");
    write_text_file(config.out_dir + "/metrics.csv",
                    metrics_csv_header() + "\n" +
                        metrics_csv_row(result.report.final_metrics) + "\n");
    if (config.write_svg) {
      write_text_file(config.out_dir + "/after.svg", render_svg(result.drawing));
    }
    if (config.write_trace) {
      write_trace_jsonl(result.report, config.out_dir + "/trace.jsonl");
    }

    out << (result.report.final_objective
                ? fmt(*result.report.final_objective)
                : "undefined")
        << "\n";
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

std::uint64_t per_run_seed(const std::string& filename, int repetition,
                           std::uint64_t master_seed) {
  std::uint64_t h = fnv1a64(filename);
  h = fnv1a64(":" + std::to_string(repetition), h);
  h = fnv1a64(":" + std::to_string(master_seed), h);
  return h;
}

std::vector<AggregateRow> aggregate(const std::vector<RunOutcome>& runs) {
  struct Sums {
    double cr = 0, ar = 0, tr = 0, aspect = 0, crossings = 0, iters = 0;
    long n_cr = 0, n_ar = 0, n_tr = 0, samples = 0;
  };
  std::map<int, Sums> buckets;
  for (const RunOutcome& run : runs) {
    Sums& s = buckets[run.n];
    ++s.samples;
    if (run.metrics.crossing_resolution) {
      s.cr += *run.metrics.crossing_resolution;
      ++s.n_cr;
    }
    if (run.metrics.angular_resolution) {
      s.ar += *run.metrics.angular_resolution;
      ++s.n_ar;
    }
    if (run.metrics.total_resolution) {
      s.tr += *run.metrics.total_resolution;
      ++s.n_tr;
    }
    s.aspect += run.metrics.aspect_ratio;
    s.crossings += static_cast<double>(run.metrics.crossing_count);
    s.iters += static_cast<double>(run.metrics.iterations);
  }

  std::vector<AggregateRow> rows;
  for (const auto& [n, s] : buckets) {
    AggregateRow row;
    row.n = n;
    row.samples = s.samples;
    if (s.n_cr > 0) row.crossing_resolution = s.cr / s.n_cr;
    if (s.n_ar > 0) row.angular_resolution = s.ar / s.n_ar;
    if (s.n_tr > 0) row.total_resolution = s.tr / s.n_tr;
    row.aspect_ratio = s.aspect / s.samples;
    row.crossings = s.crossings / s.samples;
    row.iterations = s.iters / s.samples;
    rows.push_back(row);
  }
  return rows;
}

std::string aggregate_csv_header() {
  return "n;crossing_resolution;angular_resolution;total_resolution;"
         "aspect_ratio;crossings;iterations;samples";
}

std::string aggregate_csv_row(const AggregateRow& row) {
  return std::to_string(row.n) + ";" + opt_fmt(row.crossing_resolution) + ";" +
         opt_fmt(row.angular_resolution) + ";" + opt_fmt(row.total_resolution) +
         ";" + opt_fmt(row.aspect_ratio) + ";" + opt_fmt(row.crossings) + ";" +
         opt_fmt(row.iterations) + ";" + std::to_string(row.samples);
}

int cmd_bench(const BenchConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(config.corpus_dir)) {
      if (entry.is_regular_file()) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty()) throw Error("bench: empty corpus " + config.corpus_dir);

    struct Task {
      fs::path path;
      int rep;
      std::uint64_t seed;
    };
    std::vector<Task> tasks;
    for (const fs::path& path : files) {
      for (int rep = 0; rep < config.repetitions; ++rep) {
        tasks.push_back({path, rep,
                         per_run_seed(path.filename().string(), rep,
                                      config.params.seed)});
      }
    }

    fs::create_directories(config.out_dir + "/layouts");

    struct TaskResult {
      bool ok = false;
      std::string message;
      RunOutcome outcome;
      std::string layout_json;
    };
    std::vector<TaskResult> results(tasks.size());

    auto run_task = [&](std::size_t index) {
      const Task& task = tasks[index];
      TaskResult& result = results[index];
      try {
        GraphPtr graph = load_graph_file(task.path.string());
        InitSpec init = config.init;
        init.seed = task.seed ^ 0x5deece66dull;
        Drawing initial = make_initial(graph, init);
        OptimizerParams params = config.params;
        params.seed = task.seed;
        apply_variant(params, config.variant, initial);
        OptimizeResult opt = optimize(initial, params);

        result.outcome.name =
            task.path.stem().string() + "_r" + std::to_string(task.rep);
        result.outcome.n = graph->vertex_count();
        result.outcome.metrics = opt.report.final_metrics;
        std::ostringstream layout;
        save_layout(opt.drawing, layout);
        result.layout_json = layout.str();
        result.ok = true;
      } catch (const std::exception& e) {
        result.message = task.path.filename().string() + ": " + e.what();
      }
    };

    if (config.jobs <= 1) {
      for (std::size_t i = 0; i < tasks.size(); ++i) run_task(i);
    } else {
      std::atomic<std::size_t> next{0};
      std::vector<std::thread> workers;
      int jobs = std::min<std::size_t>(config.jobs, tasks.size());
      for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&]() {
          while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= tasks.size()) return;
            run_task(i);
          }
        });
      }
      for (std::thread& worker : workers) worker.join();
    }

    std::vector<RunOutcome> outcomes;
    long failures = 0;
    std::ostringstream runs_csv;
    runs_csv << "graph;rep;n;" << metrics_csv_header() << "\n";
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (!results[i].ok) {
        ++failures;
        err << "warning: " << results[i].message << "\n";
        continue;
      }
      outcomes.push_back(results[i].outcome);
      runs_csv << tasks[i].path.stem().string() << ";" << tasks[i].rep << ";"
               << results[i].outcome.n << ";"
               << metrics_csv_row(results[i].outcome.metrics) << "\n";
      write_text_file(config.out_dir + "/layouts/" + results[i].outcome.name +
                          ".json",
                      results[i].layout_json);
    }
    if (outcomes.empty()) throw Error("bench: every run failed");

    std::string token =
        variant_token(config) + "_" + to_string(config.params.objective);
    write_text_file(config.out_dir + "/runs_" + token + ".csv", runs_csv.str());

    std::ostringstream agg_csv;
    agg_csv << aggregate_csv_header() << "\n";
    for (const AggregateRow& row : aggregate(outcomes)) {
      agg_csv << aggregate_csv_row(row) << "\n";
    }
    std::string agg_path = config.out_dir + "/bench_" + token + ".csv";
    write_text_file(agg_path, agg_csv.str());

    out << "bench: " << outcomes.size() << " runs, " << failures
        << " failures, wrote " << agg_path << "\n";
    return failures == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_metrics(const std::string& layout_path, bool as_json, std::ostream& out,
                std::ostream& err) {
  try {
    Drawing drawing = load_layout_file(layout_path);
    MetricsRecord record = compute_metrics(drawing);
    if (as_json) {
      auto field = [](const std::optional<double>& v) {
        return v ? fmt(*v) : std::string("null");
      };
      out << "{\"crossing_resolution\":" << field(record.crossing_resolution)
          << ",\"angular_resolution\":" << field(record.angular_resolution)
          << ",\"total_resolution\":" << field(record.total_resolution)
          << ",\"aspect_ratio\":" << field(record.aspect_ratio)
          << ",\"crossings\":" << record.crossing_count << "}\n";
    } else {
      out << metrics_csv_header() << "\n" << metrics_csv_row(record) << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_render(const RenderConfig& config, std::ostream& out,
               std::ostream& err) {
  try {
    Drawing drawing = load_layout_file(config.layout_path);
    SvgOptions options;
    options.width_px = config.width_px;
    Resolution res;
    if (config.highlight) {
      res = objective_resolution(drawing, *config.highlight);
      options.highlight = &res.critical;
    }
    std::string svg = render_svg(drawing, options);
    if (config.out_path.empty()) {
      out << svg;
    } else {
      write_text_file(config.out_path, svg);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace crossres
