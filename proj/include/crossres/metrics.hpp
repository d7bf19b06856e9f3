#pragma once

#include <optional>
#include <string>
#include <vector>

#include "crossres/drawing.hpp"

namespace crossres {

enum class Objective { crossing, angular, total };

std::string to_string(Objective objective);
std::optional<Objective> parse_objective(const std::string& name);

/// Angles within this tolerance of the minimum count as attaining it.
inline constexpr double kTieToleranceDeg = 1e-9;

/// A pair of edges attaining the current resolution. Crossing pairs have
/// apex == -1; angular pairs are consecutive around the shared vertex `apex`.
struct CriticalPair {
  int edge_a = -1;
  int edge_b = -1;
  int apex = -1;
  double angle_deg = 0.0;
};

struct CriticalSet {
  std::vector<CriticalPair> pairs;
  std::vector<int> vertices;  // sorted, deduplicated endpoints of the pairs
};

struct Resolution {
  std::optional<double> degrees;  // empty when the measure is undefined
  CriticalSet critical;
};

/// Minimum crossing angle over all non-adjacent edge pairs, brute force.
/// Empty when the drawing has no crossings. Throws InvalidDrawingError on a
/// zero-angle overlap.
Resolution crossing_resolution(const Drawing& drawing);

/// Minimum cyclic gap over all vertices of degree >= 2. Empty when no such
/// vertex exists.
Resolution angular_resolution(const Drawing& drawing);

/// Minimum of the two measures; undefined sides are skipped. The critical set
/// is the union over the measures attaining the minimum (within tolerance).
Resolution total_resolution(const Drawing& drawing);

Resolution objective_resolution(const Drawing& drawing, Objective objective);

/// Result of the incident-edges-only evaluation used by the optimizer.
/// `degenerate` reports a zero-angle overlap or vertex-on-edge incidence
/// introduced by the probed position.
struct LocalScan {
  bool degenerate = false;
  std::optional<double> min_angle_deg;
};

/// Minimum crossing angle between the edges incident to v (with v at `at` if
/// given) and every non-adjacent edge. O(deg(v) * m).
LocalScan local_min_crossing_angle(const Drawing& drawing, int v,
                                   std::optional<Vec2> at = {});

/// Minimum cyclic gap at v and at every neighbor of v, with v at `at` if
/// given. Empty when no participating vertex has degree >= 2.
LocalScan local_min_angular(const Drawing& drawing, int v,
                            std::optional<Vec2> at = {});

/// max(w,h) / min(w,h) of the bounding box; +infinity when the shorter side
/// is below 1e-12. Requires n >= 2.
double aspect_ratio(const Drawing& drawing);

/// Number of proper crossings between non-adjacent edge pairs.
long crossing_count(const Drawing& drawing);

struct MetricsRecord {
  std::optional<double> crossing_resolution;
  std::optional<double> angular_resolution;
  std::optional<double> total_resolution;
  long crossing_count = 0;
  double aspect_ratio = 1.0;  // 1.0 for drawings with fewer than two vertices
  long iterations = 0;
};

MetricsRecord compute_metrics(const Drawing& drawing, long iterations = 0);

std::string metrics_csv_header();
std::string metrics_csv_row(const MetricsRecord& record);

/// Plain single-threaded reference kernels. Results are bit-identical to the
/// parallel versions above; kept for tests and the kernel benchmark.
namespace serial {
Resolution crossing_resolution(const Drawing& drawing);
Resolution angular_resolution(const Drawing& drawing);
long crossing_count(const Drawing& drawing);
}  // namespace serial

}  // namespace crossres
