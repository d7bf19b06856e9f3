#pragma once

#include <cstdint>

#include "crossres/drawing.hpp"
#include "crossres/graph.hpp"

namespace crossres {

struct InitSpec {
  enum class Kind { circle, random_grid, spring };
  Kind kind = Kind::circle;
  double radius = 100.0;
  int grid_w = 1000;
  int grid_h = 1000;
  int spring_iterations = 300;
  std::uint64_t seed = 1;
};

/// Vertex k at angle 2*pi*k/n on a circle of the given radius.
Drawing circular_layout(GraphPtr graph, double radius);

/// Integer positions inside [0,W-1] x [0,H-1]. Vertices violating the drawing
/// invariants are resampled; throws CapacityError after 1000*n draws.
/// Deterministic given the seed.
Drawing random_grid_layout(GraphPtr graph, int grid_w, int grid_h,
                           std::uint64_t seed);

/// Force-directed refinement from a seeded random start, with a jitter pass
/// that clears any residual degeneracies. Deterministic given the seed.
Drawing spring_layout(GraphPtr graph, int iterations, std::uint64_t seed);

Drawing make_initial(GraphPtr graph, const InitSpec& spec);

}  // namespace crossres
