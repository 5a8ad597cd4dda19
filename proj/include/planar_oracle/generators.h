#pragma once

#include <cstdint>
#include <variant>

#include "planar_oracle/graph.h"

namespace planar_oracle {

struct UnitWeights {};
struct RandomWeights {
  Weight max_w = 100;
  std::uint64_t seed = 0;
};
using WeightMode = std::variant<UnitWeights, RandomWeights>;

// Directed grid; vertex (r, c) has id r * cols + c and every grid edge
// becomes two opposite arcs. Throws std::invalid_argument on bad sizes.
EmbeddedPlanarGraph generate_grid(std::size_t rows, std::size_t cols, WeightMode weights);

// Random maximal planar graph on n >= 3 vertices (both arc directions).
EmbeddedPlanarGraph generate_triangulation(std::size_t n, WeightMode weights, std::uint64_t seed);

// Hub 0 joined to a cycle 1..spokes (both arc directions), spokes >= 3.
EmbeddedPlanarGraph generate_wheel(std::size_t spokes, WeightMode weights);

}  // namespace planar_oracle
