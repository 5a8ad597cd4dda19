#pragma once

#include <span>
#include <vector>

#include "planar_oracle/graph.h"

namespace planar_oracle {

// Dijkstra from source over the whole graph.
std::vector<Distance> sssp(const EmbeddedPlanarGraph& g, VertexId source);

// Dijkstra from source with the vertices flagged in `removed` deleted
// (together with all incident arcs). removed may be empty.
std::vector<Distance> sssp_without(const EmbeddedPlanarGraph& g, VertexId source,
                                   const std::vector<std::uint8_t>& removed);

// Brute-force d_G(u, v, X). Throws std::invalid_argument if u or v is in X.
Distance distance_avoiding(const EmbeddedPlanarGraph& g, VertexId u, VertexId v,
                           std::span<const VertexId> failed);

}  // namespace planar_oracle
