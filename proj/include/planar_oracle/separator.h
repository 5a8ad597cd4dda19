#pragma once

#include <utility>
#include <vector>

#include "planar_oracle/graph.h"

namespace planar_oracle {

// Contents of a piece: its arcs plus vertices of G without any arcs.
struct PieceContent {
  std::vector<ArcId> arcs;          // sorted
  std::vector<VertexId> isolated;   // sorted
};

std::vector<VertexId> content_vertices(const EmbeddedPlanarGraph& g, const PieceContent& p);

struct SplitResult {
  PieceContent first;
  PieceContent second;
  std::vector<VertexId> separator;  // real vertices on the chosen cycle (empty for component splits)
  bool balanced = true;             // larger side within 2/3 of the piece
};

// Splits a piece with at least two vertices into two nonempty edge-disjoint
// parts. Disconnected pieces are split along components; a connected piece
// along a fundamental cycle of a BFS tree in its stellated triangulation.
SplitResult split_piece(const EmbeddedPlanarGraph& g, const PieceContent& p);

}  // namespace planar_oracle
