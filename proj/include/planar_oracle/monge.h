#pragma once

#include <span>
#include <vector>

#include "planar_oracle/ddg.h"

namespace planar_oracle {

// Quadtree partition of a DDG matrix, viewed through a row/column order,
// into blocks tagged Monge (all finite, M[i][j] + M[i'][j'] <= M[i][j'] + M[i'][j]
// for i < i', j < j') or not.
struct MongeBlock {
  std::uint32_t r0, r1, c0, c1;  // half-open position ranges
  bool monge;
};

struct MongeLayout {
  std::vector<std::uint32_t> order;     // position -> matrix index
  std::vector<std::uint32_t> position;  // matrix index -> position
  std::vector<MongeBlock> blocks;
  std::size_t monge_cells = 0;
};

MongeLayout build_monge_layout(const DenseDistanceGraph& d, const std::vector<std::uint32_t>& order);

// best[c] = min(best[c], min_k offsets[k] + M[order[rows[k]]][order[c]]) for
// every column position c. rows are positions in ascending order. Monge
// blocks use divide-and-conquer column minima, the rest a plain scan.
// Returns the number of matrix entries evaluated.
std::uint64_t batch_column_minima(const DenseDistanceGraph& d, const MongeLayout& layout,
                                  std::span<const std::uint32_t> rows, std::span<const Distance> offsets,
                                  std::vector<Distance>& best);

}  // namespace planar_oracle
