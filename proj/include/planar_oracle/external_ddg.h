#pragma once

#include <map>
#include <mutex>
#include <span>
#include <vector>

#include "planar_oracle/fr_dijkstra.h"

namespace planar_oracle {

// Strictly external DDGs of tuples of same-division pieces, computed top-down
// over the marked r-sequence: each tuple is derived from the tuple of its
// enclosing pieces one level up, memoized by sorted node ids.
class ExternalDdgBuilder {
 public:
  explicit ExternalDdgBuilder(const DdgStore& store);

  // tuple: distinct node ids of one marked r-division (any order).
  // Throws std::invalid_argument otherwise. Thread-safe.
  DdgPtr get(std::span<const NodeId> tuple);

  // index into the r-sequence of the finest division holding every node
  std::size_t level_of(const std::vector<NodeId>& sorted_tuple) const;
  std::size_t memo_size() const;

 private:
  DdgPtr compute(const std::vector<NodeId>& tuple, std::size_t level);
  DdgPtr enclosing_part(const std::vector<NodeId>& inside, NodeId enclosing);

  const DdgStore& store_;
  std::vector<std::vector<NodeId>> divisions_;
  std::map<std::vector<NodeId>, DdgPtr> memo_;
  mutable std::mutex mu_;
};

DdgPtr compute_ddg_external(const DdgStore& store, std::span<const NodeId> tuple);

}  // namespace planar_oracle
