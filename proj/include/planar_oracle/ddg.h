#pragma once

#include <memory>
#include <span>
#include <vector>

#include "planar_oracle/decomposition.h"
#include "planar_oracle/graph.h"

namespace planar_oracle {

struct MongeLayout;

enum class DdgVariant : std::uint8_t { standard = 0, strict_internal = 1, strict_external = 2 };

const char* variant_name(DdgVariant v);

// Complete digraph on a sorted vertex list, dense row-major weights.
class DenseDistanceGraph {
 public:
  DenseDistanceGraph() = default;
  DenseDistanceGraph(DdgVariant variant, std::vector<VertexId> vertices, std::vector<Distance> weights,
                     std::vector<NodeId> source_pieces = {});

  DdgVariant variant() const { return variant_; }
  const std::vector<VertexId>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  const std::vector<Distance>& weights() const { return weights_; }
  const std::vector<NodeId>& source_pieces() const { return sources_; }

  Distance at(std::size_t i, std::size_t j) const { return weights_[i * vertices_.size() + j]; }
  const Distance* row(std::size_t i) const { return weights_.data() + i * vertices_.size(); }
  // smallest finite off-diagonal entry of row i, unreachable if none
  Distance row_min(std::size_t i) const { return row_min_[i]; }
  std::int64_t index_of(VertexId v) const;
  // throws std::out_of_range when u or v is not a vertex of this DDG
  Distance weight(VertexId u, VertexId v) const;

  // optional quadtree of Monge blocks used by the monge search strategy;
  // order lists matrix indices in the sequence the blocks are laid over
  void prepare_monge(const std::vector<std::uint32_t>& order);
  const MongeLayout* monge() const { return monge_.get(); }

  bool same_content(const DenseDistanceGraph& o) const {
    return variant_ == o.variant_ && vertices_ == o.vertices_ && weights_ == o.weights_ && sources_ == o.sources_;
  }

 private:
  DdgVariant variant_ = DdgVariant::standard;
  std::vector<VertexId> vertices_;
  std::vector<Distance> weights_;
  std::vector<NodeId> sources_;
  std::vector<Distance> row_min_;
  std::shared_ptr<const MongeLayout> monge_;
};

using DdgPtr = std::shared_ptr<const DenseDistanceGraph>;

// Placeholder for C = 2 * total weight shared by every copy. Shifted labels
// only ever compare against it, so stored residuals never depend on it.
class ShiftConstant {
 public:
  explicit ShiftConstant(Weight total_weight = 0)
      : slot_(std::make_shared<Weight>(for_total(total_weight))) {}
  Weight value() const { return *slot_; }
  void update(Weight total_weight) { *slot_ = for_total(total_weight); }
  void set_raw(Weight c) { *slot_ = c; }
  static Weight for_total(Weight total) { return total == 0 ? 1 : 2 * total; }

 private:
  std::shared_ptr<Weight> slot_;
};

// Strictly internal DDG of the arc set with the given boundary: Dijkstra in
// the shifted graph (C added to every arc leaving a boundary vertex) from each
// boundary vertex, keeping labels below 2C and subtracting C. Vertices in
// `removed` are deleted first.
DenseDistanceGraph compute_strict_ddg(const EmbeddedPlanarGraph& g, std::span<const ArcId> arcs,
                                      std::span<const VertexId> boundary, const ShiftConstant& shift,
                                      std::span<const VertexId> removed = {},
                                      std::vector<NodeId> source_pieces = {});
DenseDistanceGraph compute_strict_ddg(std::span<const Arc> arc_table, std::span<const ArcId> arcs,
                                      std::span<const VertexId> boundary, const ShiftConstant& shift,
                                      std::span<const VertexId> removed = {},
                                      std::vector<NodeId> source_pieces = {});

// Plain in-subgraph distances between boundary vertices.
DenseDistanceGraph compute_standard_ddg(const EmbeddedPlanarGraph& g, std::span<const ArcId> arcs,
                                        std::span<const VertexId> boundary,
                                        std::vector<NodeId> source_pieces = {});

DenseDistanceGraph compute_ddg_internal(const EmbeddedPlanarGraph& g, const DecompositionTree& t, NodeId piece,
                                        const ShiftConstant& shift);

// all-pairs min-plus closure (Floyd-Warshall), returned as a standard DDG
DenseDistanceGraph min_plus_closure(const DenseDistanceGraph& d);

struct PieceDistanceTable {
  NodeId piece = kNoNode;
  std::vector<VertexId> sources;  // boundary of the piece
  std::vector<VertexId> targets;  // all vertices of the piece
  std::vector<Distance> dist;     // sources x targets, row-major

  Distance at(VertexId s, VertexId v) const;
  const Distance* row(std::size_t source_index) const { return dist.data() + source_index * targets.size(); }
};

PieceDistanceTable compute_piece_distance_table(const EmbeddedPlanarGraph& g, const Piece& piece);

}  // namespace planar_oracle
