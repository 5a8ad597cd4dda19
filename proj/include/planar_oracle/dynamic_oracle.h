#pragma once

#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "planar_oracle/failure_oracle.h"

namespace planar_oracle {

struct DynamicParams {
  std::size_t r = 64;
  std::size_t leaf_size = 8;
  std::size_t base = 2;
};

// One piece of the maintained r-division. Arc ids are the oracle's stable ids.
struct DynPiece {
  std::vector<ArcId> arcs;        // alive arcs only
  std::vector<VertexId> vertices;  // sorted, includes vertices left without arcs
  std::vector<VertexId> boundary;  // vertices shared with another piece
  DdgPtr ddg;
  std::shared_ptr<const Subgraph> raw;
};

// Exact distances under updates over a single-level r-division; everything is
// rebuilt from scratch after ceil(sqrt(r)) updates.
class DynamicOracle {
 public:
  DynamicOracle(const EmbeddedPlanarGraph& g, DynamicParams params);

  void set_weight(ArcId arc, Weight w);
  // the new arc sits at tail_pos / head_pos of the two rotations; throws
  // EmbeddingError when the embedding would stop being planar
  ArcId insert_edge(VertexId tail, VertexId head, Weight w, std::size_t tail_pos, std::size_t head_pos);
  void delete_edge(ArcId arc);
  VertexId insert_vertex(std::optional<VertexId> near = std::nullopt);
  void delete_vertex(VertexId v);

  Distance query(VertexId u, VertexId v, Strategy strategy = Strategy::naive, QueryStats* stats = nullptr) const;

  std::size_t vertex_count() const { return alive_.size(); }
  bool vertex_alive(VertexId v) const { return v < alive_.size() && alive_[v]; }
  bool arc_alive(ArcId a) const { return a < arc_alive_.size() && arc_alive_[a]; }
  const Arc& arc(ArcId a) const { return arcs_.at(a); }
  std::size_t arc_id_bound() const { return arcs_.size(); }
  const std::vector<ArcId>& rotation(VertexId v) const { return rotation_.at(v); }
  const std::vector<DynPiece>& pieces() const { return pieces_; }
  const std::vector<VertexId>& deleted_boundary() const { return deleted_boundary_; }
  Weight shift_value() const { return shift_.value(); }
  Weight total_weight() const { return total_weight_; }
  std::size_t ops_since_rebuild() const { return ops_; }
  std::size_t rebuild_threshold() const { return threshold_; }
  std::size_t rebuilds() const { return rebuilds_; }
  const DynamicParams& params() const { return params_; }

  // current graph with alive arcs renumbered densely; arc_ids[i] is the
  // stable id of arc i. Deleted vertices stay as isolated ids.
  EmbeddedPlanarGraph snapshot(std::vector<ArcId>* arc_ids = nullptr) const;

 private:
  void rebuild();
  void recompute(std::size_t piece);
  void refresh_raw(std::size_t piece);
  void finish_op();
  std::size_t lowest_piece(VertexId v) const;
  void add_member(std::size_t piece, VertexId v, std::vector<std::size_t>& dirty);
  void check_arc(ArcId a) const;
  void check_alive(VertexId v) const;
  void set_total(Weight total);

  DynamicParams params_;
  std::vector<Arc> arcs_;
  std::vector<std::uint8_t> arc_alive_;
  std::vector<std::vector<ArcId>> rotation_;
  std::vector<std::uint8_t> alive_;
  std::vector<std::size_t> arc_piece_;
  std::vector<std::vector<std::size_t>> pieces_of_;  // sorted piece indices per vertex
  std::vector<DynPiece> pieces_;
  std::vector<VertexId> deleted_boundary_;  // sorted
  ShiftConstant shift_;
  Weight total_weight_ = 0;
  std::size_t ops_ = 0, threshold_ = 1, rebuilds_ = 0;
};

// Update scripts: one operation per line, '#' comments.
//   set <arc> <w> | insert_edge <tail> <head> <w> <tail_pos> <head_pos>
//   delete_edge <arc> | insert_vertex [near] | delete_vertex <v> | query <u> <v>
struct DynOp {
  enum class Kind { set_weight, insert_edge, delete_edge, insert_vertex, delete_vertex, query } kind;
  std::vector<std::uint64_t> args;
  std::size_t line = 0;
};

std::vector<DynOp> parse_dyn_script(std::istream& in);
// applies op; returns the CSV result field (distance, new id, or "ok")
std::string apply_dyn_op(DynamicOracle& o, const DynOp& op, Strategy strategy = Strategy::naive);

}  // namespace planar_oracle
