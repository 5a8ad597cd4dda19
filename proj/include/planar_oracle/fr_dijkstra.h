#pragma once

#include <memory>
#include <span>
#include <string>
#include <vector>

#include "planar_oracle/ddg.h"
#include "planar_oracle/decomposition.h"
#include "planar_oracle/subgraph.h"

namespace planar_oracle {

enum class Strategy { naive, monge };

Strategy parse_strategy(const std::string& s);
const char* strategy_name(Strategy s);

// Members are DDGs and raw subgraphs; a vertex shared by several members is
// a single search node. Forbidden tails can be reached but relax nothing.
class DdgUnion {
 public:
  void add(DdgPtr ddg);
  void add(std::shared_ptr<const Subgraph> raw);
  void set_forbidden_tails(std::span<const VertexId> tails);

  const std::vector<DdgPtr>& ddgs() const { return ddgs_; }
  const std::vector<std::shared_ptr<const Subgraph>>& raws() const { return raws_; }
  const std::vector<VertexId>& forbidden_tails() const { return forbidden_; }
  std::size_t member_count() const { return ddgs_.size() + raws_.size(); }

  bool contains(VertexId v) const;
  // distinct search nodes
  const std::vector<VertexId>& vertices() const;
  // sum of member vertex counts
  std::size_t vertex_count_with_multiplicity() const;

 private:
  friend class UnionSearch;
  void index() const;

  std::vector<DdgPtr> ddgs_;
  std::vector<std::shared_ptr<const Subgraph>> raws_;
  std::vector<VertexId> forbidden_;

  // lazily built search index
  mutable bool indexed_ = false;
  mutable std::vector<VertexId> nodes_;
  mutable std::vector<std::vector<std::uint32_t>> member_nodes_;  // member, local index -> node
  mutable std::vector<std::uint32_t> occ_start_;
  mutable std::vector<std::pair<std::uint32_t, std::uint32_t>> occ_;  // (member, local index)
};

struct SearchStats {
  std::uint64_t settled = 0;
  std::uint64_t relaxations = 0;
  std::uint64_t batches = 0;
};

class SearchResult {
 public:
  SearchResult() = default;
  SearchResult(std::vector<VertexId> vertices, std::vector<Distance> dist)
      : vertices_(std::move(vertices)), dist_(std::move(dist)) {}
  // unreachable for vertices outside the union
  Distance at(VertexId v) const;
  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Distance>& distances() const { return dist_; }

 private:
  std::vector<VertexId> vertices_;
  std::vector<Distance> dist_;
};

// Exact multi-source Dijkstra over the union graph. Throws
// std::invalid_argument when a source is not in the union.
SearchResult multi_dijkstra(const DdgUnion& u, std::span<const std::pair<VertexId, Distance>> sources,
                            Strategy strategy = Strategy::naive, SearchStats* stats = nullptr);

// DDG° of every non-leaf piece, computed once; leaf DDG°s on demand.
class DdgStore {
 public:
  DdgStore() = default;
  DdgStore(std::shared_ptr<const EmbeddedPlanarGraph> g, std::shared_ptr<const DecompositionTree> t,
           ShiftConstant shift, std::vector<DdgPtr> stored);
  static DdgStore build(std::shared_ptr<const EmbeddedPlanarGraph> g, std::shared_ptr<const DecompositionTree> t,
                        ShiftConstant shift);

  // nullptr for leaves
  const DdgPtr& stored(NodeId id) const { return stored_.at(id); }
  // stored DDG°, or the leaf's computed now
  DdgPtr get(NodeId id) const;
  // leaf DDG° of (leaf minus removed) with extra boundary vertices
  DdgPtr leaf_variant(NodeId leaf, std::span<const VertexId> extra_boundary,
                      std::span<const VertexId> removed) const;

  const ShiftConstant& shift() const { return shift_; }
  const EmbeddedPlanarGraph& graph() const { return *g_; }
  const DecompositionTree& tree() const { return *t_; }
  std::size_t stored_entries() const;

 private:
  std::shared_ptr<const EmbeddedPlanarGraph> g_;
  std::shared_ptr<const DecompositionTree> t_;
  ShiftConstant shift_;
  std::vector<DdgPtr> stored_;
};

// monge layout over the piece's boundary in face-walk order
void prepare_piece_monge(DenseDistanceGraph& d, const Piece& p);

struct Cone {
  VertexId apex = 0;
  std::vector<DdgPtr> members;
  std::vector<NodeId> member_nodes;  // leaf first, then siblings bottom-up
};

// leaf DDG° with the apex as an extra boundary vertex plus sibling DDG°s
// along the leaf's root path
Cone assemble_cone(const DdgStore& store, VertexId v);

void add_cone(DdgUnion& u, const Cone& c);

}  // namespace planar_oracle
