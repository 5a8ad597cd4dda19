#pragma once

#include <istream>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <span>
#include <variant>
#include <vector>

#include "planar_oracle/failure_oracle.h"

namespace planar_oracle {

struct TradeoffParams {
  std::size_t leaf_size = 32;
  std::size_t base = 2;
  std::size_t r = 0;  // 0 picks the smallest marked r
  std::size_t k = 1;
};

// Everything stored for one tuple of r-division pieces.
struct TupleData {
  DdgPtr ext;  // strict external DDG, vertices = union of the tuple boundaries
  // sibling piece Q -> |ext vertices| x |∂Q| table (row y, column s):
  // d(y, s) in G minus the tuple pieces except y; unreachable for other tuple vertices
  std::map<NodeId, std::vector<Distance>> vor;
};

enum class QueryPath { trivial, main, fallback };

class TradeoffOracle {
 public:
  TradeoffOracle() = default;
  static TradeoffOracle build(std::shared_ptr<const EmbeddedPlanarGraph> g, TradeoffParams params);
  // reuse an existing decomposition and DDG°s
  static TradeoffOracle build(FailureOracle base, std::size_t r, std::size_t k);

  // at most k distinct failures; endpoints must not fail
  Distance query(VertexId u, VertexId v, std::span<const VertexId> failed, Strategy strategy = Strategy::naive,
                 QueryStats* stats = nullptr, QueryPath* path = nullptr) const;

  const FailureOracle& base() const { return base_; }
  std::size_t r() const { return r_; }
  std::size_t k() const { return k_; }
  std::size_t tuple_size() const { return tuple_size_; }
  const std::vector<NodeId>& division() const { return division_; }
  const std::map<std::vector<NodeId>, TupleData>& tuples() const { return tuples_; }
  // throws std::out_of_range for an unknown tuple (order does not matter)
  const TupleData& tuple(std::vector<NodeId> pieces) const;
  const std::map<NodeId, PieceDistanceTable>& piece_tables() const { return tables_; }
  // the r-division piece chosen for v
  NodeId piece_of(VertexId v) const;

  std::string serialize() const;
  void save(std::ostream& out) const;
  static TradeoffOracle load(std::istream& in);

 private:
  std::optional<Distance> main_path(VertexId u, VertexId v, const std::vector<VertexId>& elements,
                                    const std::vector<VertexId>& x, Strategy strategy, QueryStats* stats) const;
  Distance fallback(VertexId u, VertexId v, const std::vector<VertexId>& elements, const std::vector<VertexId>& x,
                    Strategy strategy, QueryStats* stats) const;
  void pad(std::vector<NodeId>& tuple, NodeId avoid_subtree) const;
  static TradeoffOracle from_sections(FailureOracle base, BinaryReader& r);

  FailureOracle base_;
  std::size_t r_ = 0, k_ = 0, tuple_size_ = 0;
  std::vector<NodeId> division_;
  std::map<std::vector<NodeId>, TupleData> tuples_;
  std::map<NodeId, PieceDistanceTable> tables_;
};

// Siblings of root-path nodes of the tuple pieces that hold no tuple piece.
std::vector<NodeId> tuple_sibling_set(const DecompositionTree& t, const std::vector<NodeId>& tuple);

using AnyOracle = std::variant<FailureOracle, TradeoffOracle>;

AnyOracle load_oracle(std::istream& in);
Distance query_oracle(const AnyOracle& o, VertexId u, VertexId v, std::span<const VertexId> failed,
                      Strategy strategy = Strategy::naive, QueryStats* stats = nullptr);
const FailureOracle& base_of(const AnyOracle& o);

}  // namespace planar_oracle
