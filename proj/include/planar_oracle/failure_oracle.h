#pragma once

#include <istream>
#include <memory>
#include <ostream>
#include <span>
#include <vector>

#include "planar_oracle/fr_dijkstra.h"
#include "planar_oracle/serialize.h"

namespace planar_oracle {

struct OracleParams {
  std::size_t leaf_size = 32;
  std::size_t base = 2;
};

struct QueryStats {
  std::size_t members = 0;
  std::size_t union_vertices = 0;  // sum of member vertex counts
  std::size_t distinct_vertices = 0;
  SearchStats search;
};

// Which pieces an assembled union uses, for structural checks.
struct AssemblyRecord {
  std::vector<NodeId> full_members;     // stored or plain leaf DDG°s
  std::vector<NodeId> modified_leaves;  // leaves rebuilt with extra boundary / failures removed
  std::vector<NodeId> marked;           // pieces with an internal failed vertex
};

// Adds to `out` the DDG°s representing the subtree of `top` around the given
// special vertices and failures: the leaf of each special / failure rebuilt
// with the specials as boundary and `all_failed` removed, plus the sibling
// DDG°s along those leaves' paths up to `top`, skipping marked pieces.
AssemblyRecord assemble_failure_union(const DdgStore& store, NodeId top, std::span<const VertexId> specials,
                                      std::span<const VertexId> failures_inside,
                                      std::span<const VertexId> all_failed, DdgUnion& out);

// A is represented when it is a member, a rebuilt leaf, or both of its children are.
bool is_represented(const DecompositionTree& t, const AssemblyRecord& rec, NodeId a);

// sorted, deduplicated failures; throws if an endpoint fails or an id is bad
std::vector<VertexId> normalize_failures(const EmbeddedPlanarGraph& g, VertexId u, VertexId v,
                                         std::span<const VertexId> failed);

class FailureOracle {
 public:
  FailureOracle() = default;
  static FailureOracle build(std::shared_ptr<const EmbeddedPlanarGraph> g, OracleParams params = {});

  Distance query(VertexId u, VertexId v, std::span<const VertexId> failed, Strategy strategy = Strategy::naive,
                 QueryStats* stats = nullptr) const;
  AssemblyRecord assemble(VertexId u, VertexId v, std::span<const VertexId> failed, DdgUnion& out) const;

  const EmbeddedPlanarGraph& graph() const { return *graph_; }
  const DecompositionTree& tree() const { return *tree_; }
  const DdgStore& store() const { return store_; }
  const OracleParams& params() const { return params_; }
  std::shared_ptr<const EmbeddedPlanarGraph> graph_ptr() const { return graph_; }
  std::shared_ptr<const DecompositionTree> tree_ptr() const { return tree_; }

  // HEAD..SHFT sections; r and k go into the header for the tradeoff oracle
  void write_sections(BinaryWriter& w, std::size_t r, std::size_t k) const;
  struct Header {
    std::uint64_t n, leaf_size, base, r, k;
  };
  static FailureOracle read_sections(BinaryReader& r, Header* header = nullptr);

  std::string serialize() const;
  void save(std::ostream& out) const;
  static FailureOracle load(std::istream& in);

 private:
  std::shared_ptr<const EmbeddedPlanarGraph> graph_;
  std::shared_ptr<const DecompositionTree> tree_;
  DdgStore store_;
  OracleParams params_;
};

enum class OracleMode : std::uint32_t { failure = 0, tradeoff = 1 };

void write_file_header(BinaryWriter& w, OracleMode mode);
OracleMode read_file_header(BinaryReader& r);
std::string read_all(std::istream& in);

}  // namespace planar_oracle
