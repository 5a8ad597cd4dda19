#pragma once

#include <array>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include <string>

#include "planar_oracle/graph.h"

namespace planar_oracle {

struct Piece {
  NodeId id = 0;
  NodeId parent = kNoNode;
  std::array<NodeId, 2> children{kNoNode, kNoNode};
  std::uint32_t depth = 0;
  std::uint32_t subtree_size = 1;  // nodes in the subtree, for preorder ancestor tests
  std::vector<VertexId> vertices;  // sorted
  std::vector<VertexId> boundary;  // sorted, subset of vertices
  std::vector<std::vector<VertexId>> holes;  // partition of boundary, each sorted
  std::vector<VertexId> boundary_cycle;      // boundary in face-walk order around the holes
  std::vector<ArcId> arcs;         // sorted

  bool is_leaf() const { return children[0] == kNoNode; }
  bool contains(VertexId v) const;
  bool is_boundary(VertexId v) const;
  // contains v but not as a boundary vertex
  bool is_internal(VertexId v) const { return contains(v) && !is_boundary(v); }
};

class DecompositionTree {
 public:
  DecompositionTree() = default;
  DecompositionTree(std::vector<Piece> pieces, std::size_t vertex_count, std::size_t leaf_size,
                    std::size_t base);

  const Piece& piece(NodeId id) const { return pieces_.at(id); }
  const std::vector<Piece>& pieces() const { return pieces_; }
  std::size_t size() const { return pieces_.size(); }
  NodeId root() const { return 0; }
  std::size_t vertex_count() const { return leaf_of_.size(); }
  std::size_t leaf_size() const { return leaf_size_; }
  std::size_t base() const { return base_; }

  NodeId leaf_of(VertexId v) const { return leaf_of_.at(v); }
  NodeId sibling(NodeId id) const;
  // a is an ancestor of d or equal to it
  bool is_ancestor(NodeId a, NodeId d) const {
    return a <= d && d < a + pieces_[a].subtree_size;
  }
  // descends from node through the lowest-id child containing v down to a leaf
  NodeId leaf_within(NodeId node, VertexId v) const;

  const std::vector<std::size_t>& r_sequence() const { return r_sequence_; }
  const std::map<std::size_t, std::vector<NodeId>>& rdivision_marks() const { return marks_; }

  std::size_t total_boundary() const;
  std::size_t total_piece_vertices() const;

 private:
  std::vector<Piece> pieces_;
  std::vector<NodeId> leaf_of_;
  std::size_t leaf_size_ = 0;
  std::size_t base_ = 2;
  std::vector<std::size_t> r_sequence_;
  std::map<std::size_t, std::vector<NodeId>> marks_;
};

// Recursive cycle-separator decomposition. leaf_size >= 2, base >= 2.
DecompositionTree build_decomposition(const EmbeddedPlanarGraph& g, std::size_t leaf_size = 32,
                                      std::size_t base = 2);

// Highest nodes with at most r vertices, in preorder. Works for any r >= 1
// (an r below the leaf sizes yields the leaves).
std::vector<NodeId> division_at_most(const DecompositionTree& t, std::size_t r);

// Marked r-division; throws std::invalid_argument for r outside the sequence.
std::vector<NodeId> extract_r_division(const DecompositionTree& t, std::size_t r);

// Highest ancestor of start whose vertex set avoids every forbidden vertex.
// Throws std::invalid_argument if start itself contains one.
NodeId highest_excluding_ancestor(const DecompositionTree& t, NodeId start,
                                  std::span<const VertexId> forbidden);

// the r-division node (for marked r) containing node, i.e. its ancestor in it
NodeId division_ancestor(const DecompositionTree& t, const std::vector<NodeId>& division, NodeId node);

// debug dump (JSON text)
std::string tree_to_json(const DecompositionTree& t);

}  // namespace planar_oracle
