#include "planar_oracle/decomposition.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "json.hpp"
#include "planar_oracle/separator.h"

namespace planar_oracle {

bool Piece::contains(VertexId v) const { return std::binary_search(vertices.begin(), vertices.end(), v); }
bool Piece::is_boundary(VertexId v) const { return std::binary_search(boundary.begin(), boundary.end(), v); }

namespace {

std::uint32_t index_in(const std::vector<VertexId>& sorted, VertexId v) {
  return static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

void fill_boundary(const EmbeddedPlanarGraph& g, Piece& p) {
  std::vector<std::uint32_t> deg(p.vertices.size(), 0);
  for (ArcId a : p.arcs) {
    ++deg[index_in(p.vertices, g.arc(a).tail)];
    ++deg[index_in(p.vertices, g.arc(a).head)];
  }
  for (std::size_t i = 0; i < p.vertices.size(); ++i)
    if (deg[i] < g.degree(p.vertices[i])) p.boundary.push_back(p.vertices[i]);
}

// boundary vertices grouped by the piece face their missing arcs sit in
void fill_holes(const EmbeddedPlanarGraph& g, Piece& p) {
  if (p.boundary.empty()) return;
  const auto V = p.vertices.size();
  const auto E = p.arcs.size();
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends(E);
  for (std::uint32_t e = 0; e < E; ++e)
    ends[e] = {index_in(p.vertices, g.arc(p.arcs[e]).tail), index_in(p.vertices, g.arc(p.arcs[e]).head)};
  auto local_arc = [&](ArcId a) -> std::int64_t {
    auto it = std::lower_bound(p.arcs.begin(), p.arcs.end(), a);
    return (it != p.arcs.end() && *it == a) ? it - p.arcs.begin() : -1;
  };
  std::vector<std::vector<std::uint32_t>> rot(V);
  for (std::uint32_t v = 0; v < V; ++v)
    for (ArcId a : g.rotation(p.vertices[v]))
      if (auto e = local_arc(a); e >= 0) rot[v].push_back(static_cast<std::uint32_t>(e));
  FaceStructure fs = trace_faces(ends, rot);

  std::vector<std::uint32_t> face_rep(fs.faces.size(), std::numeric_limits<std::uint32_t>::max());
  std::vector<std::uint32_t> group(p.boundary.size());
  std::iota(group.begin(), group.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (group[x] != x) x = group[x] = group[group[x]];
    return x;
  };
  for (std::uint32_t b = 0; b < p.boundary.size(); ++b) {
    VertexId v = p.boundary[b];
    auto full = g.rotation(v);
    std::uint32_t lv = index_in(p.vertices, v);
    // walk G's rotation; a corner between consecutive piece arcs is a hole
    // corner when some non-piece arc sits between them
    std::vector<std::int64_t> loc(full.size());
    std::size_t first_piece = full.size();
    for (std::size_t i = 0; i < full.size(); ++i) {
      loc[i] = local_arc(full[i]);
      if (loc[i] >= 0 && first_piece == full.size()) first_piece = i;
    }
    if (first_piece == full.size()) continue;
    std::size_t d = full.size();
    std::int64_t prev = loc[first_piece];
    bool gap = false;
    for (std::size_t step = 1; step <= d; ++step) {
      std::size_t i = (first_piece + step) % d;
      if (loc[i] < 0) {
        gap = true;
        continue;
      }
      if (gap) {
        auto e = static_cast<std::uint32_t>(prev);
        // dart of e arriving at v
        std::uint32_t dart = ends[e].second == lv ? 2 * e : 2 * e + 1;
        std::uint32_t f = fs.dart_face[dart];
        if (face_rep[f] == std::numeric_limits<std::uint32_t>::max())
          face_rep[f] = b;
        else
          group[find(b)] = find(face_rep[f]);
      }
      prev = loc[i];
      gap = false;
    }
  }
  // boundary order along the walks of the faces that carry hole corners
  std::vector<std::uint8_t> emitted(p.boundary.size(), 0);
  for (std::uint32_t f = 0; f < fs.faces.size(); ++f) {
    if (face_rep[f] == std::numeric_limits<std::uint32_t>::max()) continue;
    for (std::uint32_t dart : fs.faces[f]) {
      std::uint32_t e = dart / 2;
      VertexId v = p.vertices[dart % 2 == 0 ? ends[e].first : ends[e].second];
      auto it = std::lower_bound(p.boundary.begin(), p.boundary.end(), v);
      if (it == p.boundary.end() || *it != v) continue;
      auto b = static_cast<std::size_t>(it - p.boundary.begin());
      if (!emitted[b]) {
        emitted[b] = 1;
        p.boundary_cycle.push_back(v);
      }
    }
  }
  for (std::size_t b = 0; b < p.boundary.size(); ++b)
    if (!emitted[b]) p.boundary_cycle.push_back(p.boundary[b]);

  std::map<std::uint32_t, std::vector<VertexId>> by_root;
  for (std::uint32_t b = 0; b < p.boundary.size(); ++b) by_root[find(b)].push_back(p.boundary[b]);
  std::vector<std::vector<VertexId>> holes;
  for (auto& [r, vs] : by_root) holes.push_back(std::move(vs));
  std::sort(holes.begin(), holes.end());
  p.holes = std::move(holes);
}

class TreeBuilder {
 public:
  TreeBuilder(const EmbeddedPlanarGraph& g, std::size_t leaf_size) : g_(g), leaf_size_(leaf_size) {}

  NodeId build(PieceContent content, NodeId parent, std::uint32_t depth) {
    auto id = static_cast<NodeId>(pieces_.size());
    pieces_.emplace_back();
    {
      Piece& p = pieces_.back();
      p.id = id;
      p.parent = parent;
      p.depth = depth;
      p.vertices = content_vertices(g_, content);
      p.arcs = content.arcs;
      fill_boundary(g_, p);
      fill_holes(g_, p);
    }
    std::size_t nv = pieces_[id].vertices.size();
    if (nv > leaf_size_ && nv >= 2) {
      SplitResult split = split_piece(g_, content);
      content = PieceContent{};
      NodeId a = build(std::move(split.first), id, depth + 1);
      NodeId b = build(std::move(split.second), id, depth + 1);
      pieces_[id].children = {a, b};
    }
    pieces_[id].subtree_size = static_cast<std::uint32_t>(pieces_.size() - id);
    return id;
  }

  std::vector<Piece> take() { return std::move(pieces_); }

 private:
  const EmbeddedPlanarGraph& g_;
  std::size_t leaf_size_;
  std::vector<Piece> pieces_;
};

}  // namespace

DecompositionTree::DecompositionTree(std::vector<Piece> pieces, std::size_t n, std::size_t leaf_size,
                                     std::size_t base)
    : pieces_(std::move(pieces)), leaf_size_(leaf_size), base_(base) {
  leaf_of_.assign(n, kNoNode);
  for (const Piece& p : pieces_) {
    if (!p.is_leaf()) continue;
    for (VertexId v : p.vertices)
      if (leaf_of_[v] == kNoNode) leaf_of_[v] = p.id;
  }
  for (std::size_t r = leaf_size * base; r < n; r *= base) r_sequence_.push_back(r);
  r_sequence_.push_back(std::max<std::size_t>(n, 1));
  for (std::size_t r : r_sequence_) marks_[r] = division_at_most(*this, r);
}

NodeId DecompositionTree::sibling(NodeId id) const {
  NodeId p = pieces_.at(id).parent;
  if (p == kNoNode) return kNoNode;
  return pieces_[p].children[0] == id ? pieces_[p].children[1] : pieces_[p].children[0];
}

NodeId DecompositionTree::leaf_within(NodeId node, VertexId v) const {
  if (!pieces_.at(node).contains(v)) throw std::invalid_argument("vertex not in piece");
  while (!pieces_[node].is_leaf()) {
    const auto& ch = pieces_[node].children;
    node = pieces_[ch[0]].contains(v) ? ch[0] : ch[1];
  }
  return node;
}

std::size_t DecompositionTree::total_boundary() const {
  std::size_t s = 0;
  for (const Piece& p : pieces_) s += p.boundary.size();
  return s;
}

std::size_t DecompositionTree::total_piece_vertices() const {
  std::size_t s = 0;
  for (const Piece& p : pieces_) s += p.vertices.size();
  return s;
}

DecompositionTree build_decomposition(const EmbeddedPlanarGraph& g, std::size_t leaf_size, std::size_t base) {
  if (leaf_size < 2) throw std::invalid_argument("leaf size must be at least 2");
  if (base < 2) throw std::invalid_argument("r-sequence base must be at least 2");
  PieceContent root;
  root.arcs.resize(g.arc_count());
  std::iota(root.arcs.begin(), root.arcs.end(), 0u);
  for (VertexId v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) == 0) root.isolated.push_back(v);
  TreeBuilder tb(g, leaf_size);
  if (g.vertex_count() > 0) tb.build(std::move(root), kNoNode, 0);
  return DecompositionTree(tb.take(), g.vertex_count(), leaf_size, base);
}

std::vector<NodeId> division_at_most(const DecompositionTree& t, std::size_t r) {
  std::vector<NodeId> out;
  if (t.size() == 0) return out;
  std::vector<NodeId> stack = {t.root()};
  while (!stack.empty()) {
    NodeId x = stack.back();
    stack.pop_back();
    const Piece& p = t.piece(x);
    if (p.is_leaf() || p.vertices.size() <= r) {
      out.push_back(x);
    } else {
      stack.push_back(p.children[1]);
      stack.push_back(p.children[0]);
    }
  }
  return out;
}

std::vector<NodeId> extract_r_division(const DecompositionTree& t, std::size_t r) {
  auto it = t.rdivision_marks().find(r);
  if (it == t.rdivision_marks().end())
    throw std::invalid_argument("r = " + std::to_string(r) + " is not in the marked r-sequence");
  return it->second;
}

NodeId highest_excluding_ancestor(const DecompositionTree& t, NodeId start, std::span<const VertexId> forbidden) {
  auto disjoint = [&](NodeId id) {
    const Piece& p = t.piece(id);
    return std::none_of(forbidden.begin(), forbidden.end(), [&](VertexId x) { return p.contains(x); });
  };
  if (!disjoint(start)) throw std::invalid_argument("starting piece contains a forbidden vertex");
  NodeId cur = start;
  while (t.piece(cur).parent != kNoNode && disjoint(t.piece(cur).parent)) cur = t.piece(cur).parent;
  return cur;
}

NodeId division_ancestor(const DecompositionTree& t, const std::vector<NodeId>& division, NodeId node) {
  auto it = std::upper_bound(division.begin(), division.end(), node);
  if (it == division.begin()) return kNoNode;
  NodeId cand = *(it - 1);
  return t.is_ancestor(cand, node) ? cand : kNoNode;
}

std::string tree_to_json(const DecompositionTree& t) {
  nlohmann::ordered_json j;
  j["vertex_count"] = t.vertex_count();
  j["leaf_size"] = t.leaf_size();
  j["base"] = t.base();
  j["r_sequence"] = t.r_sequence();
  nlohmann::ordered_json marks = nlohmann::ordered_json::object();
  for (auto& [r, ids] : t.rdivision_marks()) marks[std::to_string(r)] = ids;
  j["rdivision_marks"] = marks;
  nlohmann::ordered_json pieces = nlohmann::ordered_json::array();
  for (const Piece& p : t.pieces()) {
    nlohmann::ordered_json q;
    q["id"] = p.id;
    q["parent"] = p.parent == kNoNode ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(p.parent);
    if (!p.is_leaf()) q["children"] = {p.children[0], p.children[1]};
    q["depth"] = p.depth;
    q["vertex_count"] = p.vertices.size();
    q["arc_count"] = p.arcs.size();
    q["boundary"] = p.boundary;
    q["holes"] = p.holes;
    pieces.push_back(std::move(q));
  }
  j["pieces"] = std::move(pieces);
  return j.dump(2);
}

}  // namespace planar_oracle
