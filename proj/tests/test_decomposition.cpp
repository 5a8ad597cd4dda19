#include <map>
#include <random>
#include <set>

#include "doctest.h"
#include "planar_oracle/decomposition.h"
#include "planar_oracle/generators.h"
#include "planar_oracle/separator.h"

using namespace planar_oracle;

namespace {

void check_structure(const EmbeddedPlanarGraph& g, const DecompositionTree& t) {
  REQUIRE(t.size() >= 1);
  const Piece& root = t.piece(t.root());
  CHECK(root.vertices.size() == g.vertex_count());
  CHECK(root.arcs.size() == g.arc_count());
  CHECK(root.boundary.empty());
  std::map<std::uint32_t, std::set<VertexId>> internal_at_depth;
  for (const Piece& p : t.pieces()) {
    CHECK(std::is_sorted(p.vertices.begin(), p.vertices.end()));
    for (VertexId b : p.boundary) CHECK(p.contains(b));
    std::size_t in_holes = 0;
    std::set<VertexId> hole_members;
    for (auto& h : p.holes) {
      in_holes += h.size();
      hole_members.insert(h.begin(), h.end());
    }
    CHECK(in_holes == p.boundary.size());
    CHECK(hole_members.size() == p.boundary.size());
    for (VertexId v : p.vertices) {
      if (p.is_boundary(v)) continue;
      CHECK(internal_at_depth[p.depth].insert(v).second);
    }
    if (p.is_leaf()) {
      CHECK(p.vertices.size() <= t.leaf_size());
      continue;
    }
    const Piece& a = t.piece(p.children[0]);
    const Piece& b = t.piece(p.children[1]);
    CHECK(a.parent == p.id);
    CHECK(b.parent == p.id);
    CHECK(t.sibling(a.id) == b.id);
    std::vector<ArcId> merged;
    std::merge(a.arcs.begin(), a.arcs.end(), b.arcs.begin(), b.arcs.end(), std::back_inserter(merged));
    CHECK(merged == p.arcs);  // edge-disjoint cover
    std::set<VertexId> cover(a.vertices.begin(), a.vertices.end());
    cover.insert(b.vertices.begin(), b.vertices.end());
    CHECK(std::vector<VertexId>(cover.begin(), cover.end()) == p.vertices);
    for (const Piece* c : {&a, &b}) {
      const Piece& other = c == &a ? b : a;
      for (VertexId x : c->boundary) CHECK((p.is_boundary(x) || other.contains(x)));
      CHECK(t.is_ancestor(p.id, c->id));
      CHECK(!t.is_ancestor(c->id, p.id));
    }
  }
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    NodeId l = t.leaf_of(v);
    CHECK(t.piece(l).is_leaf());
    CHECK(t.piece(l).contains(v));
    for (const Piece& p : t.pieces())
      if (p.is_leaf() && p.contains(v)) {
        CHECK(l <= p.id);
        break;
      }
  }
}

void check_division(const EmbeddedPlanarGraph& g, const DecompositionTree& t, const std::vector<NodeId>& div) {
  std::vector<ArcId> all;
  std::set<VertexId> verts;
  for (NodeId id : div) {
    all.insert(all.end(), t.piece(id).arcs.begin(), t.piece(id).arcs.end());
    verts.insert(t.piece(id).vertices.begin(), t.piece(id).vertices.end());
    for (NodeId other : div)
      if (other != id) CHECK(!t.is_ancestor(id, other));
  }
  std::sort(all.begin(), all.end());
  CHECK(all.size() == g.arc_count());
  CHECK(std::adjacent_find(all.begin(), all.end()) == all.end());
  CHECK(verts.size() == g.vertex_count());
}

}  // namespace

TEST_CASE("single vertex") {
  EmbeddedPlanarGraph g(1, {}, {{}});
  auto t = build_decomposition(g, 32, 2);
  CHECK(t.size() == 1);
  CHECK(t.piece(0).is_leaf());
  CHECK(t.piece(0).boundary.empty());
  CHECK(extract_r_division(t, 1) == std::vector<NodeId>{0});
}

TEST_CASE("argument validation") {
  auto g = generate_grid(3, 3, UnitWeights{});
  CHECK_THROWS(build_decomposition(g, 1, 2));
  CHECK_THROWS(build_decomposition(g, 4, 1));
}

TEST_CASE("4x4 grid splits respect balance") {
  auto g = generate_grid(4, 4, UnitWeights{});
  auto t = build_decomposition(g, 4, 2);
  check_structure(g, t);
  for (const Piece& p : t.pieces()) {
    if (p.is_leaf()) continue;
    PieceContent c{p.arcs, {}};
    SplitResult s = split_piece(g, c);
    CHECK(s.first.arcs == t.piece(p.children[0]).arcs);
    std::size_t limit = (2 * p.vertices.size() + 2) / 3 + s.separator.size();
    CHECK(t.piece(p.children[0]).vertices.size() <= limit);
    CHECK(t.piece(p.children[1]).vertices.size() <= limit);
  }
}

TEST_CASE("structure on assorted graphs") {
  check_structure(generate_grid(1, 2, UnitWeights{}), build_decomposition(generate_grid(1, 2, UnitWeights{}), 2, 2));
  for (std::size_t leaf : {2, 4, 8, 32}) {
    auto g = generate_grid(12, 9, RandomWeights{10, 3});
    check_structure(g, build_decomposition(g, leaf, 2));
  }
  auto tri = generate_triangulation(600, RandomWeights{10, 3}, 5);
  check_structure(tri, build_decomposition(tri, 16, 2));
  auto wheel = generate_wheel(40, UnitWeights{});
  check_structure(wheel, build_decomposition(wheel, 4, 2));
  // disconnected: two paths and an isolated vertex
  EmbeddedPlanarGraph dis(7, {{0, 1, 1}, {1, 2, 1}, {3, 4, 1}, {4, 5, 1}},
                          {{0}, {0, 1}, {1}, {2}, {2, 3}, {3}, {}});
  auto td = build_decomposition(dis, 2, 2);
  check_structure(dis, td);
}

TEST_CASE("r-divisions") {
  auto g = generate_grid(16, 16, RandomWeights{50, 2});
  auto t = build_decomposition(g, 8, 2);
  const auto& seq = t.r_sequence();
  REQUIRE(seq.size() >= 3);
  CHECK(seq.front() == 16);
  CHECK(seq.back() == 256);
  CHECK(extract_r_division(t, 256) == std::vector<NodeId>{t.root()});
  CHECK_THROWS_AS(extract_r_division(t, 17), std::invalid_argument);
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto div = extract_r_division(t, seq[i]);
    check_division(g, t, div);
    for (NodeId id : div) CHECK((t.piece(id).vertices.size() <= seq[i] || t.piece(id).is_leaf()));
    if (i + 1 < seq.size()) {
      auto up = extract_r_division(t, seq[i + 1]);
      for (NodeId id : div) CHECK(division_ancestor(t, up, id) != kNoNode);
    }
  }
  // finest division on an 8x8 grid covers all arcs
  auto g8 = generate_grid(8, 8, UnitWeights{});
  auto t8 = build_decomposition(g8, 8, 2);
  check_division(g8, t8, extract_r_division(t8, t8.r_sequence().front()));
}

TEST_CASE("highest excluding ancestor") {
  auto g = generate_grid(8, 8, RandomWeights{9, 1});
  auto t = build_decomposition(g, 4, 2);
  NodeId leaf = t.leaf_of(0);
  CHECK(highest_excluding_ancestor(t, leaf, {}) == t.root());
  VertexId inside = t.piece(leaf).vertices.back();
  CHECK_THROWS_AS(highest_excluding_ancestor(t, leaf, std::span(&inside, 1)), std::invalid_argument);

  // a vertex only in the sibling
  NodeId sib = t.sibling(leaf);
  for (VertexId x : t.piece(sib).vertices) {
    if (t.piece(leaf).contains(x)) continue;
    NodeId q = highest_excluding_ancestor(t, leaf, std::span(&x, 1));
    CHECK(q == leaf);
    break;
  }

  std::mt19937_64 rng(17);
  for (int it = 0; it < 300; ++it) {
    VertexId v = rng() % 64;
    NodeId start = t.leaf_of(v);
    std::vector<VertexId> f;
    while (f.size() < 2) {
      VertexId x = rng() % 64;
      if (!t.piece(start).contains(x)) f.push_back(x);
    }
    NodeId naive = start;
    for (NodeId cur = start; cur != kNoNode; cur = t.piece(cur).parent) {
      bool clash = false;
      for (VertexId x : f)
        for (VertexId y : t.piece(cur).vertices) clash |= x == y;
      if (clash) break;
      naive = cur;
    }
    CHECK(highest_excluding_ancestor(t, start, f) == naive);
  }
}

TEST_CASE("boundary totals stay linear") {
  std::vector<double> ratios;
  for (std::size_t side : {16, 32, 64}) {
    auto g = generate_grid(side, side, RandomWeights{100, side});
    auto t = build_decomposition(g, 32, 2);
    ratios.push_back(double(t.total_boundary()) / double(g.vertex_count()));
  }
  MESSAGE("sum boundary / n: " << ratios[0] << " " << ratios[1] << " " << ratios[2]);
  for (double r : ratios) CHECK(r < 8.0);
  CHECK(*std::max_element(ratios.begin(), ratios.end()) <= 2.0 * *std::min_element(ratios.begin(), ratios.end()));
}

TEST_CASE("json dump") {
  auto g = generate_grid(3, 3, UnitWeights{});
  auto t = build_decomposition(g, 4, 2);
  std::string js = tree_to_json(t);
  CHECK(js.find("\"pieces\"") != std::string::npos);
  CHECK(js == tree_to_json(build_decomposition(g, 4, 2)));
}
