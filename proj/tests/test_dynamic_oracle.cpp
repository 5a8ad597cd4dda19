#include <cmath>
#include <sstream>

#include "doctest.h"
#include "dyn_ops.h"
#include "oracles.h"
#include "planar_oracle/generators.h"

using namespace planar_oracle;

namespace {

void check_against_rebuild(const DynamicOracle& o, std::mt19937_64& rng, int queries) {
  std::vector<ArcId> ids;
  EmbeddedPlanarGraph g = o.snapshot(&ids);
  DynamicOracle fresh(g, o.params());
  auto alive = dyn_ops::alive_vertices(o);
  for (int q = 0; q < queries; ++q) {
    VertexId u = alive[rng() % alive.size()], v = alive[rng() % alive.size()];
    Distance d = o.query(u, v);
    INFO("u=" << u << " v=" << v);
    CHECK(d == fresh.query(u, v));
    CHECK(d == oracles::bellman_ford(g, u)[v]);
  }
  CHECK(o.shift_value() == ShiftConstant::for_total(g.total_weight()));
  CHECK(o.ops_since_rebuild() <= o.rebuild_threshold());
}

}  // namespace

TEST_CASE("two-vertex graph is one piece") {
  EmbeddedPlanarGraph g(2, {{0, 1, 5}}, {{0}, {0}});
  DynamicOracle o(g, {16, 8, 2});
  CHECK(o.pieces().size() == 1);
  CHECK(o.query(0, 1) == Distance::finite(5));
  CHECK(o.query(1, 0).is_unreachable());
  CHECK(o.query(1, 1) == Distance::zero());
}

TEST_CASE("no updates equals sssp") {
  auto g = generate_grid(16, 16, RandomWeights{30, 2});
  DynamicOracle o(g, {64, 8, 2});
  CHECK(o.pieces().size() <= 4 * 256 / 64);
  CHECK(o.rebuild_threshold() == 8);
  std::mt19937_64 rng(1);
  for (int q = 0; q < 100; ++q) {
    VertexId u = rng() % 256, v = rng() % 256;
    CHECK(o.query(u, v) == oracles::bellman_ford(g, u)[v]);
    CHECK(o.query(u, v, Strategy::monge) == o.query(u, v));
  }
}

TEST_CASE("construction is deterministic") {
  auto g = generate_grid(12, 12, RandomWeights{9, 4});
  DynamicOracle a(g, {36, 8, 2}), b(g, {36, 8, 2});
  REQUIRE(a.pieces().size() == b.pieces().size());
  for (std::size_t i = 0; i < a.pieces().size(); ++i) {
    CHECK(a.pieces()[i].arcs == b.pieces()[i].arcs);
    CHECK(a.pieces()[i].boundary == b.pieces()[i].boundary);
    CHECK(a.pieces()[i].ddg->same_content(*b.pieces()[i].ddg));
  }
}

TEST_CASE("identity weight update changes nothing") {
  auto g = generate_grid(8, 8, RandomWeights{9, 4});
  DynamicOracle o(g, {16, 8, 2});
  std::vector<Distance> before;
  for (VertexId v = 0; v < 64; ++v) before.push_back(o.query(0, v));
  o.set_weight(10, g.arc(10).weight);
  for (VertexId v = 0; v < 64; ++v) CHECK(o.query(0, v) == before[v]);
}

TEST_CASE("deleting a boundary vertex of a path") {
  // 0 -> 1 -> 2 -> ... -> 9, tiny r so interior vertices are shared
  std::vector<Arc> arcs;
  std::vector<std::vector<ArcId>> rot(10);
  for (VertexId i = 0; i + 1 < 10; ++i) {
    arcs.push_back({i, i + 1, 1});
    rot[i].push_back(i);
    rot[i + 1].push_back(i);
  }
  EmbeddedPlanarGraph g(10, arcs, rot);
  DynamicOracle o(g, {4, 2, 2});
  REQUIRE(o.pieces().size() > 1);
  const auto& b = o.pieces()[0].boundary;
  REQUIRE(!b.empty());
  VertexId x = b.front();
  REQUIRE(x > 0);
  REQUIRE(x < 9);
  CHECK(o.query(0, 9) == Distance::finite(9));
  o.delete_vertex(x);
  CHECK(o.query(0, 9).is_unreachable());
  CHECK(o.query(x + 1, 9) == Distance::finite(8 - x));
  CHECK_THROWS_AS(o.query(0, x), std::invalid_argument);
}

TEST_CASE("deleting an internal cut vertex") {
  auto g = generate_wheel(12, UnitWeights{});
  DynamicOracle o(g, {64, 8, 2});
  REQUIRE(o.pieces().size() == 1);
  o.delete_vertex(0);  // hub
  std::vector<ArcId> ids;
  auto h = o.snapshot(&ids);
  for (VertexId u = 1; u <= 12; ++u)
    for (VertexId v = 1; v <= 12; ++v) CHECK(o.query(u, v) == oracles::bellman_ford(h, u)[v]);
}

TEST_CASE("insertion validation") {
  auto g = generate_grid(4, 4, UnitWeights{});
  DynamicOracle o(g, {16, 4, 2});
  CHECK_THROWS_AS(o.insert_edge(0, 0, 1, 0, 0), EmbeddingError);
  CHECK_THROWS_AS(o.insert_edge(0, 1, 1, 0, 0), EmbeddingError);  // parallel
  CHECK_THROWS_AS(o.insert_edge(0, 99, 1, 0, 0), std::invalid_argument);
  CHECK_THROWS_AS(o.insert_edge(0, 5, 1, 9, 0), std::invalid_argument);
  // diagonal 0 -> 5 through the wrong corners crosses the grid
  bool rejected = false;
  for (std::size_t p = 0; p <= o.rotation(0).size() && !rejected; ++p)
    for (std::size_t q = 0; q <= o.rotation(5).size() && !rejected; ++q) {
      try {
        DynamicOracle copy = o;
        copy.insert_edge(0, 5, 1, p, q);
      } catch (const EmbeddingError&) {
        rejected = true;
      }
    }
  CHECK(rejected);
  CHECK_THROWS_AS(o.set_weight(999, 1), std::invalid_argument);
  CHECK_THROWS_AS(o.delete_edge(999), std::invalid_argument);
  CHECK_THROWS_AS(o.delete_vertex(99), std::invalid_argument);
}

TEST_CASE("random scripts match a fresh rebuild after every operation") {
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    auto g = generate_grid(12, 12, RandomWeights{20, seed});
    DynamicOracle o(g, {36, 8, 2});
    std::mt19937_64 rng(seed * 77);
    std::size_t kinds[5] = {0, 0, 0, 0, 0};
    for (int step = 0; step < 50; ++step) {
      DynOp op = dyn_ops::random_op(o, rng);
      ++kinds[static_cast<int>(op.kind)];
      INFO("seed " << seed << " step " << step);
      REQUIRE_NOTHROW(apply_dyn_op(o, op));
      check_against_rebuild(o, rng, 20);
    }
    for (std::size_t k : kinds) CHECK(k > 0);
    CHECK(o.rebuilds() > 0);
  }
}

TEST_CASE("piece sizes stay bounded between rebuilds") {
  auto g = generate_grid(16, 16, RandomWeights{20, 9});
  const std::size_t r = 64;
  DynamicOracle o(g, {r, 8, 2});
  std::mt19937_64 rng(4);
  for (int step = 0; step < 60; ++step) {
    apply_dyn_op(o, dyn_ops::random_op(o, rng));
    for (const DynPiece& p : o.pieces()) {
      CHECK(p.vertices.size() <= 2 * r);
      CHECK(p.boundary.size() <= 6 * std::sqrt(double(r)));
    }
  }
}

TEST_CASE("stored DDGs do not depend on C") {
  // same structure, one far-away weight differs: every piece without that arc
  // must be bit-identical even though C differs
  auto g = generate_grid(12, 12, RandomWeights{20, 3});
  std::vector<Arc> arcs = g.arcs();
  const ArcId changed = static_cast<ArcId>(arcs.size() - 1);
  arcs[changed].weight += 1000;
  EmbeddedPlanarGraph h(g.vertex_count(), arcs, g.rotations());
  DynamicOracle a(g, {36, 8, 2}), b(h, {36, 8, 2});
  REQUIRE(a.shift_value() != b.shift_value());
  REQUIRE(a.pieces().size() == b.pieces().size());
  std::size_t compared = 0;
  for (std::size_t i = 0; i < a.pieces().size(); ++i) {
    const auto& pa = a.pieces()[i];
    REQUIRE(pa.arcs == b.pieces()[i].arcs);
    if (std::find(pa.arcs.begin(), pa.arcs.end(), changed) != pa.arcs.end()) continue;
    CHECK(pa.ddg->weights() == b.pieces()[i].ddg->weights());
    ++compared;
  }
  CHECK(compared + 1 == a.pieces().size());
  // and a weight update that moves C leaves other pieces untouched
  DynamicOracle c(g, {36, 8, 2});
  auto before = c.pieces();
  c.set_weight(changed, arcs[changed].weight);
  for (std::size_t i = 0; i < before.size(); ++i) {
    if (std::find(before[i].arcs.begin(), before[i].arcs.end(), changed) != before[i].arcs.end()) continue;
    CHECK(before[i].ddg.get() == c.pieces()[i].ddg.get());
  }
}

TEST_CASE("script parsing and replay") {
  std::istringstream script(
      "# comment\n"
      "query 0 8\n"
      "delete_vertex 4\n"
      "query 0 8\n"
      "set 0 7   # heavier\n"
      "insert_vertex 8\n"
      "insert_edge 9 8 1 0 0\n"  // arc id 24: the grid has 24 arcs
      "query 8 9\n"
      "delete_edge 0\n");
  auto ops = parse_dyn_script(script);
  REQUIRE(ops.size() == 8);
  auto g = generate_grid(3, 3, UnitWeights{});
  DynamicOracle o(g, {4, 2, 2});
  std::vector<std::string> out;
  for (const auto& op : ops) out.push_back(apply_dyn_op(o, op));
  CHECK(out == std::vector<std::string>{"4", "ok", "4", "ok", "9", "24", "UNREACHABLE", "ok"});
  std::istringstream bad("jump 1 2\n");
  CHECK_THROWS_AS(parse_dyn_script(bad), ParseError);
  std::istringstream args("query 1\n");
  CHECK_THROWS_AS(parse_dyn_script(args), ParseError);
  std::istringstream neg("set 1 -3\n");
  CHECK_THROWS_AS(parse_dyn_script(neg), ParseError);
}
