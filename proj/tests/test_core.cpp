#include <random>
#include <sstream>

#include "doctest.h"
#include "oracles.h"
#include "planar_oracle/generators.h"
#include "planar_oracle/graph.h"
#include "planar_oracle/shortest_paths.h"

using namespace planar_oracle;

namespace {

EmbeddedPlanarGraph path_abc() {
  // a=0 -> b=1 -> c=2
  return EmbeddedPlanarGraph(3, {{0, 1, 1}, {1, 2, 1}}, {{0}, {0, 1}, {1}});
}

std::string to_text(const EmbeddedPlanarGraph& g) {
  std::ostringstream out;
  save_graph(g, out);
  return out.str();
}

}  // namespace

TEST_CASE("distance value ordering and saturation") {
  CHECK(Distance::finite(5) < Distance::unreachable());
  CHECK(Distance::finite(0) < Distance::finite(1));
  CHECK((Distance::finite(3) + Distance::unreachable()).is_unreachable());
  CHECK((Distance::finite(Distance::kMaxFinite) + Distance::finite(7)).value() == Distance::kMaxFinite);
  CHECK(Distance::unreachable().to_string() == "UNREACHABLE");
  CHECK(Distance::finite(12).to_string() == "12");
}

TEST_CASE("load minimal graph") {
  std::istringstream in("2 1\n0 1 5\n0\n0\n");
  auto g = load_graph(in);
  CHECK(g.vertex_count() == 2);
  CHECK(g.arc_count() == 1);
  CHECK(g.arc(0).weight == 5);
  CHECK(g.face_count() == 1);
}

TEST_CASE("comments and isolated vertices") {
  std::istringstream in("# header comment\n3 1 # n m\n0 1 5\n# rotations\n0\n0\n\n");
  auto g = load_graph(in);
  CHECK(g.vertex_count() == 3);
  CHECK(g.degree(2) == 0);
  std::istringstream again(to_text(g));
  CHECK(load_graph(again) == g);
}

TEST_CASE("parse errors carry line numbers") {
  std::istringstream in("2 1\n0 x 5\n0\n0\n");
  try {
    load_graph(in);
    FAIL("expected parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
  }
  std::istringstream short_arcs("2 2\n0 1 5\n");
  CHECK_THROWS_AS(load_graph(short_arcs), ParseError);
}

TEST_CASE("embedding validation") {
  SUBCASE("rotation omits an arc") {
    std::istringstream in("2 1\n0 1 5\n0\n\n");
    CHECK_THROWS_AS(load_graph(in), EmbeddingError);
  }
  SUBCASE("self loop and parallel arcs") {
    CHECK_THROWS_AS(EmbeddedPlanarGraph(1, {{0, 0, 1}}, {{0, 0}}), EmbeddingError);
    CHECK_THROWS_AS(EmbeddedPlanarGraph(2, {{0, 1, 1}, {0, 1, 2}}, {{0, 1}, {0, 1}}), EmbeddingError);
  }
  SUBCASE("non-planar rotation on K4 fails Euler") {
    // K4 with edges 01 02 03 12 13 23 (one direction each); a bad rotation
    std::vector<Arc> arcs = {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}};
    std::vector<std::vector<ArcId>> good = {{0, 1, 2}, {0, 4, 3}, {1, 3, 5}, {2, 5, 4}};
    CHECK_NOTHROW(EmbeddedPlanarGraph(4, arcs, good));
    std::vector<std::vector<ArcId>> bad = {{0, 1, 2}, {0, 3, 4}, {1, 3, 5}, {2, 5, 4}};
    CHECK_THROWS_AS(EmbeddedPlanarGraph(4, arcs, bad), EmbeddingError);
  }
  SUBCASE("weight overflow") {
    Weight big = Weight{1} << 62;
    CHECK_THROWS_AS(EmbeddedPlanarGraph(3, {{0, 1, big}, {1, 2, big}}, {{0}, {0, 1}, {1}}),
                    WeightOverflowError);
  }
  SUBCASE("every single-arc rotation deletion is rejected") {
    auto g = generate_grid(3, 3, UnitWeights{});
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
      for (std::size_t i = 0; i < g.degree(v); ++i) {
        auto rot = g.rotations();
        rot[v].erase(rot[v].begin() + static_cast<long>(i));
        CHECK_THROWS_AS(EmbeddedPlanarGraph(g.vertex_count(), g.arcs(), rot), EmbeddingError);
      }
    }
  }
}

TEST_CASE("generators validate and are deterministic") {
  auto g12 = generate_grid(1, 2, UnitWeights{});
  CHECK(g12.vertex_count() == 2);
  CHECK(g12.arc_count() == 2);
  for (const Arc& a : g12.arcs()) CHECK(a.weight == 1);

  auto a = generate_grid(32, 32, RandomWeights{100, 7});
  auto b = generate_grid(32, 32, RandomWeights{100, 7});
  CHECK(to_text(a) == to_text(b));
  auto c = generate_grid(32, 32, RandomWeights{100, 8});
  CHECK(to_text(a) != to_text(c));

  auto g3 = generate_grid(3, 3, UnitWeights{});
  std::istringstream in(to_text(g3));
  CHECK(load_graph(in) == g3);

  auto t = generate_triangulation(500, RandomWeights{50, 3}, 11);
  CHECK(t.vertex_count() == 500);
  CHECK(t.arc_count() == 2 * (3 * 500 - 6));
  CHECK(to_text(t) == to_text(generate_triangulation(500, RandomWeights{50, 3}, 11)));

  auto w = generate_wheel(7, UnitWeights{});
  CHECK(w.arc_count() == 28);
  CHECK(w.face_count() == 2 * 14 - 8 + 2);  // digons inside plus triangles
  CHECK_THROWS(generate_grid(0, 3, UnitWeights{}));
}

TEST_CASE("sssp basics") {
  auto p = path_abc();
  auto d = sssp(p, 0);
  CHECK(d[0] == Distance::finite(0));
  CHECK(d[1] == Distance::finite(1));
  CHECK(d[2] == Distance::finite(2));
  CHECK(sssp(p, 2)[0].is_unreachable());

  auto g = generate_grid(3, 3, UnitWeights{});
  CHECK(sssp(g, 0)[8] == Distance::finite(4));
  CHECK_THROWS(sssp(g, 9));
}

TEST_CASE("sssp matches Bellman-Ford") {
  auto g = generate_grid(8, 8, RandomWeights{100, 5});
  CHECK(sssp(g, 0) == oracles::bellman_ford(g, 0));
  auto t = generate_triangulation(300, RandomWeights{1000, 9}, 4);
  for (VertexId s : {0u, 17u, 299u}) CHECK(sssp(t, s) == oracles::bellman_ford(t, s));
}

TEST_CASE("distance_avoiding") {
  auto p = path_abc();
  VertexId b = 1;
  CHECK(distance_avoiding(p, 0, 2, std::span(&b, 1)).is_unreachable());
  auto g = generate_grid(3, 3, UnitWeights{});
  VertexId center = 4;
  CHECK(distance_avoiding(g, 0, 8, std::span(&center, 1)) == Distance::finite(4));
  VertexId zero = 0;
  CHECK_THROWS_AS(distance_avoiding(g, 0, 8, std::span(&zero, 1)), std::invalid_argument);

  auto r = generate_grid(8, 8, RandomWeights{20, 1});
  std::mt19937_64 rng(3);
  for (int q = 0; q < 50; ++q) {
    VertexId u = rng() % 64, v = rng() % 64;
    std::vector<VertexId> x;
    std::set<VertexId> xs;
    for (int i = 0; i < 3; ++i) {
      VertexId c = rng() % 64;
      if (c != u && c != v) {
        x.push_back(c);
        xs.insert(c);
      }
    }
    Distance got = distance_avoiding(r, u, v, x);
    CHECK(got == oracles::avoiding_except(r, u, v, xs));
    CHECK(got >= distance_avoiding(r, u, v, {}));
    CHECK(distance_avoiding(r, u, v, {}) == sssp(r, u)[v]);
  }
}
