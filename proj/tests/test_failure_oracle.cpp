#include <random>
#include <sstream>

#include "doctest.h"
#include "planar_oracle/failure_oracle.h"
#include "planar_oracle/generators.h"
#include "planar_oracle/shortest_paths.h"

using namespace planar_oracle;

namespace {

std::shared_ptr<const EmbeddedPlanarGraph> share(EmbeddedPlanarGraph g) {
  return std::make_shared<const EmbeddedPlanarGraph>(std::move(g));
}

std::vector<VertexId> random_failures(std::mt19937_64& rng, std::size_t n, std::size_t k, VertexId u, VertexId v) {
  std::vector<VertexId> x;
  while (x.size() < k) {
    VertexId c = static_cast<VertexId>(rng() % n);
    if (c != u && c != v && std::find(x.begin(), x.end(), c) == x.end()) x.push_back(c);
  }
  return x;
}

}  // namespace

TEST_CASE("single vertex oracle") {
  auto o = FailureOracle::build(share(EmbeddedPlanarGraph(1, {}, {{}})));
  CHECK(o.store().stored_entries() == 0);
  CHECK(o.query(0, 0, {}) == Distance::zero());
}

TEST_CASE("path in one leaf") {
  auto o = FailureOracle::build(share(EmbeddedPlanarGraph(3, {{0, 1, 1}, {1, 2, 1}}, {{0}, {0, 1}, {1}})));
  VertexId b = 1;
  CHECK(o.query(0, 2, {}) == Distance::finite(2));
  CHECK(o.query(0, 2, std::span(&b, 1)).is_unreachable());
  CHECK_THROWS_AS(o.query(0, 1, std::span(&b, 1)), std::invalid_argument);
  CHECK_THROWS(o.query(0, 3, {}));
}

TEST_CASE("3x3 grid smoke") {
  auto g = share(generate_grid(3, 3, UnitWeights{}));
  auto o = FailureOracle::build(g, {4, 2});
  MESSAGE("stored entries: " << o.store().stored_entries());
  VertexId center = 4;
  CHECK(o.query(0, 8, {}) == Distance::finite(4));
  CHECK(o.query(0, 8, std::span(&center, 1)) == Distance::finite(4));
}

TEST_CASE("exactness against brute force on a 16x16 grid") {
  auto g = share(generate_grid(16, 16, RandomWeights{100, 3}));
  auto o = FailureOracle::build(g, {16, 2});
  std::mt19937_64 rng(44);
  for (int q = 0; q < 200; ++q) {
    VertexId u = rng() % 256, v = rng() % 256;
    auto x = random_failures(rng, 256, 1 + q % 4, u, v);
    Distance want = distance_avoiding(*g, u, v, x);
    CHECK(o.query(u, v, x, Strategy::naive) == want);
    CHECK(o.query(u, v, x, Strategy::monge) == want);
  }
}

TEST_CASE("exactness with small leaves, zero weights and a triangulation") {
  std::vector<std::shared_ptr<const EmbeddedPlanarGraph>> graphs = {
      share(generate_grid(9, 11, RandomWeights{3, 5})),
      share(generate_triangulation(300, RandomWeights{50, 1}, 2)),
      share(generate_wheel(30, RandomWeights{10, 4})),
  };
  // all-zero weights
  auto z = generate_grid(6, 6, UnitWeights{});
  auto arcs = z.arcs();
  for (auto& a : arcs) a.weight = 0;
  graphs.push_back(share(EmbeddedPlanarGraph(z.vertex_count(), arcs, z.rotations())));
  std::mt19937_64 rng(8);
  for (const auto& g : graphs) {
    for (std::size_t leaf : {2, 6}) {
      auto o = FailureOracle::build(g, {leaf, 2});
      const std::size_t n = g->vertex_count();
      for (int q = 0; q < 60; ++q) {
        VertexId u = rng() % n, v = rng() % n;
        auto x = random_failures(rng, n, q % 5, u, v);
        CHECK(o.query(u, v, x) == distance_avoiding(*g, u, v, x));
      }
    }
  }
}

TEST_CASE("representation and monotonicity") {
  auto g = share(generate_grid(12, 12, RandomWeights{20, 9}));
  auto o = FailureOracle::build(g, {8, 2});
  const auto& t = o.tree();
  std::mt19937_64 rng(2);
  for (int q = 0; q < 40; ++q) {
    VertexId u = rng() % 144, v = rng() % 144;
    auto x = random_failures(rng, 144, 3, u, v);
    DdgUnion un;
    auto rec = o.assemble(u, v, x, un);
    CHECK(is_represented(t, rec, t.root()));
    for (NodeId m : rec.full_members) CHECK(!std::binary_search(rec.marked.begin(), rec.marked.end(), m));
    for (VertexId f : x)
      for (NodeId a = t.leaf_of(f); a != t.root(); a = t.piece(a).parent) CHECK(is_represented(t, rec, a));
    std::vector<VertexId> fewer(x.begin(), x.begin() + 1);
    CHECK(o.query(u, v, x) >= o.query(u, v, fewer));
  }
}

TEST_CASE("save and load round trip") {
  auto g = share(generate_grid(10, 10, RandomWeights{40, 1}));
  auto o = FailureOracle::build(g, {8, 2});
  std::string bytes = o.serialize();
  CHECK(bytes == FailureOracle::build(g, {8, 2}).serialize());
  std::istringstream in(bytes);
  auto back = FailureOracle::load(in);
  CHECK(back.serialize() == bytes);
  std::mt19937_64 rng(3);
  for (int q = 0; q < 30; ++q) {
    VertexId u = rng() % 100, v = rng() % 100;
    auto x = random_failures(rng, 100, 2, u, v);
    CHECK(back.query(u, v, x) == o.query(u, v, x));
  }
  std::istringstream truncated(bytes.substr(0, bytes.size() / 2));
  CHECK_THROWS_AS(FailureOracle::load(truncated), FormatError);
  std::istringstream junk("nonsense");
  CHECK_THROWS_AS(FailureOracle::load(junk), FormatError);
}
