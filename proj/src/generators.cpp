#include "planar_oracle/generators.h"

#include <algorithm>
#include <array>
#include <map>
#include <random>
#include <set>
#include <stdexcept>

namespace planar_oracle {

namespace {

class WeightSource {
 public:
  explicit WeightSource(const WeightMode& mode) {
    if (auto* r = std::get_if<RandomWeights>(&mode)) {
      if (r->max_w < 1) throw std::invalid_argument("max weight must be >= 1");
      random_ = true;
      rng_.seed(r->seed);
      dist_ = std::uniform_int_distribution<Weight>(1, r->max_w);
    }
  }
  Weight next() { return random_ ? dist_(rng_) : 1; }

 private:
  bool random_ = false;
  std::mt19937_64 rng_;
  std::uniform_int_distribution<Weight> dist_;
};

// builds a graph from undirected edges plus clockwise neighbour orders;
// each edge {a,b} yields arcs a->b and b->a, listed (out, in) per neighbour
EmbeddedPlanarGraph from_undirected(std::size_t n, const std::vector<std::vector<VertexId>>& cw_neighbours,
                                    const std::vector<std::pair<VertexId, VertexId>>& edges,
                                    WeightSource& ws) {
  std::vector<Arc> arcs;
  std::map<std::pair<VertexId, VertexId>, ArcId> id;
  for (auto [a, b] : edges) {
    id[{a, b}] = static_cast<ArcId>(arcs.size());
    arcs.push_back({a, b, ws.next()});
    id[{b, a}] = static_cast<ArcId>(arcs.size());
    arcs.push_back({b, a, ws.next()});
  }
  std::vector<std::vector<ArcId>> rotation(n);
  for (VertexId v = 0; v < n; ++v) {
    for (VertexId w : cw_neighbours[v]) {
      rotation[v].push_back(id.at({v, w}));
      rotation[v].push_back(id.at({w, v}));
    }
  }
  return EmbeddedPlanarGraph(n, std::move(arcs), std::move(rotation));
}

}  // namespace

EmbeddedPlanarGraph generate_grid(std::size_t rows, std::size_t cols, WeightMode weights) {
  if (rows < 1 || cols < 1) throw std::invalid_argument("grid needs rows, cols >= 1");
  if (rows > (std::size_t{1} << 31) / cols) throw std::invalid_argument("grid size overflow");
  const std::size_t n = rows * cols;
  auto id = [cols](std::size_t r, std::size_t c) { return static_cast<VertexId>(r * cols + c); };
  WeightSource ws(weights);
  std::vector<Arc> arcs;
  arcs.reserve(4 * n);
  std::vector<std::array<ArcId, 4>> out(n), in(n);  // up, right, down, left
  constexpr ArcId kNone = std::numeric_limits<ArcId>::max();
  for (auto& a : out) a.fill(kNone);
  for (auto& a : in) a.fill(kNone);
  auto add = [&](VertexId a, VertexId b, int dir_ab) {
    int dir_ba = (dir_ab + 2) % 4;
    out[a][dir_ab] = in[b][dir_ba] = static_cast<ArcId>(arcs.size());
    arcs.push_back({a, b, ws.next()});
    out[b][dir_ba] = in[a][dir_ab] = static_cast<ArcId>(arcs.size());
    arcs.push_back({b, a, ws.next()});
  };
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if (c + 1 < cols) add(id(r, c), id(r, c + 1), 1);
      if (r + 1 < rows) add(id(r, c), id(r + 1, c), 2);
    }
  }
  std::vector<std::vector<ArcId>> rotation(n);
  for (std::size_t v = 0; v < n; ++v) {
    for (int d = 0; d < 4; ++d) {
      if (out[v][d] == kNone) continue;
      rotation[v].push_back(out[v][d]);
      rotation[v].push_back(in[v][d]);
    }
  }
  return EmbeddedPlanarGraph(n, std::move(arcs), std::move(rotation));
}

EmbeddedPlanarGraph generate_triangulation(std::size_t n, WeightMode weights, std::uint64_t seed) {
  if (n < 3) throw std::invalid_argument("triangulation needs n >= 3");
  if (n >= (std::size_t{1} << 30)) throw std::invalid_argument("triangulation size overflow");
  std::mt19937_64 rng(seed);
  // faces as counter-clockwise triples; the outer face of the seed triangle too
  std::vector<std::array<VertexId, 3>> tri = {{0, 1, 2}, {0, 2, 1}};
  for (VertexId v = 3; v < n; ++v) {
    std::size_t f = std::uniform_int_distribution<std::size_t>(0, tri.size() - 1)(rng);
    auto [a, b, c] = tri[f];
    tri[f] = {a, b, v};
    tri.push_back({b, c, v});
    tri.push_back({c, a, v});
  }

  // directed edge (a,b) -> face index whose ccw boundary contains a then b
  std::map<std::pair<VertexId, VertexId>, std::size_t> owner;
  std::vector<std::size_t> deg(n, 0);
  for (std::size_t f = 0; f < tri.size(); ++f)
    for (int i = 0; i < 3; ++i) owner[{tri[f][i], tri[f][(i + 1) % 3]}] = f;
  for (auto& [e, f] : owner) ++deg[e.first];

  // random flips break up the stacked structure (high-degree early vertices)
  std::size_t flips = 4 * n;
  std::vector<std::pair<VertexId, VertexId>> keys;
  for (std::size_t it = 0; it < flips; ++it) {
    std::size_t f = std::uniform_int_distribution<std::size_t>(0, tri.size() - 1)(rng);
    int i = std::uniform_int_distribution<int>(0, 2)(rng);
    VertexId a = tri[f][i], b = tri[f][(i + 1) % 3], c = tri[f][(i + 2) % 3];
    auto g_it = owner.find({b, a});
    std::size_t g = g_it->second;
    int j = 0;
    while (tri[g][j] != b) ++j;
    VertexId d = tri[g][(j + 2) % 3];  // (b, a, d)
    if (c == d || deg[a] <= 3 || deg[b] <= 3) continue;
    if (owner.count({c, d})) continue;
    for (int t = 0; t < 3; ++t) owner.erase({tri[f][t], tri[f][(t + 1) % 3]});
    for (int t = 0; t < 3; ++t) owner.erase({tri[g][t], tri[g][(t + 1) % 3]});
    tri[f] = {a, d, c};
    tri[g] = {d, b, c};
    for (int t = 0; t < 3; ++t) owner[{tri[f][t], tri[f][(t + 1) % 3]}] = f;
    for (int t = 0; t < 3; ++t) owner[{tri[g][t], tri[g][(t + 1) % 3]}] = g;
    --deg[a];
    --deg[b];
    ++deg[c];
    ++deg[d];
  }

  // around v, triangle (v, a, b) says b follows a counter-clockwise
  std::vector<std::map<VertexId, VertexId>> next_ccw(n);
  for (auto& t : tri)
    for (int i = 0; i < 3; ++i) next_ccw[t[i]][t[(i + 1) % 3]] = t[(i + 2) % 3];
  std::vector<std::vector<VertexId>> cw(n);
  std::vector<std::pair<VertexId, VertexId>> edges;
  for (VertexId v = 0; v < n; ++v) {
    VertexId start = next_ccw[v].begin()->first;
    std::vector<VertexId> ccw;
    VertexId w = start;
    do {
      ccw.push_back(w);
      w = next_ccw[v].at(w);
    } while (w != start);
    cw[v].assign(ccw.rbegin(), ccw.rend());
    for (VertexId x : cw[v])
      if (v < x) edges.emplace_back(v, x);
  }
  std::sort(edges.begin(), edges.end());
  WeightSource ws(weights);
  return from_undirected(n, cw, edges, ws);
}

EmbeddedPlanarGraph generate_wheel(std::size_t spokes, WeightMode weights) {
  if (spokes < 3) throw std::invalid_argument("wheel needs at least 3 spokes");
  const std::size_t n = spokes + 1;
  std::vector<std::vector<VertexId>> cw(n);
  std::vector<std::pair<VertexId, VertexId>> edges;
  auto rim = [spokes](std::size_t i) { return static_cast<VertexId>(1 + (i % spokes)); };
  for (std::size_t i = 0; i < spokes; ++i) {
    cw[0].push_back(rim(i));
    edges.emplace_back(0, rim(i));
    edges.emplace_back(std::min(rim(i), rim(i + 1)), std::max(rim(i), rim(i + 1)));
    // rim vertex i sees hub, previous, next; clockwise with hub order reversed
    cw[rim(i)] = {0, rim(i + spokes - 1), rim(i + 1)};
  }
  std::sort(edges.begin(), edges.end());
  WeightSource ws(weights);
  return from_undirected(n, cw, edges, ws);
}

}  // namespace planar_oracle
