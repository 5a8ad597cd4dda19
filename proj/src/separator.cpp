#include "planar_oracle/separator.h"

#include <algorithm>
#include <cassert>
#include <limits>
#include <numeric>
#include <queue>
#include <tuple>

namespace planar_oracle {

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

std::uint32_t index_in(const std::vector<VertexId>& sorted, VertexId v) {
  return static_cast<std::uint32_t>(std::lower_bound(sorted.begin(), sorted.end(), v) - sorted.begin());
}

struct Dsu {
  explicit Dsu(std::size_t n) : p(n) { std::iota(p.begin(), p.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (p[x] != x) x = p[x] = p[p[x]];
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a), b = find(b);
    if (a != b) p[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> p;
};

// Fundamental-cycle split of a connected arc set.
class CycleSplitter {
 public:
  CycleSplitter(const EmbeddedPlanarGraph& g, const std::vector<ArcId>& arcs) : g_(g), arcs_(arcs) {}

  SplitResult run() {
    setup();
    choose_root();
    bfs(root_);
    build_lca();
    if (!dual_tree()) return halves();
    return cut();
  }

 private:
  void setup() {
    for (ArcId a : arcs_) {
      verts_.push_back(g_.arc(a).tail);
      verts_.push_back(g_.arc(a).head);
    }
    std::sort(verts_.begin(), verts_.end());
    verts_.erase(std::unique(verts_.begin(), verts_.end()), verts_.end());
    V_ = static_cast<std::uint32_t>(verts_.size());
    E_ = static_cast<std::uint32_t>(arcs_.size());
    ends_.resize(E_);
    for (std::uint32_t e = 0; e < E_; ++e)
      ends_[e] = {index_in(verts_, g_.arc(arcs_[e]).tail), index_in(verts_, g_.arc(arcs_[e]).head)};
    std::vector<std::vector<std::uint32_t>> rot(V_);
    for (std::uint32_t v = 0; v < V_; ++v) {
      for (ArcId a : g_.rotation(verts_[v])) {
        auto it = std::lower_bound(arcs_.begin(), arcs_.end(), a);
        if (it != arcs_.end() && *it == a) rot[v].push_back(static_cast<std::uint32_t>(it - arcs_.begin()));
      }
    }
    FaceStructure fs = trace_faces(ends_, rot);
    F_ = static_cast<std::uint32_t>(fs.faces.size());
    N_ = V_ + F_;

    // triangulated graph: original edges 0..E-1, then one star edge per face corner
    tri_edges_.resize(2 * E_);
    tri_opp_.resize(2 * E_);
    edge_ends_.assign(ends_.begin(), ends_.end());
    edge_tris_.resize(E_);
    for (std::uint32_t e = 0; e < E_; ++e) edge_tris_[e] = {2 * e, 2 * e + 1};
    for (std::uint32_t f = 0; f < F_; ++f) {
      const auto& walk = fs.faces[f];
      const auto L = static_cast<std::uint32_t>(walk.size());
      const std::uint32_t base = static_cast<std::uint32_t>(edge_ends_.size());
      const std::uint32_t star = V_ + f;
      auto corner = [&](std::uint32_t i) {
        std::uint32_t d = walk[i % L];
        return d % 2 == 0 ? ends_[d / 2].first : ends_[d / 2].second;
      };
      for (std::uint32_t i = 0; i < L; ++i) {
        edge_ends_.push_back({star, corner(i)});
        edge_tris_.push_back({walk[(i + L - 1) % L], walk[i]});
      }
      for (std::uint32_t i = 0; i < L; ++i) {
        std::uint32_t d = walk[i];
        tri_edges_[d] = {d / 2, base + i, base + (i + 1) % L};
        tri_opp_[d] = {star, corner(i + 1), corner(i)};
      }
    }
    adj_start_.assign(N_ + 1, 0);
    for (auto [a, b] : edge_ends_) {
      ++adj_start_[a + 1];
      ++adj_start_[b + 1];
    }
    for (std::uint32_t v = 0; v < N_; ++v) adj_start_[v + 1] += adj_start_[v];
    adj_.resize(adj_start_[N_]);
    std::vector<std::uint32_t> fill(adj_start_.begin(), adj_start_.end() - 1);
    for (std::uint32_t e = 0; e < edge_ends_.size(); ++e) {
      auto [a, b] = edge_ends_[e];
      adj_[fill[a]++] = {b, e};
      adj_[fill[b]++] = {a, e};
    }
  }

  void bfs(std::uint32_t src) {
    depth_.assign(N_, kNone);
    parent_.assign(N_, kNone);
    parent_edge_.assign(N_, kNone);
    order_.clear();
    depth_[src] = 0;
    order_.push_back(src);
    for (std::size_t h = 0; h < order_.size(); ++h) {
      std::uint32_t x = order_[h];
      for (std::uint32_t i = adj_start_[x]; i < adj_start_[x + 1]; ++i) {
        auto [y, e] = adj_[i];
        if (depth_[y] != kNone) continue;
        depth_[y] = depth_[x] + 1;
        parent_[y] = x;
        parent_edge_[y] = e;
        order_.push_back(y);
      }
    }
  }

  std::uint32_t farthest_real() const {
    std::uint32_t best = 0;
    for (std::uint32_t v = 1; v < V_; ++v)
      if (depth_[v] > depth_[best]) best = v;
    return best;
  }

  void choose_root() {
    bfs(0);
    std::uint32_t a = farthest_real();
    bfs(a);
    std::uint32_t b = farthest_real();
    std::vector<std::uint32_t> path;
    for (std::uint32_t x = b; x != kNone; x = parent_[x])
      if (x < V_) path.push_back(x);
    root_ = path[path.size() / 2];
  }

  void build_lca() {
    levels_ = 1;
    while ((1u << levels_) < N_) ++levels_;
    up_.assign(levels_, std::vector<std::uint32_t>(N_));
    for (std::uint32_t v = 0; v < N_; ++v) up_[0][v] = parent_[v] == kNone ? v : parent_[v];
    for (std::uint32_t j = 1; j < levels_; ++j)
      for (std::uint32_t v = 0; v < N_; ++v) up_[j][v] = up_[j - 1][up_[j - 1][v]];
    W_.assign(N_, 0);
    for (std::uint32_t x : order_) {
      std::uint64_t own = x < V_ ? 1 : 0;
      W_[x] = (parent_[x] == kNone ? 0 : W_[parent_[x]]) + own;
    }
    tree_edge_.assign(edge_ends_.size(), 0);
    for (std::uint32_t v = 0; v < N_; ++v)
      if (parent_edge_[v] != kNone) tree_edge_[parent_edge_[v]] = 1;
  }

  std::uint32_t lca(std::uint32_t a, std::uint32_t b) const {
    if (depth_[a] < depth_[b]) std::swap(a, b);
    std::uint32_t diff = depth_[a] - depth_[b];
    for (std::uint32_t j = 0; diff; ++j, diff >>= 1)
      if (diff & 1) a = up_[j][a];
    if (a == b) return a;
    for (std::uint32_t j = levels_; j-- > 0;) {
      if (up_[j][a] != up_[j][b]) {
        a = up_[j][a];
        b = up_[j][b];
      }
    }
    return parent_[a];
  }

  // spanning tree of the triangles through non-tree edges
  bool dual_tree() {
    const std::uint32_t T = 2 * E_;
    dparent_edge_.assign(T, kNone);
    dparent_.assign(T, kNone);
    dorder_.clear();
    // rooted at a triangle touching the BFS root, so that root never lies
    // strictly inside a fundamental cycle (the inside counts rely on it)
    std::uint32_t start = 0;
    for (std::uint32_t e = 0; e < E_; ++e) {
      if (ends_[e].first == root_) { start = 2 * e; break; }
      if (ends_[e].second == root_) { start = 2 * e + 1; break; }
    }
    std::vector<std::uint8_t> seen(T, 0);
    seen[start] = 1;
    dorder_.push_back(start);
    for (std::size_t h = 0; h < dorder_.size(); ++h) {
      std::uint32_t t = dorder_[h];
      for (std::uint32_t e : tri_edges_[t]) {
        if (tree_edge_[e]) continue;
        std::uint32_t o = edge_tris_[e][0] == t ? edge_tris_[e][1] : edge_tris_[e][0];
        if (seen[o]) continue;
        seen[o] = 1;
        dparent_[o] = t;
        dparent_edge_[o] = e;
        dorder_.push_back(o);
      }
    }
    return dorder_.size() == T;
  }

  SplitResult cut() {
    const std::uint32_t T = 2 * E_;
    std::vector<std::uint64_t> inside(edge_ends_.size(), 0);
    for (std::uint32_t h = T; h-- > 1;) {
      std::uint32_t t = dorder_[h];
      std::uint32_t pe = dparent_edge_[t];
      std::uint64_t sum = 0;
      std::uint32_t z = kNone;
      for (int i = 0; i < 3; ++i) {
        std::uint32_t e = tri_edges_[t][i];
        if (e == pe)
          z = tri_opp_[t][i];
        else if (!tree_edge_[e])
          sum += inside[e];
      }
      auto [x, y] = edge_ends_[pe];
      std::uint32_t m = lca(x, y);
      for (std::uint32_t c : {lca(x, z), lca(y, z)})
        if (depth_[c] > depth_[m]) m = c;
      inside[pe] = sum + W_[z] - W_[m];
    }

    const std::uint64_t total = V_;
    std::uint32_t best = kNone;
    std::tuple<int, std::uint64_t, std::uint64_t> best_key{2, 0, 0};
    for (std::uint32_t h = 1; h < T; ++h) {
      std::uint32_t e = dparent_edge_[dorder_[h]];
      auto [x, y] = edge_ends_[e];
      std::uint32_t l = lca(x, y);
      std::uint64_t cyc = W_[x] + W_[y] - 2 * W_[l] + (l < V_ ? 1 : 0);
      std::uint64_t in = inside[e];
      std::uint64_t out = total - in - cyc;
      std::uint64_t big = std::max(in, out);
      bool ok = 3 * big <= 2 * total;
      auto key = ok ? std::make_tuple(0, cyc, big) : std::make_tuple(1, big, cyc);
      if (best == kNone || key < best_key) {
        best = h;
        best_key = key;
      }
    }
    if (best == kNone) return halves();

    std::vector<std::uint8_t> region(T, 0);
    std::uint32_t tc = dorder_[best];
    for (std::uint32_t h = 1; h < T; ++h) {
      std::uint32_t t = dorder_[h];
      region[t] = t == tc || region[dparent_[t]];
    }
    SplitResult res;
    res.balanced = std::get<0>(best_key) == 0;
    std::vector<ArcId> on_cycle;
    for (std::uint32_t e = 0; e < E_; ++e) {
      int c = region[2 * e] + region[2 * e + 1];
      if (c == 2)
        res.first.arcs.push_back(arcs_[e]);
      else if (c == 0)
        res.second.arcs.push_back(arcs_[e]);
      else
        on_cycle.push_back(arcs_[e]);
    }
    if (res.first.arcs.empty() && res.second.arcs.empty()) return halves();
    auto& into = res.second.arcs.empty() ? res.second.arcs : res.first.arcs;
    into.insert(into.end(), on_cycle.begin(), on_cycle.end());
    std::sort(res.first.arcs.begin(), res.first.arcs.end());
    std::sort(res.second.arcs.begin(), res.second.arcs.end());
    if (res.first.arcs.empty() || res.second.arcs.empty()) return halves();

    auto [x, y] = edge_ends_[dparent_edge_[tc]];
    std::uint32_t l = lca(x, y);
    for (std::uint32_t s : {x, y})
      for (std::uint32_t w = s; w != l; w = parent_[w])
        if (w < V_) res.separator.push_back(verts_[w]);
    if (l < V_) res.separator.push_back(verts_[l]);
    std::sort(res.separator.begin(), res.separator.end());
    res.separator.erase(std::unique(res.separator.begin(), res.separator.end()), res.separator.end());
    return res;
  }

  SplitResult halves() {
    SplitResult res;
    res.balanced = false;
    std::size_t mid = arcs_.size() / 2;
    res.first.arcs.assign(arcs_.begin(), arcs_.begin() + static_cast<long>(mid));
    res.second.arcs.assign(arcs_.begin() + static_cast<long>(mid), arcs_.end());
    return res;
  }

  const EmbeddedPlanarGraph& g_;
  const std::vector<ArcId>& arcs_;
  std::vector<VertexId> verts_;
  std::uint32_t V_ = 0, E_ = 0, F_ = 0, N_ = 0;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edge_ends_;
  std::vector<std::array<std::uint32_t, 2>> edge_tris_;
  std::vector<std::array<std::uint32_t, 3>> tri_edges_, tri_opp_;
  std::vector<std::uint32_t> adj_start_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> adj_;
  std::vector<std::uint32_t> depth_, parent_, parent_edge_, order_;
  std::uint32_t root_ = 0;
  std::uint32_t levels_ = 1;
  std::vector<std::vector<std::uint32_t>> up_;
  std::vector<std::uint64_t> W_;
  std::vector<std::uint8_t> tree_edge_;
  std::vector<std::uint32_t> dparent_, dparent_edge_, dorder_;
};

struct Component {
  PieceContent content;
  std::size_t vertices = 0;
  VertexId first = 0;
};

}  // namespace

std::vector<VertexId> content_vertices(const EmbeddedPlanarGraph& g, const PieceContent& p) {
  std::vector<VertexId> vs(p.isolated.begin(), p.isolated.end());
  for (ArcId a : p.arcs) {
    vs.push_back(g.arc(a).tail);
    vs.push_back(g.arc(a).head);
  }
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

SplitResult split_piece(const EmbeddedPlanarGraph& g, const PieceContent& p) {
  std::vector<VertexId> verts = content_vertices(g, p);
  if (verts.size() < 2) throw std::invalid_argument("cannot split a piece with fewer than two vertices");
  Dsu dsu(verts.size());
  for (ArcId a : p.arcs) dsu.unite(index_in(verts, g.arc(a).tail), index_in(verts, g.arc(a).head));
  std::vector<std::uint32_t> comp_of(verts.size(), kNone);
  std::vector<Component> comps;
  for (std::uint32_t i = 0; i < verts.size(); ++i) {
    std::uint32_t r = dsu.find(i);
    if (comp_of[r] == kNone) {
      comp_of[r] = static_cast<std::uint32_t>(comps.size());
      comps.push_back({});
      comps.back().first = verts[i];
    }
    ++comps[comp_of[r]].vertices;
  }
  for (ArcId a : p.arcs) comps[comp_of[dsu.find(index_in(verts, g.arc(a).tail))]].content.arcs.push_back(a);
  for (VertexId v : p.isolated) comps[comp_of[dsu.find(index_in(verts, v))]].content.isolated.push_back(v);

  if (comps.size() == 1) return CycleSplitter(g, p.arcs).run();

  std::stable_sort(comps.begin(), comps.end(),
                   [](const Component& a, const Component& b) { return a.vertices > b.vertices; });
  const std::size_t total = verts.size();
  SplitResult res;
  std::size_t size_a = 0, size_b = 0;
  std::size_t next = 0;
  if (3 * comps[0].vertices > 2 * total && !comps[0].content.arcs.empty()) {
    res = CycleSplitter(g, comps[0].content.arcs).run();
    size_a = content_vertices(g, res.first).size();
    size_b = content_vertices(g, res.second).size();
    next = 1;
  }
  for (; next < comps.size(); ++next) {
    auto& side = size_a <= size_b ? res.first : res.second;
    auto& size = size_a <= size_b ? size_a : size_b;
    side.arcs.insert(side.arcs.end(), comps[next].content.arcs.begin(), comps[next].content.arcs.end());
    side.isolated.insert(side.isolated.end(), comps[next].content.isolated.begin(),
                         comps[next].content.isolated.end());
    size += comps[next].vertices;
  }
  for (auto* side : {&res.first, &res.second}) {
    std::sort(side->arcs.begin(), side->arcs.end());
    std::sort(side->isolated.begin(), side->isolated.end());
  }
  res.balanced = 3 * std::max(size_a, size_b) <= 2 * total + 3 * res.separator.size();
  return res;
}

}  // namespace planar_oracle
