#include "planar_oracle/ddg.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

#include "planar_oracle/monge.h"
#include "planar_oracle/subgraph.h"

namespace planar_oracle {

const char* variant_name(DdgVariant v) {
  switch (v) {
    case DdgVariant::standard: return "standard";
    case DdgVariant::strict_internal: return "strict_internal";
    case DdgVariant::strict_external: return "strict_external";
  }
  return "?";
}

DenseDistanceGraph::DenseDistanceGraph(DdgVariant variant, std::vector<VertexId> vertices,
                                       std::vector<Distance> weights, std::vector<NodeId> source_pieces)
    : variant_(variant), vertices_(std::move(vertices)), weights_(std::move(weights)), sources_(std::move(source_pieces)) {
  const std::size_t m = vertices_.size();
  if (weights_.size() != m * m) throw std::invalid_argument("DDG weight matrix has the wrong size");
  if (!std::is_sorted(vertices_.begin(), vertices_.end()) ||
      std::adjacent_find(vertices_.begin(), vertices_.end()) != vertices_.end())
    throw std::invalid_argument("DDG vertices must be sorted and distinct");
  row_min_.assign(m, Distance::unreachable());
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j) row_min_[i] = min(row_min_[i], weights_[i * m + j]);
}

std::int64_t DenseDistanceGraph::index_of(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return -1;
  return it - vertices_.begin();
}

Distance DenseDistanceGraph::weight(VertexId u, VertexId v) const {
  auto i = index_of(u), j = index_of(v);
  if (i < 0 || j < 0) throw std::out_of_range("vertex not in DDG");
  return at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
}

void DenseDistanceGraph::prepare_monge(const std::vector<std::uint32_t>& order) {
  monge_ = std::make_shared<const MongeLayout>(build_monge_layout(*this, order));
}

namespace {

std::vector<VertexId> sorted_unique(std::span<const VertexId> in) {
  std::vector<VertexId> v(in.begin(), in.end());
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

DenseDistanceGraph compute_strict_ddg(const EmbeddedPlanarGraph& g, std::span<const ArcId> arcs,
                                      std::span<const VertexId> boundary, const ShiftConstant& shift,
                                      std::span<const VertexId> removed, std::vector<NodeId> source_pieces) {
  return compute_strict_ddg(std::span<const Arc>(g.arcs()), arcs, boundary, shift, removed, std::move(source_pieces));
}

DenseDistanceGraph compute_strict_ddg(std::span<const Arc> arc_table, std::span<const ArcId> arcs,
                                      std::span<const VertexId> boundary_in, const ShiftConstant& shift,
                                      std::span<const VertexId> removed, std::vector<NodeId> source_pieces) {
  std::vector<VertexId> boundary = sorted_unique(boundary_in);
  for (VertexId x : removed)
    if (std::binary_search(boundary.begin(), boundary.end(), x))
      throw std::invalid_argument("removed vertex is also a boundary vertex");
  Subgraph sub(arc_table, arcs, boundary, removed);
  const std::size_t m = boundary.size();
  std::vector<Distance> w(m * m, Distance::unreachable());
  std::vector<std::uint8_t> is_b(sub.size(), 0);
  std::vector<std::uint32_t> b_local(m);
  for (std::size_t i = 0; i < m; ++i) {
    b_local[i] = *sub.local(boundary[i]);
    is_b[b_local[i]] = 1;
  }

  // labels are shifts * C + residual; shift counts beyond one are >= 2C and pruned
  using u128 = unsigned __int128;
  const u128 C = shift.value();
  struct Label {
    std::uint32_t shifts = 0;
    Weight residual = 0;
    bool set = false;
  };
  auto value = [C](const Label& l) { return u128(l.shifts) * C + l.residual; };
  std::vector<Label> label(sub.size());
  std::vector<std::uint32_t> touched;
  using Item = std::pair<u128, std::uint32_t>;
  for (std::size_t i = 0; i < m; ++i) {
    for (std::uint32_t x : touched) label[x] = Label{};
    touched.clear();
    std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
    std::uint32_t s = b_local[i];
    label[s] = {0, 0, true};
    touched.push_back(s);
    heap.emplace(0, s);
    while (!heap.empty()) {
      auto [d, x] = heap.top();
      heap.pop();
      if (d != value(label[x])) continue;
      for (const Subgraph::Out& o : sub.out(x)) {
        Label nl{label[x].shifts + (is_b[x] ? 1u : 0u), label[x].residual + o.weight, true};
        if (nl.shifts >= 2) continue;
        if (!label[o.head].set) touched.push_back(o.head);
        if (!label[o.head].set || value(nl) < value(label[o.head])) {
          label[o.head] = nl;
          heap.emplace(value(nl), o.head);
        }
      }
    }
    for (std::size_t j = 0; j < m; ++j) {
      const Label& l = label[b_local[j]];
      if (j == i)
        w[i * m + j] = Distance::zero();
      else if (l.set && l.shifts == 1 && value(l) < 2 * C)
        w[i * m + j] = Distance::finite(l.residual);
    }
  }
  return DenseDistanceGraph(DdgVariant::strict_internal, std::move(boundary), std::move(w),
                            std::move(source_pieces));
}

DenseDistanceGraph compute_standard_ddg(const EmbeddedPlanarGraph& g, std::span<const ArcId> arcs,
                                        std::span<const VertexId> boundary_in, std::vector<NodeId> source_pieces) {
  std::vector<VertexId> boundary = sorted_unique(boundary_in);
  Subgraph sub(g, arcs, boundary);
  const std::size_t m = boundary.size();
  std::vector<Distance> w(m * m);
  for (std::size_t i = 0; i < m; ++i) {
    auto d = sub.dijkstra(*sub.local(boundary[i]));
    for (std::size_t j = 0; j < m; ++j) w[i * m + j] = d[*sub.local(boundary[j])];
  }
  return DenseDistanceGraph(DdgVariant::standard, std::move(boundary), std::move(w), std::move(source_pieces));
}

DenseDistanceGraph compute_ddg_internal(const EmbeddedPlanarGraph& g, const DecompositionTree& t, NodeId node,
                                        const ShiftConstant& shift) {
  const Piece& p = t.piece(node);
  return compute_strict_ddg(g, p.arcs, p.boundary, shift, {}, {node});
}

DenseDistanceGraph min_plus_closure(const DenseDistanceGraph& d) {
  const std::size_t m = d.size();
  std::vector<Distance> w = d.weights();
  for (std::size_t i = 0; i < m; ++i) w[i * m + i] = min(w[i * m + i], Distance::zero());
  for (std::size_t k = 0; k < m; ++k)
    for (std::size_t i = 0; i < m; ++i) {
      Distance ik = w[i * m + k];
      if (!ik.is_finite()) continue;
      for (std::size_t j = 0; j < m; ++j) w[i * m + j] = min(w[i * m + j], ik + w[k * m + j]);
    }
  return DenseDistanceGraph(DdgVariant::standard, d.vertices(), std::move(w), d.source_pieces());
}

Distance PieceDistanceTable::at(VertexId s, VertexId v) const {
  auto si = std::lower_bound(sources.begin(), sources.end(), s);
  auto ti = std::lower_bound(targets.begin(), targets.end(), v);
  if (si == sources.end() || *si != s || ti == targets.end() || *ti != v)
    throw std::out_of_range("vertex not in piece distance table");
  return dist[static_cast<std::size_t>(si - sources.begin()) * targets.size() +
              static_cast<std::size_t>(ti - targets.begin())];
}

PieceDistanceTable compute_piece_distance_table(const EmbeddedPlanarGraph& g, const Piece& piece) {
  PieceDistanceTable t;
  t.piece = piece.id;
  t.sources = piece.boundary;
  t.targets = piece.vertices;
  Subgraph sub(g, piece.arcs, piece.vertices);
  t.dist.reserve(t.sources.size() * t.targets.size());
  for (VertexId s : t.sources) {
    auto d = sub.dijkstra(*sub.local(s));
    for (VertexId v : t.targets) t.dist.push_back(d[*sub.local(v)]);
  }
  return t;
}

}  // namespace planar_oracle
