#include "planar_oracle/subgraph.h"

#include <algorithm>
#include <functional>
#include <queue>

namespace planar_oracle {

Subgraph::Subgraph(std::span<const Arc> arc_table, std::span<const ArcId> arcs,
                   std::span<const VertexId> extra_vertices, std::span<const VertexId> removed) {
  std::vector<VertexId> gone(removed.begin(), removed.end());
  std::sort(gone.begin(), gone.end());
  auto is_gone = [&](VertexId v) { return std::binary_search(gone.begin(), gone.end(), v); };
  std::vector<ArcId> kept;
  kept.reserve(arcs.size());
  for (ArcId a : arcs) {
    const Arc& arc = arc_table[a];
    if (is_gone(arc.tail) || is_gone(arc.head)) continue;
    kept.push_back(a);
    vertices_.push_back(arc.tail);
    vertices_.push_back(arc.head);
  }
  for (VertexId v : extra_vertices)
    if (!is_gone(v)) vertices_.push_back(v);
  std::sort(vertices_.begin(), vertices_.end());
  vertices_.erase(std::unique(vertices_.begin(), vertices_.end()), vertices_.end());

  start_.assign(vertices_.size() + 1, 0);
  for (ArcId a : kept) ++start_[*local(arc_table[a].tail) + 1];
  for (std::size_t i = 0; i < vertices_.size(); ++i) start_[i + 1] += start_[i];
  out_.resize(kept.size());
  std::vector<std::uint32_t> fill(start_.begin(), start_.end() - 1);
  std::sort(kept.begin(), kept.end());
  for (ArcId a : kept) {
    const Arc& arc = arc_table[a];
    out_[fill[*local(arc.tail)]++] = {*local(arc.head), arc.weight, a};
  }
}

std::optional<std::uint32_t> Subgraph::local(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return std::nullopt;
  return static_cast<std::uint32_t>(it - vertices_.begin());
}

std::vector<Distance> Subgraph::dijkstra(std::uint32_t source) const {
  std::vector<Distance> dist(size(), Distance::unreachable());
  using Item = std::pair<std::uint64_t, std::uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = Distance::zero();
  heap.emplace(0, source);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d != dist[x].raw()) continue;
    for (const Out& o : out(x)) {
      Distance nd = dist[x] + o.weight;
      if (nd < dist[o.head]) {
        dist[o.head] = nd;
        heap.emplace(nd.raw(), o.head);
      }
    }
  }
  return dist;
}

}  // namespace planar_oracle
