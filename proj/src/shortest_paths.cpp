#include "planar_oracle/shortest_paths.h"

#include <algorithm>
#include <functional>
#include <queue>
#include <stdexcept>

namespace planar_oracle {

std::vector<Distance> sssp_without(const EmbeddedPlanarGraph& g, VertexId source,
                                   const std::vector<std::uint8_t>& removed) {
  g.check_vertex(source);
  std::vector<Distance> dist(g.vertex_count(), Distance::unreachable());
  if (!removed.empty() && removed[source]) return dist;
  using Item = std::pair<std::uint64_t, VertexId>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[source] = Distance::zero();
  heap.emplace(0, source);
  while (!heap.empty()) {
    auto [d, x] = heap.top();
    heap.pop();
    if (d != dist[x].raw()) continue;
    for (ArcId a : g.out_arcs(x)) {
      const Arc& arc = g.arc(a);
      if (!removed.empty() && removed[arc.head]) continue;
      Distance nd = dist[x] + arc.weight;
      if (nd < dist[arc.head]) {
        dist[arc.head] = nd;
        heap.emplace(nd.raw(), arc.head);
      }
    }
  }
  return dist;
}

std::vector<Distance> sssp(const EmbeddedPlanarGraph& g, VertexId source) {
  return sssp_without(g, source, {});
}

Distance distance_avoiding(const EmbeddedPlanarGraph& g, VertexId u, VertexId v,
                           std::span<const VertexId> failed) {
  g.check_vertex(u);
  g.check_vertex(v);
  std::vector<std::uint8_t> removed(g.vertex_count(), 0);
  for (VertexId x : failed) {
    g.check_vertex(x);
    if (x == u || x == v) throw std::invalid_argument("query endpoint is in the failed set");
    removed[x] = 1;
  }
  return sssp_without(g, u, removed)[v];
}

}  // namespace planar_oracle
