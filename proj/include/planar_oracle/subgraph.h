#pragma once

#include <optional>
#include <span>
#include <vector>

#include "planar_oracle/graph.h"

namespace planar_oracle {

// An arc subset of G with its own compact vertex indexing.
class Subgraph {
 public:
  struct Out {
    std::uint32_t head;
    Weight weight;
    ArcId arc;
  };

  Subgraph() = default;
  // Arcs touching a removed vertex are dropped and removed vertices never
  // appear; extra vertices are included even without arcs.
  Subgraph(const EmbeddedPlanarGraph& g, std::span<const ArcId> arcs,
           std::span<const VertexId> extra_vertices = {}, std::span<const VertexId> removed = {})
      : Subgraph(std::span<const Arc>(g.arcs()), arcs, extra_vertices, removed) {}
  // arc ids index into arc_table
  Subgraph(std::span<const Arc> arc_table, std::span<const ArcId> arcs, std::span<const VertexId> extra_vertices = {},
           std::span<const VertexId> removed = {});

  const std::vector<VertexId>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }
  std::size_t arc_count() const { return out_.size(); }
  std::optional<std::uint32_t> local(VertexId v) const;
  VertexId global(std::uint32_t i) const { return vertices_[i]; }
  std::span<const Out> out(std::uint32_t i) const {
    return {out_.data() + start_[i], out_.data() + start_[i + 1]};
  }

  // plain Dijkstra over local ids
  std::vector<Distance> dijkstra(std::uint32_t source) const;

 private:
  std::vector<VertexId> vertices_;
  std::vector<std::uint32_t> start_;
  std::vector<Out> out_;
};

}  // namespace planar_oracle
