#pragma once

#include <cstddef>
#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "planar_oracle/distance.h"

namespace planar_oracle {

struct ParseError : std::runtime_error {
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line(line) {}
  std::size_t line;
};

struct EmbeddingError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct WeightOverflowError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Arc {
  VertexId tail = 0;
  VertexId head = 0;
  Weight weight = 0;
  friend bool operator==(const Arc&, const Arc&) = default;
};

// Faces of a rotation system over undirected edge slots. Dart 2e runs
// tail->head of edge e, dart 2e+1 runs head->tail.
struct FaceStructure {
  std::vector<std::uint32_t> dart_face;
  std::vector<std::vector<std::uint32_t>> faces;
};

// ends[e] = endpoints of edge e, rotation[v] = clockwise edge ids around v.
// Every edge must appear once around each of its (distinct) endpoints.
FaceStructure trace_faces(std::span<const std::pair<std::uint32_t, std::uint32_t>> ends,
                          const std::vector<std::vector<std::uint32_t>>& rotation);

class EmbeddedPlanarGraph {
 public:
  EmbeddedPlanarGraph() = default;
  // Validates everything; throws EmbeddingError / WeightOverflowError / std::invalid_argument.
  EmbeddedPlanarGraph(std::size_t vertex_count, std::vector<Arc> arcs,
                      std::vector<std::vector<ArcId>> rotation);

  std::size_t vertex_count() const { return rotation_.size(); }
  std::size_t arc_count() const { return arcs_.size(); }
  std::size_t face_count() const { return face_count_; }
  const Arc& arc(ArcId a) const { return arcs_[a]; }
  const std::vector<Arc>& arcs() const { return arcs_; }
  std::span<const ArcId> rotation(VertexId v) const { return rotation_[v]; }
  const std::vector<std::vector<ArcId>>& rotations() const { return rotation_; }
  std::size_t degree(VertexId v) const { return rotation_[v].size(); }
  Weight total_weight() const { return total_weight_; }

  // outgoing arcs of v, in arc id order
  std::span<const ArcId> out_arcs(VertexId v) const {
    return {out_list_.data() + out_start_[v], out_list_.data() + out_start_[v + 1]};
  }

  bool valid_vertex(VertexId v) const { return v < vertex_count(); }
  void check_vertex(VertexId v) const;

  friend bool operator==(const EmbeddedPlanarGraph& a, const EmbeddedPlanarGraph& b) {
    return a.arcs_ == b.arcs_ && a.rotation_ == b.rotation_;
  }

 private:
  std::vector<Arc> arcs_;
  std::vector<std::vector<ArcId>> rotation_;
  std::vector<std::size_t> out_start_;
  std::vector<ArcId> out_list_;
  std::size_t face_count_ = 0;
  Weight total_weight_ = 0;
};

// Throws EmbeddingError if some component violates V - E + F = 2.
// Returns the total number of traced faces.
std::size_t check_euler(std::size_t vertex_count, std::span<const Arc> arcs,
                        const std::vector<std::vector<ArcId>>& rotation);

EmbeddedPlanarGraph load_graph(std::istream& in);
EmbeddedPlanarGraph load_graph_file(const std::string& path);
void save_graph(const EmbeddedPlanarGraph& g, std::ostream& out);
void save_graph_file(const EmbeddedPlanarGraph& g, const std::string& path);

}  // namespace planar_oracle
