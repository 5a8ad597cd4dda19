#include "planar_oracle/external_ddg.h"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace planar_oracle {

ExternalDdgBuilder::ExternalDdgBuilder(const DdgStore& store) : store_(store) {
  for (auto& [r, nodes] : store.tree().rdivision_marks()) divisions_.push_back(nodes);
}

std::size_t ExternalDdgBuilder::level_of(const std::vector<NodeId>& tuple) const {
  for (std::size_t i = 0; i < divisions_.size(); ++i) {
    const auto& d = divisions_[i];
    if (std::all_of(tuple.begin(), tuple.end(), [&](NodeId q) { return std::binary_search(d.begin(), d.end(), q); }))
      return i;
  }
  throw std::invalid_argument("tuple pieces do not belong to one marked r-division");
}

std::size_t ExternalDdgBuilder::memo_size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.size();
}

DdgPtr ExternalDdgBuilder::get(std::span<const NodeId> tuple_in) {
  std::vector<NodeId> tuple(tuple_in.begin(), tuple_in.end());
  std::sort(tuple.begin(), tuple.end());
  if (tuple.empty()) throw std::invalid_argument("empty tuple");
  if (std::adjacent_find(tuple.begin(), tuple.end()) != tuple.end())
    throw std::invalid_argument("tuple pieces must be distinct");
  for (NodeId q : tuple)
    if (q >= store_.tree().size()) throw std::invalid_argument("unknown piece in tuple");
  return compute(tuple, level_of(tuple));
}

// DDG° of `enclosing` minus the tuple pieces inside it, on the enclosing
// boundary plus the boundaries of those pieces
DdgPtr ExternalDdgBuilder::enclosing_part(const std::vector<NodeId>& inside, NodeId enclosing) {
  const DecompositionTree& t = store_.tree();
  const EmbeddedPlanarGraph& g = store_.graph();
  std::vector<VertexId> b = t.piece(enclosing).boundary;
  for (NodeId q : inside) b.insert(b.end(), t.piece(q).boundary.begin(), t.piece(q).boundary.end());
  std::sort(b.begin(), b.end());
  b.erase(std::unique(b.begin(), b.end()), b.end());

  DdgUnion un;
  std::set<NodeId> siblings;
  for (NodeId q : inside) {
    for (NodeId a = q; a != enclosing; a = t.piece(a).parent) {
      NodeId s = t.sibling(a);
      bool holds_tuple = std::any_of(inside.begin(), inside.end(), [&](NodeId x) { return t.is_ancestor(s, x); });
      if (!holds_tuple) siblings.insert(s);
    }
  }
  for (NodeId s : siblings) un.add(store_.get(s));
  // arcs of a tuple piece joining two of its boundary vertices are whole
  // paths in their own right: no interior vertex to remove
  std::vector<ArcId> direct;
  for (NodeId q : inside) {
    const Piece& p = t.piece(q);
    for (ArcId a : p.arcs)
      if (p.is_boundary(g.arc(a).tail) && p.is_boundary(g.arc(a).head)) direct.push_back(a);
  }
  if (!direct.empty()) un.add(std::make_shared<Subgraph>(g, direct));

  const std::size_t m = b.size();
  std::vector<Distance> w(m * m, Distance::unreachable());
  std::vector<VertexId> forbid;
  for (std::size_t i = 0; i < m; ++i) {
    w[i * m + i] = Distance::zero();
    if (!un.contains(b[i])) continue;
    forbid.assign(b.begin(), b.end());
    forbid.erase(forbid.begin() + static_cast<long>(i));
    un.set_forbidden_tails(forbid);
    std::pair<VertexId, Distance> src{b[i], Distance::zero()};
    auto res = multi_dijkstra(un, std::span(&src, 1));
    for (std::size_t j = 0; j < m; ++j)
      if (j != i) w[i * m + j] = res.at(b[j]);
  }
  return std::make_shared<const DenseDistanceGraph>(DdgVariant::strict_internal, std::move(b), std::move(w),
                                                    std::vector<NodeId>{enclosing});
}

DdgPtr ExternalDdgBuilder::compute(const std::vector<NodeId>& tuple, std::size_t level) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto it = memo_.find(tuple); it != memo_.end()) return it->second;
  }
  const DecompositionTree& t = store_.tree();
  DdgPtr result;
  if (tuple.size() == 1 && tuple[0] == t.root()) {
    result = std::make_shared<const DenseDistanceGraph>(DdgVariant::strict_external, std::vector<VertexId>{},
                                                        std::vector<Distance>{}, tuple);
  } else {
    if (level + 1 >= divisions_.size()) throw std::logic_error("no enclosing level above a non-root tuple");
    std::vector<NodeId> up;
    for (NodeId q : tuple) {
      NodeId r = division_ancestor(t, divisions_[level + 1], q);
      if (r == kNoNode) throw std::logic_error("r-divisions are not nested");
      up.push_back(r);
    }
    std::sort(up.begin(), up.end());
    up.erase(std::unique(up.begin(), up.end()), up.end());
    if (up == tuple) {
      result = compute(tuple, level + 1);
    } else {
      DdgPtr outer = compute(up, level + 1);
      DdgUnion un;
      if (outer->size() > 0) un.add(outer);
      for (NodeId r : up) {
        std::vector<NodeId> inside;
        for (NodeId q : tuple)
          if (t.is_ancestor(r, q)) inside.push_back(q);
        un.add(enclosing_part(inside, r));
      }
      std::vector<VertexId> vs;
      for (NodeId q : tuple) vs.insert(vs.end(), t.piece(q).boundary.begin(), t.piece(q).boundary.end());
      std::sort(vs.begin(), vs.end());
      vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
      const std::size_t m = vs.size();
      std::vector<Distance> w(m * m, Distance::unreachable());
      std::vector<VertexId> forbid;
      for (std::size_t i = 0; i < m; ++i) {
        w[i * m + i] = Distance::zero();
        forbid.assign(vs.begin(), vs.end());
        forbid.erase(forbid.begin() + static_cast<long>(i));
        un.set_forbidden_tails(forbid);
        std::pair<VertexId, Distance> src{vs[i], Distance::zero()};
        auto res = multi_dijkstra(un, std::span(&src, 1));
        for (std::size_t j = 0; j < m; ++j)
          if (j != i) w[i * m + j] = res.at(vs[j]);
      }
      result = std::make_shared<const DenseDistanceGraph>(DdgVariant::strict_external, std::move(vs), std::move(w),
                                                          tuple);
    }
  }
  std::lock_guard<std::mutex> lock(mu_);
  return memo_.emplace(tuple, result).first->second;
}

DdgPtr compute_ddg_external(const DdgStore& store, std::span<const NodeId> tuple) {
  ExternalDdgBuilder b(store);
  return b.get(tuple);
}

}  // namespace planar_oracle
