#include "planar_oracle/fr_dijkstra.h"

#include <algorithm>
#include <numeric>
#include <functional>
#include <queue>
#include <stdexcept>

#include "planar_oracle/monge.h"
#include "planar_oracle/parallel.h"

namespace planar_oracle {

Strategy parse_strategy(const std::string& s) {
  if (s == "naive") return Strategy::naive;
  if (s == "monge") return Strategy::monge;
  throw std::invalid_argument("unknown strategy '" + s + "'");
}

const char* strategy_name(Strategy s) { return s == Strategy::naive ? "naive" : "monge"; }

void DdgUnion::add(DdgPtr ddg) {
  if (!ddg) throw std::invalid_argument("null DDG member");
  ddgs_.push_back(std::move(ddg));
  indexed_ = false;
}

void DdgUnion::add(std::shared_ptr<const Subgraph> raw) {
  if (!raw) throw std::invalid_argument("null subgraph member");
  raws_.push_back(std::move(raw));
  indexed_ = false;
}

void DdgUnion::set_forbidden_tails(std::span<const VertexId> tails) {
  forbidden_.assign(tails.begin(), tails.end());
  std::sort(forbidden_.begin(), forbidden_.end());
  forbidden_.erase(std::unique(forbidden_.begin(), forbidden_.end()), forbidden_.end());
}

void DdgUnion::index() const {
  if (indexed_) return;
  nodes_.clear();
  for (const auto& d : ddgs_) nodes_.insert(nodes_.end(), d->vertices().begin(), d->vertices().end());
  for (const auto& r : raws_) nodes_.insert(nodes_.end(), r->vertices().begin(), r->vertices().end());
  std::sort(nodes_.begin(), nodes_.end());
  nodes_.erase(std::unique(nodes_.begin(), nodes_.end()), nodes_.end());
  auto node_of = [&](VertexId v) {
    return static_cast<std::uint32_t>(std::lower_bound(nodes_.begin(), nodes_.end(), v) - nodes_.begin());
  };
  const std::size_t M = member_count();
  member_nodes_.assign(M, {});
  occ_start_.assign(nodes_.size() + 1, 0);
  for (std::size_t m = 0; m < M; ++m) {
    const auto& vs = m < ddgs_.size() ? ddgs_[m]->vertices() : raws_[m - ddgs_.size()]->vertices();
    // both vertex lists are sorted, so a merge walk would do; binary search is simpler
    member_nodes_[m].reserve(vs.size());
    for (VertexId v : vs) {
      std::uint32_t x = node_of(v);
      member_nodes_[m].push_back(x);
      ++occ_start_[x + 1];
    }
  }
  for (std::size_t x = 0; x < nodes_.size(); ++x) occ_start_[x + 1] += occ_start_[x];
  occ_.assign(occ_start_.back(), {});
  std::vector<std::uint32_t> fill(occ_start_.begin(), occ_start_.end() - 1);
  for (std::uint32_t m = 0; m < M; ++m)
    for (std::uint32_t i = 0; i < member_nodes_[m].size(); ++i) occ_[fill[member_nodes_[m][i]]++] = {m, i};
  indexed_ = true;
}

bool DdgUnion::contains(VertexId v) const {
  index();
  return std::binary_search(nodes_.begin(), nodes_.end(), v);
}

const std::vector<VertexId>& DdgUnion::vertices() const {
  index();
  return nodes_;
}

std::size_t DdgUnion::vertex_count_with_multiplicity() const {
  std::size_t s = 0;
  for (const auto& d : ddgs_) s += d->size();
  for (const auto& r : raws_) s += r->size();
  return s;
}

Distance SearchResult::at(VertexId v) const {
  auto it = std::lower_bound(vertices_.begin(), vertices_.end(), v);
  if (it == vertices_.end() || *it != v) return Distance::unreachable();
  return dist_[static_cast<std::size_t>(it - vertices_.begin())];
}

class UnionSearch {
 public:
  UnionSearch(const DdgUnion& u, Strategy strategy, SearchStats* stats)
      : u_(u), strategy_(strategy), stats_(stats) {
    u_.index();
    const std::size_t N = u_.nodes_.size();
    dist_.assign(N, Distance::unreachable());
    settled_.assign(N, 0);
    forbidden_.assign(N, 0);
    for (VertexId x : u_.forbidden_) {
      auto it = std::lower_bound(u_.nodes_.begin(), u_.nodes_.end(), x);
      if (it != u_.nodes_.end() && *it == x) forbidden_[static_cast<std::size_t>(it - u_.nodes_.begin())] = 1;
    }
    if (strategy_ == Strategy::monge) {
      pending_.assign(u_.ddgs_.size(), {});
    }
  }

  SearchResult run(std::span<const std::pair<VertexId, Distance>> sources) {
    for (auto [v, d0] : sources) {
      auto it = std::lower_bound(u_.nodes_.begin(), u_.nodes_.end(), v);
      if (it == u_.nodes_.end() || *it != v)
        throw std::invalid_argument("source vertex " + std::to_string(v) + " is not in the union");
      relax(static_cast<std::uint32_t>(it - u_.nodes_.begin()), d0);
    }
    while (!heap_.empty()) {
      Event e = heap_.top();
      heap_.pop();
      if (e.member == kNodeEvent) {
        if (settled_[e.node] || e.key != dist_[e.node].raw()) continue;
        settle(e.node);
      } else {
        flush(e.member);
      }
    }
    if (stats_) {
      stats_->settled += settled_count_;
      stats_->relaxations += relaxations_;
      stats_->batches += batches_;
    }
    return SearchResult(u_.nodes_, std::move(dist_));
  }

 private:
  static constexpr std::uint32_t kNodeEvent = std::numeric_limits<std::uint32_t>::max();
  struct Event {
    std::uint64_t key;
    std::uint32_t member;
    std::uint32_t node;
    bool operator>(const Event& o) const {
      if (key != o.key) return key > o.key;
      if (member != o.member) return member > o.member;
      return node > o.node;
    }
  };

  void relax(std::uint32_t x, Distance d) {
    if (settled_[x] || !(d < dist_[x])) return;
    dist_[x] = d;
    heap_.push({d.raw(), kNodeEvent, x});
  }

  void settle(std::uint32_t x) {
    settled_[x] = 1;
    ++settled_count_;
    if (forbidden_[x]) return;
    const Distance dx = dist_[x];
    for (std::uint32_t k = u_.occ_start_[x]; k < u_.occ_start_[x + 1]; ++k) {
      auto [m, i] = u_.occ_[k];
      const auto& map = u_.member_nodes_[m];
      if (m >= u_.ddgs_.size()) {
        const Subgraph& raw = *u_.raws_[m - u_.ddgs_.size()];
        for (const Subgraph::Out& o : raw.out(i)) {
          ++relaxations_;
          relax(map[o.head], dx + o.weight);
        }
        continue;
      }
      const DenseDistanceGraph& d = *u_.ddgs_[m];
      if (strategy_ == Strategy::naive) {
        const Distance* row = d.row(i);
        for (std::uint32_t j = 0; j < d.size(); ++j) {
          if (j == i || !row[j].is_finite()) continue;
          ++relaxations_;
          relax(map[j], dx + row[j]);
        }
      } else {
        Distance key = dx + d.row_min(i);
        if (!key.is_finite()) continue;
        pending_[m].push_back(i);
        heap_.push({key.raw(), m, i});
      }
    }
  }

  // relaxes every pending row of DDG member m at once
  void flush(std::uint32_t m) {
    auto& rows = pending_[m];
    if (rows.empty()) return;
    ++batches_;
    const DenseDistanceGraph& d = *u_.ddgs_[m];
    const auto& map = u_.member_nodes_[m];
    const MongeLayout* L = d.monge();
    std::vector<Distance> best(d.size(), Distance::unreachable());
    if (L) {
      std::vector<std::uint32_t> pos;
      pos.reserve(rows.size());
      for (std::uint32_t i : rows) pos.push_back(L->position[i]);
      std::sort(pos.begin(), pos.end());
      std::vector<Distance> off;
      off.reserve(pos.size());
      for (std::uint32_t p : pos) off.push_back(dist_[map[L->order[p]]]);
      relaxations_ += batch_column_minima(d, *L, pos, off, best);
      for (std::uint32_t c = 0; c < d.size(); ++c) relax(map[L->order[c]], best[c]);
    } else {
      for (std::uint32_t i : rows) {
        const Distance* row = d.row(i);
        Distance di = dist_[map[i]];
        for (std::uint32_t j = 0; j < d.size(); ++j) best[j] = min(best[j], di + row[j]);
        relaxations_ += d.size();
      }
      for (std::uint32_t j = 0; j < d.size(); ++j) relax(map[j], best[j]);
    }
    rows.clear();
  }

  const DdgUnion& u_;
  Strategy strategy_;
  SearchStats* stats_;
  std::vector<Distance> dist_;
  std::vector<std::uint8_t> settled_, forbidden_;
  std::vector<std::vector<std::uint32_t>> pending_;
  std::priority_queue<Event, std::vector<Event>, std::greater<>> heap_;
  std::uint64_t settled_count_ = 0, relaxations_ = 0, batches_ = 0;
};

SearchResult multi_dijkstra(const DdgUnion& u, std::span<const std::pair<VertexId, Distance>> sources,
                            Strategy strategy, SearchStats* stats) {
  return UnionSearch(u, strategy, stats).run(sources);
}

void prepare_piece_monge(DenseDistanceGraph& d, const Piece& p) {
  std::vector<std::uint32_t> order;
  order.reserve(d.size());
  for (VertexId v : p.boundary_cycle) {
    auto i = d.index_of(v);
    if (i >= 0) order.push_back(static_cast<std::uint32_t>(i));
  }
  if (order.size() != d.size()) {
    order.resize(d.size());
    std::iota(order.begin(), order.end(), 0u);
  }
  d.prepare_monge(order);
}

DdgStore::DdgStore(std::shared_ptr<const EmbeddedPlanarGraph> g, std::shared_ptr<const DecompositionTree> t,
                   ShiftConstant shift, std::vector<DdgPtr> stored)
    : g_(std::move(g)), t_(std::move(t)), shift_(std::move(shift)), stored_(std::move(stored)) {
  if (stored_.size() != t_->size()) throw std::invalid_argument("DDG store size differs from tree size");
}

DdgStore DdgStore::build(std::shared_ptr<const EmbeddedPlanarGraph> g, std::shared_ptr<const DecompositionTree> t,
                         ShiftConstant shift) {
  std::vector<DdgPtr> stored(t->size());
  parallel_for(t->size(), [&](std::size_t i) {
    const Piece& p = t->piece(static_cast<NodeId>(i));
    if (p.is_leaf()) return;
    auto d = std::make_shared<DenseDistanceGraph>(compute_ddg_internal(*g, *t, p.id, shift));
    prepare_piece_monge(*d, p);
    stored[i] = std::move(d);
  });
  return DdgStore(std::move(g), std::move(t), std::move(shift), std::move(stored));
}

DdgPtr DdgStore::get(NodeId id) const {
  if (stored_.at(id)) return stored_[id];
  const Piece& p = t_->piece(id);
  auto d = std::make_shared<DenseDistanceGraph>(compute_ddg_internal(*g_, *t_, id, shift_));
  prepare_piece_monge(*d, p);
  return d;
}

DdgPtr DdgStore::leaf_variant(NodeId leaf, std::span<const VertexId> extra_boundary,
                              std::span<const VertexId> removed) const {
  const Piece& p = t_->piece(leaf);
  std::vector<VertexId> gone;
  for (VertexId x : removed)
    if (p.contains(x)) gone.push_back(x);
  std::sort(gone.begin(), gone.end());
  std::vector<VertexId> boundary;
  auto keep = [&](VertexId v) { return !std::binary_search(gone.begin(), gone.end(), v); };
  for (VertexId b : p.boundary)
    if (keep(b)) boundary.push_back(b);
  for (VertexId w : extra_boundary)
    if (keep(w) && p.contains(w)) boundary.push_back(w);
  auto d = std::make_shared<DenseDistanceGraph>(compute_strict_ddg(*g_, p.arcs, boundary, shift_, gone, {leaf}));
  std::vector<std::uint32_t> order(d->size());
  std::iota(order.begin(), order.end(), 0u);
  d->prepare_monge(order);
  return d;
}

std::size_t DdgStore::stored_entries() const {
  std::size_t s = 0;
  for (const auto& d : stored_)
    if (d) s += d->weights().size();
  return s;
}

Cone assemble_cone(const DdgStore& store, VertexId v) {
  const DecompositionTree& t = store.tree();
  store.graph().check_vertex(v);
  Cone c;
  c.apex = v;
  NodeId leaf = t.leaf_of(v);
  c.members.push_back(store.leaf_variant(leaf, std::span(&v, 1), {}));
  c.member_nodes.push_back(leaf);
  for (NodeId a = leaf; t.piece(a).parent != kNoNode; a = t.piece(a).parent) {
    NodeId s = t.sibling(a);
    c.members.push_back(store.get(s));
    c.member_nodes.push_back(s);
  }
  return c;
}

void add_cone(DdgUnion& u, const Cone& c) {
  for (const auto& m : c.members) u.add(m);
}

}  // namespace planar_oracle
