#include "planar_oracle/dynamic_oracle.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "planar_oracle/parallel.h"

namespace planar_oracle {

namespace {

constexpr Weight kWeightLimit = Weight(1) << 63;
constexpr std::size_t kNoPiece = static_cast<std::size_t>(-1);

template <class T>
void insert_sorted(std::vector<T>& v, T x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) v.insert(it, x);
}

template <class T>
void erase_value(std::vector<T>& v, T x) {
  v.erase(std::remove(v.begin(), v.end(), x), v.end());
}

}  // namespace

DynamicOracle::DynamicOracle(const EmbeddedPlanarGraph& g, DynamicParams params)
    : params_(params), arcs_(g.arcs()), arc_alive_(g.arc_count(), 1), rotation_(g.rotations()),
      alive_(g.vertex_count(), 1) {
  if (params.r < 1) throw std::invalid_argument("r must be positive");
  threshold_ = static_cast<std::size_t>(std::ceil(std::sqrt(static_cast<double>(params.r))));
  set_total(g.total_weight());
  rebuild();
}

void DynamicOracle::set_total(Weight total) {
  if (total >= kWeightLimit) throw WeightOverflowError("total weight would reach 2^63");
  total_weight_ = total;
  shift_.update(total);
}

EmbeddedPlanarGraph DynamicOracle::snapshot(std::vector<ArcId>* arc_ids) const {
  std::vector<ArcId> dense(arcs_.size(), 0);
  std::vector<Arc> arcs;
  std::vector<ArcId> ids;
  for (ArcId a = 0; a < arcs_.size(); ++a) {
    if (!arc_alive_[a]) continue;
    dense[a] = static_cast<ArcId>(arcs.size());
    arcs.push_back(arcs_[a]);
    ids.push_back(a);
  }
  std::vector<std::vector<ArcId>> rot(rotation_.size());
  for (VertexId v = 0; v < rotation_.size(); ++v)
    for (ArcId a : rotation_[v]) rot[v].push_back(dense[a]);
  if (arc_ids) *arc_ids = std::move(ids);
  return EmbeddedPlanarGraph(rotation_.size(), std::move(arcs), std::move(rot));
}

void DynamicOracle::rebuild() {
  std::vector<ArcId> ids;
  EmbeddedPlanarGraph g = snapshot(&ids);
  DecompositionTree t = build_decomposition(g, params_.leaf_size, params_.base);
  auto div = division_at_most(t, params_.r);

  pieces_.assign(div.size(), DynPiece{});
  pieces_of_.assign(vertex_count(), {});
  arc_piece_.assign(arcs_.size(), kNoPiece);
  for (std::size_t i = 0; i < div.size(); ++i) {
    const Piece& p = t.piece(div[i]);
    for (ArcId a : p.arcs) {
      pieces_[i].arcs.push_back(ids[a]);
      arc_piece_[ids[a]] = i;
    }
    pieces_[i].vertices = p.vertices;
    for (VertexId v : p.vertices) pieces_of_[v].push_back(i);
  }
  for (VertexId v = 0; v < vertex_count(); ++v) {
    if (!pieces_of_[v].empty()) continue;
    if (pieces_.empty()) pieces_.emplace_back();
    insert_sorted(pieces_[0].vertices, v);
    pieces_of_[v].push_back(0);
  }
  deleted_boundary_.clear();
  parallel_for(pieces_.size(), [&](std::size_t i) { recompute(i); });
  ops_ = 0;
}

void DynamicOracle::refresh_raw(std::size_t i) {
  DynPiece& p = pieces_[i];
  p.raw = std::make_shared<const Subgraph>(std::span<const Arc>(arcs_), p.arcs, p.vertices);
}

void DynamicOracle::recompute(std::size_t i) {
  DynPiece& p = pieces_[i];
  p.boundary.clear();
  for (VertexId v : p.vertices)
    if (pieces_of_[v].size() >= 2) p.boundary.push_back(v);
  auto d = std::make_shared<DenseDistanceGraph>(
      compute_strict_ddg(std::span<const Arc>(arcs_), p.arcs, p.boundary, shift_));
  std::vector<std::uint32_t> order(d->size());
  std::iota(order.begin(), order.end(), 0u);
  d->prepare_monge(order);
  p.ddg = std::move(d);
  refresh_raw(i);
}

void DynamicOracle::finish_op() {
  if (++ops_ >= threshold_) {
    rebuild();
    ++rebuilds_;
  }
}

std::size_t DynamicOracle::lowest_piece(VertexId v) const { return pieces_of_.at(v).front(); }

void DynamicOracle::add_member(std::size_t i, VertexId v, std::vector<std::size_t>& dirty) {
  auto& mine = pieces_of_[v];
  if (std::binary_search(mine.begin(), mine.end(), i)) return;
  // a vertex turning shared becomes boundary in the piece that already had it
  if (mine.size() == 1) dirty.push_back(mine.front());
  insert_sorted(mine, i);
  insert_sorted(pieces_[i].vertices, v);
}

void DynamicOracle::check_arc(ArcId a) const {
  if (!arc_alive(a)) throw std::invalid_argument("unknown or deleted arc " + std::to_string(a));
}

void DynamicOracle::check_alive(VertexId v) const {
  if (!vertex_alive(v)) throw std::invalid_argument("unknown or deleted vertex " + std::to_string(v));
}

void DynamicOracle::set_weight(ArcId a, Weight w) {
  check_arc(a);
  Weight total = total_weight_ - arcs_[a].weight;
  if (w >= kWeightLimit - total) throw WeightOverflowError("total weight would reach 2^63");
  set_total(total + w);
  arcs_[a].weight = w;
  recompute(arc_piece_[a]);
  finish_op();
}

ArcId DynamicOracle::insert_edge(VertexId tail, VertexId head, Weight w, std::size_t tail_pos,
                                 std::size_t head_pos) {
  check_alive(tail);
  check_alive(head);
  if (tail == head) throw EmbeddingError("self-loop at vertex " + std::to_string(tail));
  for (ArcId a : rotation_[tail])
    if (arcs_[a].tail == tail && arcs_[a].head == head)
      throw EmbeddingError("parallel arcs " + std::to_string(tail) + "->" + std::to_string(head));
  if (tail_pos > rotation_[tail].size() || head_pos > rotation_[head].size())
    throw std::invalid_argument("rotation position out of range");
  if (w >= kWeightLimit - total_weight_) throw WeightOverflowError("total weight would reach 2^63");

  // planarity: Euler check of the tentative embedding
  const ArcId id = static_cast<ArcId>(arcs_.size());
  {
    std::vector<ArcId> dense(arcs_.size() + 1, 0);
    std::vector<Arc> arcs;
    for (ArcId a = 0; a < arcs_.size(); ++a)
      if (arc_alive_[a]) {
        dense[a] = static_cast<ArcId>(arcs.size());
        arcs.push_back(arcs_[a]);
      }
    dense[id] = static_cast<ArcId>(arcs.size());
    arcs.push_back({tail, head, w});
    std::vector<std::vector<ArcId>> rot(rotation_.size());
    for (VertexId v = 0; v < rotation_.size(); ++v) {
      std::vector<ArcId> r = rotation_[v];
      if (v == tail) r.insert(r.begin() + static_cast<long>(tail_pos), id);
      if (v == head) r.insert(r.begin() + static_cast<long>(head_pos), id);
      for (ArcId a : r) rot[v].push_back(dense[a]);
    }
    check_euler(rotation_.size(), arcs, rot);
  }

  arcs_.push_back({tail, head, w});
  arc_alive_.push_back(1);
  rotation_[tail].insert(rotation_[tail].begin() + static_cast<long>(tail_pos), id);
  rotation_[head].insert(rotation_[head].begin() + static_cast<long>(head_pos), id);
  set_total(total_weight_ + w);

  std::size_t target = kNoPiece;
  for (std::size_t p : pieces_of_[tail])
    if (std::binary_search(pieces_of_[head].begin(), pieces_of_[head].end(), p)) {
      target = p;
      break;
    }
  if (target == kNoPiece) target = lowest_piece(tail);
  arc_piece_.push_back(target);
  pieces_[target].arcs.push_back(id);
  std::vector<std::size_t> dirty{target};
  add_member(target, tail, dirty);
  add_member(target, head, dirty);
  std::sort(dirty.begin(), dirty.end());
  dirty.erase(std::unique(dirty.begin(), dirty.end()), dirty.end());
  for (std::size_t p : dirty) recompute(p);
  finish_op();
  return id;
}

void DynamicOracle::delete_edge(ArcId a) {
  check_arc(a);
  arc_alive_[a] = 0;
  erase_value(rotation_[arcs_[a].tail], a);
  erase_value(rotation_[arcs_[a].head], a);
  std::size_t p = arc_piece_[a];
  erase_value(pieces_[p].arcs, a);
  set_total(total_weight_ - arcs_[a].weight);
  recompute(p);
  finish_op();
}

VertexId DynamicOracle::insert_vertex(std::optional<VertexId> near) {
  if (near) check_alive(*near);
  if (pieces_.empty()) pieces_.emplace_back();
  std::size_t p = near ? lowest_piece(*near) : 0;
  auto v = static_cast<VertexId>(alive_.size());
  alive_.push_back(1);
  rotation_.emplace_back();
  pieces_of_.emplace_back();
  std::vector<std::size_t> dirty;
  add_member(p, v, dirty);
  refresh_raw(p);
  finish_op();
  return v;
}

void DynamicOracle::delete_vertex(VertexId v) {
  check_alive(v);
  Weight total = total_weight_;
  std::vector<std::size_t> touched;
  for (ArcId a : rotation_[v]) {
    if (!arc_alive_[a]) continue;
    arc_alive_[a] = 0;
    VertexId other = arcs_[a].tail == v ? arcs_[a].head : arcs_[a].tail;
    erase_value(rotation_[other], a);
    erase_value(pieces_[arc_piece_[a]].arcs, a);
    touched.push_back(arc_piece_[a]);
    total -= arcs_[a].weight;
  }
  rotation_[v].clear();
  alive_[v] = 0;
  set_total(total);
  if (pieces_of_[v].size() >= 2) {
    // stale DDG°s never route through v: it is their boundary, and out-arcs are suppressed
    insert_sorted(deleted_boundary_, v);
    std::sort(touched.begin(), touched.end());
    touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
    for (std::size_t p : touched) refresh_raw(p);
  } else {
    recompute(pieces_of_[v].front());
  }
  finish_op();
}

Distance DynamicOracle::query(VertexId u, VertexId v, Strategy strategy, QueryStats* stats) const {
  check_alive(u);
  check_alive(v);
  if (u == v) return Distance::zero();
  DdgUnion un;
  std::size_t pu = lowest_piece(u), pv = lowest_piece(v);
  un.add(pieces_[pu].raw);
  if (pv != pu) un.add(pieces_[pv].raw);
  for (const DynPiece& p : pieces_)
    if (p.ddg->size() > 0) un.add(p.ddg);
  un.set_forbidden_tails(deleted_boundary_);
  std::pair<VertexId, Distance> src{u, Distance::zero()};
  SearchStats ss;
  Distance d = multi_dijkstra(un, std::span(&src, 1), strategy, &ss).at(v);
  if (stats) {
    stats->members += un.member_count();
    stats->union_vertices += un.vertex_count_with_multiplicity();
    stats->distinct_vertices += un.vertices().size();
    stats->search.settled += ss.settled;
    stats->search.relaxations += ss.relaxations;
    stats->search.batches += ss.batches;
  }
  return d;
}

std::vector<DynOp> parse_dyn_script(std::istream& in) {
  std::vector<DynOp> ops;
  std::string text;
  std::size_t line = 0;
  while (std::getline(in, text)) {
    ++line;
    if (auto hash = text.find('#'); hash != std::string::npos) text.resize(hash);
    std::istringstream ss(text);
    std::string word;
    if (!(ss >> word)) continue;
    DynOp op;
    op.line = line;
    std::size_t lo, hi;
    if (word == "set" || word == "set_weight") {
      op.kind = DynOp::Kind::set_weight, lo = hi = 2;
    } else if (word == "insert_edge") {
      op.kind = DynOp::Kind::insert_edge, lo = hi = 5;
    } else if (word == "delete_edge") {
      op.kind = DynOp::Kind::delete_edge, lo = hi = 1;
    } else if (word == "insert_vertex") {
      op.kind = DynOp::Kind::insert_vertex, lo = 0, hi = 1;
    } else if (word == "delete_vertex") {
      op.kind = DynOp::Kind::delete_vertex, lo = hi = 1;
    } else if (word == "query") {
      op.kind = DynOp::Kind::query, lo = hi = 2;
    } else {
      throw ParseError(line, "unknown operation '" + word + "'");
    }
    std::string tok;
    while (ss >> tok) {
      if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError(line, "expected a nonnegative integer, got '" + tok + "'");
      try {
        op.args.push_back(std::stoull(tok));
      } catch (const std::out_of_range&) {
        throw ParseError(line, "number out of range");
      }
    }
    if (op.args.size() < lo || op.args.size() > hi) throw ParseError(line, "wrong argument count for " + word);
    ops.push_back(std::move(op));
  }
  return ops;
}

namespace {
std::uint32_t id32(std::uint64_t x) {
  if (x > 0xffffffffull) throw std::invalid_argument("id out of range");
  return static_cast<std::uint32_t>(x);
}
}  // namespace

std::string apply_dyn_op(DynamicOracle& o, const DynOp& op, Strategy strategy) {
  const auto& a = op.args;
  switch (op.kind) {
    case DynOp::Kind::set_weight:
      o.set_weight(id32(a[0]), a[1]);
      return "ok";
    case DynOp::Kind::insert_edge:
      return std::to_string(o.insert_edge(id32(a[0]), id32(a[1]), a[2], a[3], a[4]));
    case DynOp::Kind::delete_edge:
      o.delete_edge(id32(a[0]));
      return "ok";
    case DynOp::Kind::insert_vertex:
      return std::to_string(o.insert_vertex(a.empty() ? std::nullopt : std::optional<VertexId>(id32(a[0]))));
    case DynOp::Kind::delete_vertex:
      o.delete_vertex(id32(a[0]));
      return "ok";
    case DynOp::Kind::query:
      return o.query(id32(a[0]), id32(a[1]), strategy).to_string();
  }
  throw std::logic_error("unhandled operation");
}

}  // namespace planar_oracle
