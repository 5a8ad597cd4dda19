#include "planar_oracle/tradeoff_oracle.h"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "planar_oracle/external_ddg.h"
#include "planar_oracle/parallel.h"

namespace planar_oracle {

namespace {

std::vector<std::vector<NodeId>> combinations(const std::vector<NodeId>& items, std::size_t d) {
  std::vector<std::vector<NodeId>> out;
  std::vector<std::size_t> idx(d);
  for (std::size_t i = 0; i < d; ++i) idx[i] = i;
  if (d == 0 || d > items.size()) return out;
  while (true) {
    std::vector<NodeId> c;
    for (std::size_t i : idx) c.push_back(items[i]);
    out.push_back(std::move(c));
    std::size_t i = d;
    while (i > 0 && idx[i - 1] == items.size() - d + (i - 1)) --i;
    if (i == 0) break;
    ++idx[i - 1];
    for (std::size_t j = i; j < d; ++j) idx[j] = idx[j - 1] + 1;
  }
  return out;
}

void add_stats(QueryStats* stats, const DdgUnion& un, const SearchStats& ss) {
  if (!stats) return;
  stats->members += un.member_count();
  stats->union_vertices += un.vertex_count_with_multiplicity();
  stats->distinct_vertices += un.vertices().size();
  stats->search.settled += ss.settled;
  stats->search.relaxations += ss.relaxations;
  stats->search.batches += ss.batches;
}

// the tuple's ext plus, per tuple piece, the DDG°s representing it under the failures
void assemble_tuple(const DdgStore& store, const std::vector<NodeId>& tuple, const DdgPtr& ext,
                    const std::vector<VertexId>& specials, const std::vector<VertexId>& x, DdgUnion& un) {
  const DecompositionTree& t = store.tree();
  if (ext->size() > 0) un.add(ext);
  for (NodeId p : tuple) {
    std::vector<VertexId> sp, fx;
    for (VertexId w : specials)
      if (t.piece(p).contains(w)) sp.push_back(w);
    for (VertexId f : x)
      if (t.piece(p).contains(f)) fx.push_back(f);
    assemble_failure_union(store, p, sp, fx, x, un);
  }
  un.set_forbidden_tails(x);
}

}  // namespace

std::vector<NodeId> tuple_sibling_set(const DecompositionTree& t, const std::vector<NodeId>& tuple) {
  std::set<NodeId> out;
  for (NodeId q : tuple) {
    for (NodeId a = q; a != t.root(); a = t.piece(a).parent) {
      NodeId s = t.sibling(a);
      bool holds = std::any_of(tuple.begin(), tuple.end(), [&](NodeId p) { return t.is_ancestor(s, p); });
      if (!holds) out.insert(s);
    }
  }
  return {out.begin(), out.end()};
}

TradeoffOracle TradeoffOracle::build(std::shared_ptr<const EmbeddedPlanarGraph> g, TradeoffParams params) {
  FailureOracle base = FailureOracle::build(std::move(g), {params.leaf_size, params.base});
  std::size_t r = params.r;
  if (r == 0) r = base.tree().r_sequence().front();
  return build(std::move(base), r, params.k);
}

TradeoffOracle TradeoffOracle::build(FailureOracle base, std::size_t r, std::size_t k) {
  TradeoffOracle o;
  o.division_ = extract_r_division(base.tree(), r);
  std::size_t n = base.graph().vertex_count();
  if (k * r > n && k > 0) throw std::invalid_argument("k must be at most n / r");
  o.base_ = std::move(base);
  o.r_ = r;
  o.k_ = k;
  o.tuple_size_ = std::min(k + 1, o.division_.size());

  const DdgStore& store = o.base_.store();
  const DecompositionTree& t = o.base_.tree();
  auto all = combinations(o.division_, o.tuple_size_);
  std::vector<TupleData> data(all.size());
  ExternalDdgBuilder builder(store);
  parallel_for(all.size(), [&](std::size_t i) {
    const auto& tuple = all[i];
    TupleData& td = data[i];
    td.ext = builder.get(tuple);
    auto sib = tuple_sibling_set(t, tuple);
    DdgUnion un;
    for (NodeId q : sib) un.add(store.get(q));
    const auto& ys = td.ext->vertices();
    const std::size_t m = ys.size();
    for (NodeId q : sib) td.vor[q].assign(m * t.piece(q).boundary.size(), Distance::unreachable());
    std::vector<VertexId> forbid;
    for (std::size_t yi = 0; yi < m; ++yi) {
      VertexId y = ys[yi];
      SearchResult res;
      bool inside = un.contains(y);
      if (inside) {
        forbid.assign(ys.begin(), ys.end());
        forbid.erase(forbid.begin() + static_cast<long>(yi));
        un.set_forbidden_tails(forbid);
        std::pair<VertexId, Distance> src{y, Distance::zero()};
        res = multi_dijkstra(un, std::span(&src, 1));
      }
      for (NodeId q : sib) {
        const auto& bq = t.piece(q).boundary;
        Distance* row = td.vor[q].data() + yi * bq.size();
        for (std::size_t j = 0; j < bq.size(); ++j) {
          if (bq[j] == y)
            row[j] = Distance::zero();
          else if (inside && !std::binary_search(ys.begin(), ys.end(), bq[j]))  // other tuple vertices are deleted
            row[j] = res.at(bq[j]);
        }
      }
    }
  });
  std::set<NodeId> qs;
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (auto& [q, _] : data[i].vor) qs.insert(q);
    o.tuples_.emplace(std::move(all[i]), std::move(data[i]));
  }
  std::vector<NodeId> qlist(qs.begin(), qs.end());
  std::vector<PieceDistanceTable> tabs(qlist.size());
  parallel_for(qlist.size(), [&](std::size_t i) {
    tabs[i] = compute_piece_distance_table(o.base_.graph(), t.piece(qlist[i]));
  });
  for (std::size_t i = 0; i < qlist.size(); ++i) o.tables_.emplace(qlist[i], std::move(tabs[i]));
  return o;
}

const TupleData& TradeoffOracle::tuple(std::vector<NodeId> pieces) const {
  std::sort(pieces.begin(), pieces.end());
  auto it = tuples_.find(pieces);
  if (it == tuples_.end()) throw std::out_of_range("no data stored for this tuple");
  return it->second;
}

NodeId TradeoffOracle::piece_of(VertexId v) const {
  base_.graph().check_vertex(v);
  return division_ancestor(base_.tree(), division_, base_.tree().leaf_of(v));
}

void TradeoffOracle::pad(std::vector<NodeId>& tuple, NodeId avoid_subtree) const {
  const DecompositionTree& t = base_.tree();
  for (NodeId q : division_) {
    if (tuple.size() >= tuple_size_) break;
    if (std::find(tuple.begin(), tuple.end(), q) != tuple.end()) continue;
    if (avoid_subtree != kNoNode && t.is_ancestor(avoid_subtree, q)) continue;
    tuple.push_back(q);
  }
  std::sort(tuple.begin(), tuple.end());
}

Distance TradeoffOracle::query(VertexId u, VertexId v, std::span<const VertexId> failed, Strategy strategy,
                               QueryStats* stats, QueryPath* path) const {
  auto x = normalize_failures(base_.graph(), u, v, failed);
  if (x.size() > k_) throw std::invalid_argument("more failures than the oracle was built for");
  if (u == v) {
    if (path) *path = QueryPath::trivial;
    return Distance::zero();
  }
  std::vector<VertexId> elements{u};
  elements.insert(elements.end(), x.begin(), x.end());

  const DecompositionTree& t = base_.tree();
  const Piece& rv = t.piece(piece_of(v));
  bool shared = std::any_of(elements.begin(), elements.end(), [&](VertexId e) { return rv.contains(e); });
  if (!shared) {
    std::set<NodeId> assigned;
    for (VertexId e : elements) assigned.insert(piece_of(e));
    shared = assigned.size() < elements.size();
  }
  if (!shared) {
    if (auto d = main_path(u, v, elements, x, strategy, stats)) {
      if (path) *path = QueryPath::main;
      return *d;
    }
  }
  if (path) *path = QueryPath::fallback;
  return fallback(u, v, elements, x, strategy, stats);
}

std::optional<Distance> TradeoffOracle::main_path(VertexId u, VertexId v, const std::vector<VertexId>& elements,
                                                  const std::vector<VertexId>& x, Strategy strategy,
                                                  QueryStats* stats) const {
  const DecompositionTree& t = base_.tree();
  NodeId q = highest_excluding_ancestor(t, piece_of(v), elements);
  NodeId r = t.sibling(q);
  auto first = std::find_if(elements.begin(), elements.end(), [&](VertexId e) { return t.piece(r).contains(e); });
  if (first == elements.end()) throw std::logic_error("sibling of the excluding ancestor holds no element");
  NodeId ri = division_ancestor(t, division_, t.leaf_within(r, *first));
  std::vector<NodeId> tuple{ri};
  for (VertexId e : elements) {
    if (t.piece(ri).contains(e)) continue;
    NodeId p = piece_of(e);
    if (std::find(tuple.begin(), tuple.end(), p) == tuple.end()) tuple.push_back(p);
  }
  if (tuple.size() > tuple_size_) return std::nullopt;
  pad(tuple, q);
  if (tuple.size() < tuple_size_) return std::nullopt;

  const TupleData& td = tuples_.at(tuple);
  auto vit = td.vor.find(q);
  if (vit == td.vor.end()) throw std::logic_error("missing additive-weight table");
  const PieceDistanceTable& tab = tables_.at(q);

  DdgUnion un;
  assemble_tuple(base_.store(), tuple, td.ext, {u}, x, un);
  std::pair<VertexId, Distance> src{u, Distance::zero()};
  SearchStats ss;
  SearchResult res = multi_dijkstra(un, std::span(&src, 1), strategy, &ss);
  add_stats(stats, un, ss);

  auto vt = std::lower_bound(tab.targets.begin(), tab.targets.end(), v);
  if (vt == tab.targets.end() || *vt != v) throw std::logic_error("v is not in the excluding ancestor");
  const std::size_t vcol = static_cast<std::size_t>(vt - tab.targets.begin());
  const std::size_t nt = tab.targets.size();
  const std::size_t ns = tab.sources.size();
  const auto& ys = td.ext->vertices();
  Distance best = Distance::unreachable();
  for (std::size_t yi = 0; yi < ys.size(); ++yi) {
    if (std::binary_search(x.begin(), x.end(), ys[yi])) continue;
    Distance to_y = res.at(ys[yi]);
    if (!to_y.is_finite()) continue;
    const Distance* w = vit->second.data() + yi * ns;
    Distance tail = Distance::unreachable();
    for (std::size_t s = 0; s < ns; ++s) tail = min(tail, w[s] + tab.dist[s * nt + vcol]);
    best = min(best, to_y + tail);
  }
  return best;
}

Distance TradeoffOracle::fallback(VertexId u, VertexId v, const std::vector<VertexId>& elements,
                                  const std::vector<VertexId>& x, Strategy strategy, QueryStats* stats) const {
  const DecompositionTree& t = base_.tree();
  NodeId rv = piece_of(v);
  std::vector<NodeId> tuple{rv};
  for (VertexId e : elements) {
    if (t.piece(rv).contains(e)) continue;
    NodeId p = piece_of(e);
    if (std::find(tuple.begin(), tuple.end(), p) == tuple.end()) tuple.push_back(p);
  }
  if (tuple.size() > tuple_size_) throw std::logic_error("fallback tuple exceeds the stored tuple size");
  pad(tuple, kNoNode);
  const TupleData& td = tuples_.at(tuple);
  DdgUnion un;
  assemble_tuple(base_.store(), tuple, td.ext, {u, v}, x, un);
  std::pair<VertexId, Distance> src{u, Distance::zero()};
  SearchStats ss;
  Distance ans = multi_dijkstra(un, std::span(&src, 1), strategy, &ss).at(v);
  add_stats(stats, un, ss);
  return ans;
}

std::string TradeoffOracle::serialize() const {
  BinaryWriter w;
  write_file_header(w, OracleMode::tradeoff);
  base_.write_sections(w, r_, k_);

  BinaryWriter rdiv;
  rdiv.u64(r_);
  rdiv.u64(k_);
  rdiv.u32s(division_);
  w.section("RDIV", rdiv);

  BinaryWriter extd, vort;
  extd.u64(tuples_.size());
  vort.u64(tuples_.size());
  for (const auto& [tuple, td] : tuples_) {
    extd.u32s(tuple);
    write_ddg(extd, *td.ext);
    vort.u32s(tuple);
    vort.u64(td.vor.size());
    for (const auto& [q, table] : td.vor) {
      vort.u32(q);
      vort.distances(table);
    }
  }
  w.section("EXTD", extd);
  w.section("VORT", vort);

  BinaryWriter ptab;
  ptab.u64(tables_.size());
  for (const auto& [q, tab] : tables_) {
    ptab.u32(q);
    ptab.u32s(tab.sources);
    ptab.u32s(tab.targets);
    ptab.distances(tab.dist);
  }
  w.section("PTAB", ptab);
  return w.str();
}

void TradeoffOracle::save(std::ostream& out) const {
  auto s = serialize();
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

TradeoffOracle TradeoffOracle::from_sections(FailureOracle base, BinaryReader& r) {
  TradeoffOracle o;
  const DecompositionTree& t = base.tree();
  BinaryReader rdiv = r.section("RDIV");
  o.r_ = rdiv.u64();
  o.k_ = rdiv.u64();
  o.division_ = rdiv.u32s();
  try {
    if (o.division_ != extract_r_division(t, o.r_)) throw FormatError("stored r-division does not match the tree");
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  o.tuple_size_ = std::min<std::size_t>(o.k_ + 1, o.division_.size());

  auto check_tuple = [&](const std::vector<NodeId>& tuple) {
    if (tuple.size() != o.tuple_size_ || !std::is_sorted(tuple.begin(), tuple.end()) ||
        std::adjacent_find(tuple.begin(), tuple.end()) != tuple.end())
      throw FormatError("malformed tuple key");
    for (NodeId q : tuple)
      if (!std::binary_search(o.division_.begin(), o.division_.end(), q))
        throw FormatError("tuple piece outside the r-division");
  };

  BinaryReader extd = r.section("EXTD");
  std::uint64_t count = extd.u64();
  for (std::uint64_t i = 0; i < count; ++i) {
    auto tuple = extd.u32s();
    check_tuple(tuple);
    auto d = std::make_shared<const DenseDistanceGraph>(read_ddg(extd));
    o.tuples_[tuple].ext = std::move(d);
  }
  BinaryReader vort = r.section("VORT");
  if (vort.u64() != count) throw FormatError("table count differs from tuple count");
  for (std::uint64_t i = 0; i < count; ++i) {
    auto tuple = vort.u32s();
    auto it = o.tuples_.find(tuple);
    if (it == o.tuples_.end()) throw FormatError("tables for an unknown tuple");
    std::uint64_t nq = vort.u64();
    for (std::uint64_t j = 0; j < nq; ++j) {
      NodeId q = vort.u32();
      if (q >= t.size()) throw FormatError("table for unknown piece");
      auto table = vort.distances();
      if (table.size() != it->second.ext->size() * t.piece(q).boundary.size())
        throw FormatError("additive-weight table has the wrong shape");
      it->second.vor[q] = std::move(table);
    }
  }
  BinaryReader ptab = r.section("PTAB");
  std::uint64_t nt = ptab.u64();
  for (std::uint64_t i = 0; i < nt; ++i) {
    PieceDistanceTable tab;
    tab.piece = ptab.u32();
    if (tab.piece >= t.size()) throw FormatError("distance table for unknown piece");
    tab.sources = ptab.u32s();
    tab.targets = ptab.u32s();
    tab.dist = ptab.distances();
    if (tab.sources != t.piece(tab.piece).boundary || tab.targets != t.piece(tab.piece).vertices ||
        tab.dist.size() != tab.sources.size() * tab.targets.size())
      throw FormatError("piece distance table does not match its piece");
    o.tables_.emplace(tab.piece, std::move(tab));
  }
  o.base_ = std::move(base);
  return o;
}

TradeoffOracle TradeoffOracle::load(std::istream& in) {
  std::string data = read_all(in);
  BinaryReader r(data);
  if (read_file_header(r) != OracleMode::tradeoff) throw FormatError("file holds a failure oracle");
  FailureOracle::Header h;
  FailureOracle base = FailureOracle::read_sections(r, &h);
  TradeoffOracle o = from_sections(std::move(base), r);
  if (o.r_ != h.r || o.k_ != h.k) throw FormatError("header and r-division section disagree");
  if (!r.done()) throw FormatError("trailing data in oracle file");
  return o;
}

AnyOracle load_oracle(std::istream& in) {
  std::string data = read_all(in);
  BinaryReader probe(data);
  OracleMode mode = read_file_header(probe);
  std::istringstream again(data);
  if (mode == OracleMode::failure) return FailureOracle::load(again);
  return TradeoffOracle::load(again);
}

Distance query_oracle(const AnyOracle& o, VertexId u, VertexId v, std::span<const VertexId> failed,
                      Strategy strategy, QueryStats* stats) {
  return std::visit([&](const auto& x) { return x.query(u, v, failed, strategy, stats); }, o);
}

const FailureOracle& base_of(const AnyOracle& o) {
  if (auto* f = std::get_if<FailureOracle>(&o)) return *f;
  return std::get<TradeoffOracle>(o).base();
}

}  // namespace planar_oracle
