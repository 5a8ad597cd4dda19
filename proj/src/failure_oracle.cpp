#include "planar_oracle/failure_oracle.h"

#include <algorithm>
#include <iterator>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace planar_oracle {

AssemblyRecord assemble_failure_union(const DdgStore& store, NodeId top, std::span<const VertexId> specials,
                                      std::span<const VertexId> failures_inside,
                                      std::span<const VertexId> all_failed, DdgUnion& out) {
  const DecompositionTree& t = store.tree();
  auto leaf_in = [&](VertexId w) { return top == t.root() ? t.leaf_of(w) : t.leaf_within(top, w); };
  AssemblyRecord rec;

  std::set<NodeId> marked;
  for (VertexId x : failures_inside) {
    for (NodeId a = leaf_in(x);; a = t.piece(a).parent) {
      if (t.piece(a).is_internal(x)) marked.insert(a);
      if (a == top) break;
    }
  }
  std::map<NodeId, std::vector<VertexId>> leaves;
  for (VertexId w : specials) leaves[leaf_in(w)].push_back(w);
  for (VertexId x : failures_inside) leaves[leaf_in(x)];

  std::set<NodeId> full;
  if (leaves.empty()) {
    if (!marked.count(top)) full.insert(top);
  }
  for (auto& [leaf, extra] : leaves) {
    out.add(store.leaf_variant(leaf, extra, all_failed));
    rec.modified_leaves.push_back(leaf);
    for (NodeId a = leaf; a != top; a = t.piece(a).parent) {
      NodeId s = t.sibling(a);
      if (!marked.count(s) && !leaves.count(s)) full.insert(s);
    }
  }
  for (NodeId id : full) out.add(store.get(id));
  rec.full_members.assign(full.begin(), full.end());
  rec.marked.assign(marked.begin(), marked.end());
  return rec;
}

bool is_represented(const DecompositionTree& t, const AssemblyRecord& rec, NodeId a) {
  if (std::binary_search(rec.full_members.begin(), rec.full_members.end(), a)) return true;
  if (std::find(rec.modified_leaves.begin(), rec.modified_leaves.end(), a) != rec.modified_leaves.end()) return true;
  const Piece& p = t.piece(a);
  if (p.is_leaf()) return false;
  return is_represented(t, rec, p.children[0]) && is_represented(t, rec, p.children[1]);
}

std::vector<VertexId> normalize_failures(const EmbeddedPlanarGraph& g, VertexId u, VertexId v,
                                         std::span<const VertexId> failed) {
  g.check_vertex(u);
  g.check_vertex(v);
  std::vector<VertexId> x(failed.begin(), failed.end());
  for (VertexId f : x) {
    g.check_vertex(f);
    if (f == u || f == v) throw std::invalid_argument("query endpoint is in the failed set");
  }
  std::sort(x.begin(), x.end());
  x.erase(std::unique(x.begin(), x.end()), x.end());
  return x;
}

FailureOracle FailureOracle::build(std::shared_ptr<const EmbeddedPlanarGraph> g, OracleParams params) {
  FailureOracle o;
  o.params_ = params;
  o.graph_ = std::move(g);
  o.tree_ = std::make_shared<const DecompositionTree>(build_decomposition(*o.graph_, params.leaf_size, params.base));
  o.store_ = DdgStore::build(o.graph_, o.tree_, ShiftConstant(o.graph_->total_weight()));
  return o;
}

AssemblyRecord FailureOracle::assemble(VertexId u, VertexId v, std::span<const VertexId> failed, DdgUnion& out) const {
  auto x = normalize_failures(*graph_, u, v, failed);
  std::vector<VertexId> specials = {u, v};
  auto rec = assemble_failure_union(store_, tree_->root(), specials, x, x, out);
  out.set_forbidden_tails(x);
  return rec;
}

Distance FailureOracle::query(VertexId u, VertexId v, std::span<const VertexId> failed, Strategy strategy,
                              QueryStats* stats) const {
  auto x = normalize_failures(*graph_, u, v, failed);
  if (u == v) return Distance::zero();
  DdgUnion un;
  std::vector<VertexId> specials = {u, v};
  assemble_failure_union(store_, tree_->root(), specials, x, x, un);
  un.set_forbidden_tails(x);
  std::pair<VertexId, Distance> src{u, Distance::zero()};
  SearchStats ss;
  Distance ans = multi_dijkstra(un, std::span(&src, 1), strategy, &ss).at(v);
  NodeId lu = tree_->leaf_of(u);
  if (lu == tree_->leaf_of(v)) {
    Subgraph leaf(*graph_, tree_->piece(lu).arcs, std::span(&u, 1), x);
    auto d = leaf.dijkstra(*leaf.local(u));
    if (auto lv = leaf.local(v)) ans = min(ans, d[*lv]);
  }
  if (stats) {
    stats->members += un.member_count();
    stats->union_vertices += un.vertex_count_with_multiplicity();
    stats->distinct_vertices += un.vertices().size();
    stats->search.settled += ss.settled;
    stats->search.relaxations += ss.relaxations;
    stats->search.batches += ss.batches;
  }
  return ans;
}

void write_file_header(BinaryWriter& w, OracleMode mode) {
  w.bytes(std::string_view(kOracleMagic.data(), 4));
  w.u32(kOracleVersion);
  w.u32(static_cast<std::uint32_t>(mode));
}

OracleMode read_file_header(BinaryReader& r) {
  if (r.bytes(4) != std::string_view(kOracleMagic.data(), 4)) throw FormatError("not an oracle file (bad magic)");
  std::uint32_t version = r.u32();
  if (version != kOracleVersion) throw FormatError("unsupported oracle file version " + std::to_string(version));
  std::uint32_t mode = r.u32();
  if (mode > 1) throw FormatError("unknown oracle mode");
  return static_cast<OracleMode>(mode);
}

std::string read_all(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void FailureOracle::write_sections(BinaryWriter& w, std::size_t r, std::size_t k) const {
  BinaryWriter head;
  for (std::uint64_t x : {std::uint64_t(graph_->vertex_count()), std::uint64_t(params_.leaf_size),
                          std::uint64_t(params_.base), std::uint64_t(r), std::uint64_t(k)})
    head.u64(x);
  w.section("HEAD", head);
  BinaryWriter grph;
  write_graph(grph, *graph_);
  w.section("GRPH", grph);
  BinaryWriter tree;
  write_tree(tree, *tree_);
  w.section("TREE", tree);
  BinaryWriter ddgs;
  std::uint64_t count = 0;
  for (NodeId id = 0; id < tree_->size(); ++id) count += store_.stored(id) ? 1 : 0;
  ddgs.u64(count);
  for (NodeId id = 0; id < tree_->size(); ++id) {
    if (!store_.stored(id)) continue;
    ddgs.u32(id);
    write_ddg(ddgs, *store_.stored(id));
  }
  w.section("DDGI", ddgs);
  BinaryWriter shft;
  shft.u64(store_.shift().value());
  w.section("SHFT", shft);
}

FailureOracle FailureOracle::read_sections(BinaryReader& r, Header* header) {
  FailureOracle o;
  BinaryReader head = r.section("HEAD");
  Header h{head.u64(), head.u64(), head.u64(), head.u64(), head.u64()};
  if (header) *header = h;
  o.params_.leaf_size = h.leaf_size;
  o.params_.base = h.base;
  BinaryReader grph = r.section("GRPH");
  try {
    o.graph_ = std::make_shared<const EmbeddedPlanarGraph>(read_graph(grph));
  } catch (const EmbeddingError& e) {
    throw FormatError(std::string("stored graph is invalid: ") + e.what());
  }
  if (o.graph_->vertex_count() != h.n) throw FormatError("header and graph disagree on n");
  BinaryReader tree = r.section("TREE");
  o.tree_ = std::make_shared<const DecompositionTree>(read_tree(tree, h.n, h.leaf_size, h.base));
  BinaryReader ddgs = r.section("DDGI");
  std::vector<DdgPtr> stored(o.tree_->size());
  std::uint64_t count = ddgs.u64();
  for (std::uint64_t i = 0; i < count; ++i) {
    NodeId id = ddgs.u32();
    if (id >= stored.size()) throw FormatError("DDG for unknown piece");
    auto d = std::make_shared<DenseDistanceGraph>(read_ddg(ddgs));
    prepare_piece_monge(*d, o.tree_->piece(id));
    stored[id] = std::move(d);
  }
  BinaryReader shft = r.section("SHFT");
  ShiftConstant shift(o.graph_->total_weight());
  if (shft.u64() != shift.value()) throw FormatError("stored shift constant does not match the graph");
  o.store_ = DdgStore(o.graph_, o.tree_, shift, std::move(stored));
  return o;
}

std::string FailureOracle::serialize() const {
  BinaryWriter w;
  write_file_header(w, OracleMode::failure);
  write_sections(w, 0, 0);
  return w.str();
}

void FailureOracle::save(std::ostream& out) const {
  auto s = serialize();
  out.write(s.data(), static_cast<std::streamsize>(s.size()));
}

FailureOracle FailureOracle::load(std::istream& in) {
  std::string data = read_all(in);
  BinaryReader r(data);
  if (read_file_header(r) != OracleMode::failure) throw FormatError("file holds a tradeoff oracle");
  FailureOracle o = read_sections(r);
  if (!r.done()) throw FormatError("trailing data in oracle file");
  return o;
}

}  // namespace planar_oracle
