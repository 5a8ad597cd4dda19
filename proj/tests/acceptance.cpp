// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "dyn_ops.h"
#include "oracles.h"
#include "planar_oracle/bench.h"
#include "planar_oracle/ddg.h"
#include "planar_oracle/external_ddg.h"
#include "planar_oracle/generators.h"
#include "planar_oracle/shortest_paths.h"
#include "planar_oracle/tradeoff_oracle.h"

using namespace planar_oracle;

namespace {

using GraphPtr = std::shared_ptr<const EmbeddedPlanarGraph>;

GraphPtr share(EmbeddedPlanarGraph g) { return std::make_shared<const EmbeddedPlanarGraph>(std::move(g)); }

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void fail(const std::string& why) {
    if (pass) detail << "first failure: " << why << "; ";
    pass = false;
  }
};

std::vector<char> mask(std::size_t n, std::span<const VertexId> xs) {
  std::vector<char> m(n, 0);
  for (auto x : xs) m[x] = 1;
  return m;
}

std::string show(VertexId u, VertexId v, std::span<const VertexId> xs) {
  std::ostringstream s;
  s << "u=" << u << " v=" << v << " X={";
  for (std::size_t i = 0; i < xs.size(); ++i) s << (i ? "," : "") << xs[i];
  s << "}";
  return s.str();
}

// ---- shared fixtures ----

struct Query {
  VertexId u, v;
  std::vector<VertexId> x;
};

struct Suite1Graph {
  std::string name;
  GraphPtr g;
  FailureOracle oracle;
  std::vector<Query> queries;
  std::vector<Distance> truth;
};

std::vector<Query> random_queries(std::size_t n, std::size_t count, std::size_t max_x, std::uint64_t seed,
                                  bool exact_size = false) {
  std::mt19937_64 rng(seed);
  std::vector<Query> out;
  for (std::size_t i = 0; i < count; ++i) {
    Query q{static_cast<VertexId>(rng() % n), static_cast<VertexId>(rng() % n), {}};
    std::size_t want = exact_size ? max_x : i % (max_x + 1);
    while (q.x.size() < want) {
      auto f = static_cast<VertexId>(rng() % n);
      if (f != q.u && f != q.v && std::find(q.x.begin(), q.x.end(), f) == q.x.end()) q.x.push_back(f);
    }
    out.push_back(std::move(q));
  }
  return out;
}

std::vector<Suite1Graph>& suite1() {
  static std::vector<Suite1Graph> s = [] {
    std::vector<Suite1Graph> out;
    out.push_back({"grid16", share(generate_grid(16, 16, RandomWeights{100, 1})), {}, {}, {}});
    out.push_back({"grid32", share(generate_grid(32, 32, RandomWeights{100, 2})), {}, {}, {}});
    out.push_back({"tri2000", share(generate_triangulation(2000, RandomWeights{100, 3}, 3)), {}, {}, {}});
    for (std::size_t i = 0; i < out.size(); ++i) {
      auto& e = out[i];
      e.oracle = FailureOracle::build(e.g, {32, 2});
      e.queries = random_queries(e.g->vertex_count(), 500, 4, 100 + i);
    }
    return out;
  }();
  return s;
}

// ---- criteria ----

void criterion1(Outcome& o) {
  std::size_t total = 0, by_size[5] = {0, 0, 0, 0, 0};
  for (auto& e : suite1()) {
    e.truth.clear();
    for (const auto& q : e.queries) {
      Distance want = oracles::dijkstra_row(*e.g, q.u, mask(e.g->vertex_count(), q.x))[q.v];
      e.truth.push_back(want);
      if (distance_avoiding(*e.g, q.u, q.v, q.x) != want) o.fail("reference disagreement " + show(q.u, q.v, q.x));
      Distance got = e.oracle.query(q.u, q.v, q.x);
      if (got != want) o.fail(e.name + " " + show(q.u, q.v, q.x) + " got " + got.to_string() + " want " + want.to_string());
      ++total;
      ++by_size[q.x.size()];
    }
  }
  o.detail << total << " queries on grid16/grid32/tri2000, |X|=0..4 counts " << by_size[0] << "/" << by_size[1]
           << "/" << by_size[2] << "/" << by_size[3] << "/" << by_size[4];
}

void criterion2(Outcome& o) {
  auto g8 = share(generate_grid(8, 8, RandomWeights{20, 6}));
  const std::size_t n8 = g8->vertex_count();
  std::size_t exhaustive = 0, mains = 0;
  for (std::size_t r : {16, 32}) {
    auto t = TradeoffOracle::build(g8, {8, 2, r, 1});
    for (VertexId u = 0; u < n8; ++u)
      for (VertexId x = 0; x < n8; ++x) {
        if (x == u || t.piece_of(x) == t.piece_of(u)) continue;
        std::vector<VertexId> xs{x};
        auto row = oracles::dijkstra_row(*g8, u, mask(n8, xs));
        for (VertexId v = 0; v < n8; ++v) {
          if (v == x || t.piece_of(v) == t.piece_of(u) || t.piece_of(v) == t.piece_of(x)) continue;
          QueryPath path;
          Distance d = t.query(u, v, xs, Strategy::naive, nullptr, &path);
          if (d != row[v]) o.fail("8x8 r=" + std::to_string(r) + " " + show(u, v, xs));
          ++exhaustive;
          mains += path == QueryPath::main;
        }
      }
  }
  auto g16 = share(generate_grid(16, 16, RandomWeights{30, 7}));
  auto t16 = TradeoffOracle::build(g16, {16, 2, 64, 2});
  auto qs = random_queries(g16->vertex_count(), 200, 2, 700, true);
  for (const auto& q : qs) {
    Distance want = oracles::dijkstra_row(*g16, q.u, mask(g16->vertex_count(), q.x))[q.v];
    if (t16.query(q.u, q.v, q.x) != want) o.fail("16x16 k=2 " + show(q.u, q.v, q.x));
  }
  o.detail << "8x8 k=1 exhaustive " << exhaustive << " triples (r=16,32; " << mains << " main path); 16x16 k=2 r=64 "
           << qs.size() << " queries with |X|=2";
  if (exhaustive == 0 || mains == 0) o.fail("no coverage");
}

struct TestGraph {
  std::string name;
  GraphPtr g;
  std::size_t leaf;
};

std::vector<TestGraph> small_graphs() {
  return {{"grid8", share(generate_grid(8, 8, RandomWeights{20, 6})), 8},
          {"grid12", share(generate_grid(12, 12, RandomWeights{20, 1})), 8},
          {"grid16", share(generate_grid(16, 16, RandomWeights{30, 7})), 16},
          {"tri300", share(generate_triangulation(300, RandomWeights{50, 4}, 4)), 16},
          {"wheel40", share(generate_wheel(40, RandomWeights{10, 5})), 8},
          {"unit10", share(generate_grid(10, 10, UnitWeights{})), 8}};
}

void criterion3(Outcome& o) {
  auto graphs = small_graphs();
  for (auto& e : suite1()) graphs.push_back({e.name, e.g, 32});
  std::size_t pieces = 0;
  for (const auto& tg : graphs) {
    auto t = build_decomposition(*tg.g, tg.leaf, 2);
    ShiftConstant shift(tg.g->total_weight());
    for (const Piece& p : t.pieces()) {
      auto closure = min_plus_closure(compute_ddg_internal(*tg.g, t, p.id, shift));
      auto standard = compute_standard_ddg(*tg.g, p.arcs, p.boundary);
      if (closure.vertices() != standard.vertices() || closure.weights() != standard.weights())
        o.fail(tg.name + " piece " + std::to_string(p.id));
      ++pieces;
    }
  }
  o.detail << pieces << " pieces over " << graphs.size() << " graphs";
}

void criterion4(Outcome& o) {
  std::size_t tuples = 0, entries = 0, graphs = 0;
  for (const auto& tg : small_graphs()) {
    if (tg.g->vertex_count() > 400) continue;
    ++graphs;
    auto t = std::make_shared<const DecompositionTree>(build_decomposition(*tg.g, tg.leaf, 2));
    DdgStore store = DdgStore::build(tg.g, t, ShiftConstant(tg.g->total_weight()));
    ExternalDdgBuilder b(store);
    const std::size_t n = tg.g->vertex_count();
    auto check = [&](std::vector<NodeId> tuple) {
      std::sort(tuple.begin(), tuple.end());
      DdgPtr d = b.get(tuple);
      std::vector<char> removed(n, 0);
      std::vector<VertexId> boundary;
      for (NodeId q : tuple) {
        const Piece& p = t->piece(q);
        for (auto v : p.vertices) removed[v] = 1;
        boundary.insert(boundary.end(), p.boundary.begin(), p.boundary.end());
      }
      std::sort(boundary.begin(), boundary.end());
      boundary.erase(std::unique(boundary.begin(), boundary.end()), boundary.end());
      if (d->vertices() != boundary) {
        o.fail(tg.name + " vertex set");
        return;
      }
      for (std::size_t i = 0; i < d->size(); ++i) {
        auto row = oracles::dijkstra_row(*tg.g, boundary[i], removed);
        for (std::size_t j = 0; j < d->size(); ++j) {
          if (d->at(i, j) != row[boundary[j]]) o.fail(tg.name + " entry");
          ++entries;
        }
      }
      ++tuples;
    };
    for (const auto& [r, div] : t->rdivision_marks()) {
      const std::size_t p = div.size();
      for (std::size_t a = 0; a < p; ++a) {
        check({div[a]});
        for (std::size_t c = a + 1; c < p; ++c) {
          check({div[a], div[c]});
          for (std::size_t e = c + 1; e < p; ++e) check({div[a], div[c], div[e]});
        }
      }
    }
  }
  o.detail << "all " << tuples << " tuples of size <= 3 per marked division on " << graphs << " graphs, " << entries
           << " entries";
}

void criterion5(Outcome& o) {
  std::size_t ops = 0, queries = 0, rebuilds = 0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = generate_grid(12, 12, RandomWeights{20, seed});
    DynamicOracle dyn(g, {36, 8, 2});
    std::mt19937_64 rng(seed * 1009);
    std::size_t kinds[6] = {0, 0, 0, 0, 0, 0};
    for (int step = 0; step < 50; ++step) {
      DynOp op = dyn_ops::random_op(dyn, rng);
      ++kinds[static_cast<int>(op.kind)];
      try {
        apply_dyn_op(dyn, op);
      } catch (const std::exception& e) {
        o.fail("seed " + std::to_string(seed) + " step " + std::to_string(step) + ": " + e.what());
        break;
      }
      ++ops;
      std::vector<ArcId> ids;
      EmbeddedPlanarGraph snap = dyn.snapshot(&ids);
      DynamicOracle fresh(snap, dyn.params());
      auto alive = dyn_ops::alive_vertices(dyn);
      std::vector<char> none(snap.vertex_count(), 0);
      for (int q = 0; q < 20; ++q) {
        VertexId u = alive[rng() % alive.size()], v = alive[rng() % alive.size()];
        Distance d = dyn.query(u, v);
        if (d != fresh.query(u, v) || d != oracles::dijkstra_row(snap, u, none)[v])
          o.fail("seed " + std::to_string(seed) + " step " + std::to_string(step) + " u=" + std::to_string(u) +
                 " v=" + std::to_string(v));
        ++queries;
      }
    }
    for (int k = 0; k < 5; ++k)
      if (kinds[k] == 0) o.fail("seed " + std::to_string(seed) + " script lacks an op kind");
    rebuilds += dyn.rebuilds();
  }
  o.detail << "5 seeds, " << ops << " ops, " << queries << " queries vs fresh rebuild and Dijkstra, " << rebuilds
           << " scheduled rebuilds";
}

double slope(const std::vector<double>& x, const std::vector<double>& y) {
  double mx = 0, my = 0;
  for (std::size_t i = 0; i < x.size(); ++i) mx += x[i], my += y[i];
  mx /= x.size();
  my /= y.size();
  double num = 0, den = 0;
  for (std::size_t i = 0; i < x.size(); ++i) num += (x[i] - mx) * (y[i] - my), den += (x[i] - mx) * (x[i] - mx);
  return num / den;
}

void criterion6(Outcome& o) {
  o.detail << std::fixed << std::setprecision(3);

  // (a) total boundary over all pieces, per vertex
  const double k_a = 4.0;
  std::vector<double> ratios;
  o.detail << "(a) sum|dP|/n =";
  for (std::size_t side : {16, 32, 64, 128}) {
    auto g = generate_grid(side, side, RandomWeights{100, side});
    auto t = build_decomposition(g, 32, 2);
    ratios.push_back(static_cast<double>(t.total_boundary()) / static_cast<double>(g.vertex_count()));
    o.detail << " " << ratios.back();
  }
  bool a_ok = true;
  for (std::size_t i = 0; i < ratios.size(); ++i) {
    if (ratios[i] > k_a) a_ok = false;
    if (i >= 2 && ratios[i] - ratios[i - 1] >= ratios[i - 1] - ratios[i - 2]) a_ok = false;
  }
  o.detail << (a_ok ? " ok" : " BAD") << "; ";
  if (!a_ok) o.fail("(a)");

  // (b) mean union size at fixed k=2
  std::vector<double> lx, ly;
  o.detail << "(b) union mean =";
  for (std::size_t side : {32, 64, 128, 256}) {
    auto g = share(generate_grid(side, side, RandomWeights{100, side + 1}));
    auto f = FailureOracle::build(g, {32, 2});
    auto qs = random_queries(g->vertex_count(), 200, 2, side, true);
    double sum = 0;
    for (const auto& q : qs) {
      QueryStats st;
      f.query(q.u, q.v, q.x, Strategy::naive, &st);
      sum += static_cast<double>(st.distinct_vertices);
    }
    lx.push_back(std::log(static_cast<double>(g->vertex_count())));
    ly.push_back(std::log(sum / static_cast<double>(qs.size())));
    o.detail << " " << sum / static_cast<double>(qs.size());
  }
  double s = slope(lx, ly);
  bool b_ok = std::abs(s - 0.5) <= 0.1;
  o.detail << " slope " << s << (b_ok ? " ok" : " BAD") << "; ";
  if (!b_ok) o.fail("(b)");

  // (c) tradeoff bytes beyond the base oracle, k=1, p = pieces in the r-division
  auto extra_bytes = [](const FailureOracle& f, std::size_t r, double* p) {
    auto t = TradeoffOracle::build(f, r, 1);
    *p = static_cast<double>(t.division().size());
    return static_cast<double>(t.serialize().size()) - static_cast<double>(f.serialize().size());
  };
  auto spread = [](const std::vector<double>& v) {
    return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
  };
  std::vector<double> c1;
  {
    auto g = share(generate_grid(32, 32, RandomWeights{100, 1}));
    auto f = FailureOracle::build(g, {16, 2});
    for (std::size_t r : {64, 128, 256, 512}) {
      double p;
      double bytes = extra_bytes(f, r, &p);
      c1.push_back(bytes / (p * (p - 1) / 2 * std::sqrt(static_cast<double>(r))));
    }
  }
  std::vector<double> c2;
  for (std::size_t side : {16, 24, 32, 48}) {
    auto g = share(generate_grid(side, side, RandomWeights{100, 1}));
    auto f = FailureOracle::build(g, {16, 2});
    double n = static_cast<double>(g->vertex_count());
    for (std::size_t r : f.tree().r_sequence()) {
      if (r >= g->vertex_count()) continue;
      if (extract_r_division(f.tree(), r).size() > 33) continue;  // keeps the sweep within budget
      double p;
      double bytes = extra_bytes(f, r, &p);
      if (p < 3) continue;
      c2.push_back(bytes / (p * (p - 1) / 2 * std::sqrt(n * static_cast<double>(r))));
    }
  }
  double s1 = spread(c1), s2 = spread(c2);
  bool c_ok = s1 <= 4.0 && s2 <= 4.0;
  o.detail << "(c) n=1024 r=64..512 bytes/(C(p,2)*sqrt r) spread " << s1 << "; n=256..2304 bytes/(C(p,2)*sqrt(nr)) spread "
           << s2 << " over " << c2.size() << " configs" << (c_ok ? " ok" : " BAD");
  if (!c_ok) o.fail("(c)");
}

void criterion7(Outcome& o) {
  std::size_t total = 0;
  for (auto& e : suite1()) {
    for (std::size_t i = 0; i < e.queries.size(); ++i) {
      const auto& q = e.queries[i];
      Distance m = e.oracle.query(q.u, q.v, q.x, Strategy::monge);
      Distance nv = e.oracle.query(q.u, q.v, q.x, Strategy::naive);
      if (m != nv) o.fail(e.name + " " + show(q.u, q.v, q.x));
      if (i < e.truth.size() && m != e.truth[i]) o.fail(e.name + " monge vs brute " + show(q.u, q.v, q.x));
      ++total;
    }
  }
  o.detail << total << " queries of the criterion 1 suite, monge == naive";
}

void criterion8(Outcome& o) {
  std::size_t files = 0;
  auto same = [&](const std::string& what, const std::string& a, const std::string& b) {
    if (a != b) o.fail(what);
    ++files;
  };
  const char* old = std::getenv("PLANAR_ORACLE_THREADS");
  std::string saved = old ? old : "";
  auto with_threads = [&](const char* v, const std::function<std::string()>& f) {
    setenv("PLANAR_ORACLE_THREADS", v, 1);
    std::string out = f();
    if (old) setenv("PLANAR_ORACLE_THREADS", saved.c_str(), 1);
    else unsetenv("PLANAR_ORACLE_THREADS");
    return out;
  };
  for (auto& e : suite1()) {
    auto again = with_threads("1", [&] { return FailureOracle::build(e.g, {32, 2}).serialize(); });
    same(e.name + " failure oracle", e.oracle.serialize(), again);
    std::ostringstream a, b;
    save_graph(*e.g, a);
    std::istringstream in(a.str());
    save_graph(load_graph(in), b);
    same(e.name + " pgr", a.str(), b.str());
  }
  struct Cfg {
    GraphPtr g;
    std::size_t leaf, r, k;
  };
  std::vector<Cfg> cfgs = {{share(generate_grid(8, 8, RandomWeights{20, 6})), 8, 16, 1},
                           {share(generate_grid(8, 8, RandomWeights{20, 6})), 8, 32, 1},
                           {share(generate_grid(16, 16, RandomWeights{30, 7})), 16, 64, 2}};
  for (const auto& c : cfgs) {
    auto a = TradeoffOracle::build(c.g, {c.leaf, 2, c.r, c.k}).serialize();
    auto b = with_threads("1", [&] { return TradeoffOracle::build(c.g, {c.leaf, 2, c.r, c.k}).serialize(); });
    same("tradeoff r=" + std::to_string(c.r), a, b);
  }
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto g = generate_grid(12, 12, RandomWeights{20, seed});
    std::ostringstream a, b;
    auto run = [&](std::ostringstream& out) {
      DynamicOracle d(g, {36, 8, 2});
      std::mt19937_64 rng(seed);
      for (int i = 0; i < 20; ++i) apply_dyn_op(d, dyn_ops::random_op(d, rng));
      save_graph(d.snapshot(), out);
    };
    run(a);
    run(b);
    same("dynamic snapshot", a.str(), b.str());
  }
  BenchConfig bc;
  bc.size = 12;
  bc.leaf_size = 8;
  bc.queries = 30;
  BenchReport r1{{run_bench(bc)}}, r2{{run_bench(bc)}};
  same("bench report", r1.to_csv(false), r2.to_csv(false));
  o.detail << files << " artifacts built twice, byte-identical";
}

}  // namespace

int main() {
  using clock = std::chrono::steady_clock;
  std::vector<std::pair<const char*, void (*)(Outcome&)>> criteria = {
      {"1 failure-oracle exactness", criterion1}, {"2 tradeoff-oracle exactness", criterion2},
      {"3 closure of DDG° equals DDG", criterion3}, {"4 external DDG induction", criterion4},
      {"5 dynamic equivalence", criterion5},        {"6 structural scaling", criterion6},
      {"7 monge equals naive", criterion7},         {"8 build determinism", criterion8}};
  bool all = true;
  for (auto& [name, fn] : criteria) {
    Outcome o;
    auto t0 = clock::now();
    try {
      fn(o);
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    double secs = std::chrono::duration<double>(clock::now() - t0).count();
    std::cout << "criterion " << name << ": " << (o.pass ? "PASS" : "FAIL") << " (" << o.detail.str() << "; "
              << std::fixed << std::setprecision(1) << secs << "s)" << std::endl;
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
