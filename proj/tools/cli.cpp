#include "cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>

#include "planar_oracle/bench.h"
#include "planar_oracle/dynamic_oracle.h"
#include "planar_oracle/generators.h"
#include "planar_oracle/shortest_paths.h"
#include "planar_oracle/tradeoff_oracle.h"

namespace planar_oracle::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::ifstream open_in(const std::string& path, bool binary = false) {
  std::ifstream f(path, binary ? std::ios::binary : std::ios::in);
  if (!f) throw std::ios_base::failure("cannot open " + path);
  return f;
}

std::ofstream open_out(const std::string& path, bool binary = false) {
  std::ofstream f(path, binary ? std::ios::binary | std::ios::trunc : std::ios::trunc);
  if (!f) throw std::ios_base::failure("cannot write " + path);
  return f;
}

void finish(std::ofstream& f, const std::string& path) {
  f.flush();
  if (!f) throw std::ios_base::failure("write failed for " + path);
}

std::shared_ptr<const EmbeddedPlanarGraph> read_graph(const std::string& path) {
  return std::make_shared<const EmbeddedPlanarGraph>(load_graph_file(path));
}

AnyOracle read_oracle(const std::string& path) {
  auto f = open_in(path, true);
  return load_oracle(f);
}

std::pair<std::size_t, std::size_t> parse_dims(const std::string& s) {
  auto x = s.find_first_of("xX");
  try {
    if (x == std::string::npos) throw std::invalid_argument(s);
    std::size_t pos1 = 0, pos2 = 0;
    auto a = std::stoul(s.substr(0, x), &pos1);
    auto b = std::stoul(s.substr(x + 1), &pos2);
    if (pos1 != x || pos2 != s.size() - x - 1) throw std::invalid_argument(s);
    return {a, b};
  } catch (const std::logic_error&) {
    throw UsageError("--grid expects RxC, got '" + s + "'");
  }
}

std::vector<VertexId> parse_ids(const std::string& line, std::size_t lineno) {
  std::istringstream s(line);
  std::vector<VertexId> ids;
  std::string tok;
  while (s >> tok) {
    if (tok.find_first_not_of("0123456789") != std::string::npos || tok.size() > 10)
      throw std::invalid_argument("line " + std::to_string(lineno) + ": bad vertex id '" + tok + "'");
    auto v = std::stoull(tok);
    if (v > 0xffffffffull) throw std::invalid_argument("line " + std::to_string(lineno) + ": id out of range");
    ids.push_back(static_cast<VertexId>(v));
  }
  return ids;
}

void check_vertex(VertexId v, std::size_t n, std::size_t lineno) {
  if (v >= n)
    throw std::out_of_range("line " + std::to_string(lineno) + ": vertex " + std::to_string(v) +
                            " not in graph (n=" + std::to_string(n) + ")");
}

const char* op_name(DynOp::Kind k) {
  switch (k) {
    case DynOp::Kind::set_weight: return "set";
    case DynOp::Kind::insert_edge: return "insert_edge";
    case DynOp::Kind::delete_edge: return "delete_edge";
    case DynOp::Kind::insert_vertex: return "insert_vertex";
    case DynOp::Kind::delete_vertex: return "delete_vertex";
    case DynOp::Kind::query: return "query";
  }
  return "?";
}

struct GenOpts {
  std::string grid;
  std::size_t triangulation = 0, wheel = 0;
  bool unit = false;
  Weight max_weight = 100;
  std::uint64_t seed = 1;
  std::string out;
};

struct BuildOpts {
  std::string graph, mode = "failure", out;
  std::size_t leaf_size = 32, r = 0, k = 1;
};

struct QueryOpts {
  std::string oracle, input, strategy = "naive";
};

struct VerifyOpts {
  std::string graph, oracle, mode = "failure", strategy = "naive";
  std::size_t leaf_size = 32, r = 0, k = 1, samples = 200, max_failures = 3;
  std::uint64_t seed = 1;
};

struct BenchOpts {
  std::vector<std::string> families{"grid"}, modes{"failure"};
  std::vector<std::size_t> sizes{8, 16}, rs{0}, ks{1};
  std::size_t queries = 50, leaf_size = 32;
  std::uint64_t seed = 1;
  Weight max_weight = 100;
  std::string strategy = "naive", format = "csv", out;
  bool no_verify = false, no_timings = false;
};

struct DynOpts {
  std::string graph, script, out, strategy = "naive";
  std::size_t r = 64, leaf_size = 8;
};

int do_gen(const GenOpts& o, std::ostream& out) {
  int chosen = !o.grid.empty() + (o.triangulation > 0) + (o.wheel > 0);
  if (chosen != 1) throw UsageError("gen needs exactly one of --grid, --triangulation, --wheel");
  WeightMode w = o.unit ? WeightMode(UnitWeights{}) : WeightMode(RandomWeights{o.max_weight, o.seed});
  EmbeddedPlanarGraph g = [&] {
    if (!o.grid.empty()) {
      auto [r, c] = parse_dims(o.grid);
      return generate_grid(r, c, w);
    }
    if (o.triangulation) return generate_triangulation(o.triangulation, w, o.seed);
    return generate_wheel(o.wheel, w);
  }();
  if (o.out.empty()) {
    save_graph(g, out);
  } else {
    save_graph_file(g, o.out);
  }
  return ok;
}

AnyOracle build_any(std::shared_ptr<const EmbeddedPlanarGraph> g, const std::string& mode, std::size_t leaf,
                    std::size_t r, std::size_t k) {
  if (mode == "failure") return FailureOracle::build(std::move(g), {leaf, 2});
  if (mode == "tradeoff") return TradeoffOracle::build(std::move(g), {leaf, 2, r, k});
  throw UsageError("--mode must be failure or tradeoff");
}

int do_build(const BuildOpts& o) {
  if (o.graph.empty()) throw UsageError("build needs a graph file");
  if (o.out.empty()) throw UsageError("build needs --out");
  auto oracle = build_any(read_graph(o.graph), o.mode, o.leaf_size, o.r, o.k);
  auto f = open_out(o.out, true);
  std::visit([&](const auto& x) { x.save(f); }, oracle);
  finish(f, o.out);
  return ok;
}

int do_query(const QueryOpts& o, std::istream& in, std::ostream& out) {
  auto strategy = parse_strategy(o.strategy);
  auto oracle = read_oracle(o.oracle);
  std::size_t n = base_of(oracle).graph().vertex_count();
  std::ifstream file;
  if (!o.input.empty()) file = open_in(o.input);
  std::istream& src = o.input.empty() ? in : file;
  std::string line;
  for (std::size_t lineno = 1; std::getline(src, line); ++lineno) {
    auto ids = parse_ids(line, lineno);
    if (ids.empty()) continue;
    if (ids.size() < 2) throw std::invalid_argument("line " + std::to_string(lineno) + ": need u v");
    for (auto v : ids) check_vertex(v, n, lineno);
    std::span<const VertexId> x(ids.data() + 2, ids.size() - 2);
    out << query_oracle(oracle, ids[0], ids[1], x, strategy) << '\n';
  }
  if (src.bad()) throw std::ios_base::failure("read error on query input");
  return ok;
}

int do_verify(const VerifyOpts& o, std::ostream& out, std::ostream& err) {
  if (o.graph.empty()) throw UsageError("verify needs a graph file");
  auto strategy = parse_strategy(o.strategy);
  auto g = read_graph(o.graph);
  AnyOracle oracle = o.oracle.empty() ? build_any(g, o.mode, o.leaf_size, o.r, o.k) : read_oracle(o.oracle);
  const auto& og = base_of(oracle).graph();
  if (og.vertex_count() != g->vertex_count() || og.arc_count() != g->arc_count())
    throw std::invalid_argument("oracle was built for a different graph");
  std::size_t n = g->vertex_count();
  if (n < 2) throw std::invalid_argument("graph needs at least 2 vertices");
  std::size_t cap = std::min(o.max_failures, n - 2);
  if (auto* t = std::get_if<TradeoffOracle>(&oracle)) cap = std::min(cap, t->k());

  std::mt19937_64 rng(o.seed);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < o.samples; ++i) {
    VertexId u = static_cast<VertexId>(rng() % n), v = static_cast<VertexId>(rng() % n);
    std::size_t want = static_cast<std::size_t>(rng() % (cap + 1));
    std::vector<VertexId> x;
    while (x.size() < want) {
      auto f = static_cast<VertexId>(rng() % n);
      if (f != u && f != v && std::find(x.begin(), x.end(), f) == x.end()) x.push_back(f);
    }
    if (u == v) x.clear();
    Distance got = query_oracle(oracle, u, v, x, strategy);
    Distance truth = distance_avoiding(*g, u, v, x);
    if (got != truth) {
      ++bad;
      err << "mismatch: " << u << ' ' << v;
      for (auto f : x) err << ' ' << f;
      err << " oracle=" << got << " brute=" << truth << '\n';
    }
  }
  out << "verified " << o.samples << " queries, " << bad << " mismatches\n";
  return bad ? mismatch : ok;
}

int do_bench(const BenchOpts& o, std::ostream& out, std::ostream& err) {
  if (o.format != "csv" && o.format != "json") throw UsageError("--format must be csv or json");
  auto strategy = parse_strategy(o.strategy);
  std::vector<BenchConfig> configs;
  for (const auto& fam : o.families) {
    auto family = parse_family(fam);
    for (auto size : o.sizes)
      for (const auto& mode : o.modes) {
        if (mode != "failure" && mode != "tradeoff") throw UsageError("--mode must be failure or tradeoff");
        std::vector<std::size_t> rs = mode == "failure" ? std::vector<std::size_t>{0} : o.rs;
        for (auto r : rs)
          for (auto k : o.ks) {
            BenchConfig c;
            c.family = family;
            c.size = size;
            c.mode = mode;
            c.leaf_size = o.leaf_size;
            c.r = r;
            c.k = k;
            c.queries = o.queries;
            c.seed = o.seed;
            c.max_w = o.max_weight;
            c.strategy = strategy;
            c.verify = !o.no_verify;
            configs.push_back(c);
          }
      }
  }
  std::vector<std::string> skipped;
  BenchReport report{run_bench_sweep(configs, &skipped)};
  for (const auto& s : skipped) err << "skipped " << s << '\n';
  std::string text = o.format == "csv" ? report.to_csv(!o.no_timings) : report.to_json(!o.no_timings);
  if (o.out.empty()) {
    out << text;
  } else {
    auto f = open_out(o.out);
    f << text;
    finish(f, o.out);
  }
  bool all_ok = std::all_of(report.records.begin(), report.records.end(), [](const BenchRecord& r) { return r.verified; });
  return (!o.no_verify && !all_ok) ? mismatch : ok;
}

int do_dyn(const DynOpts& o, std::ostream& out) {
  if (o.graph.empty()) throw UsageError("dyn needs a graph file");
  if (o.script.empty()) throw UsageError("dyn needs --script");
  auto strategy = parse_strategy(o.strategy);
  auto g = load_graph_file(o.graph);
  auto sf = open_in(o.script);
  auto ops = parse_dyn_script(sf);
  DynamicParams p;
  p.r = o.r;
  p.leaf_size = o.leaf_size;
  DynamicOracle oracle(g, p);
  std::ostringstream buf;
  buf << "line,op,result\n";
  for (const auto& op : ops) buf << op.line << ',' << op_name(op.kind) << ',' << apply_dyn_op(oracle, op, strategy) << '\n';
  if (o.out.empty()) {
    out << buf.str();
  } else {
    auto f = open_out(o.out);
    f << buf.str();
    finish(f, o.out);
  }
  return ok;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact distance oracles for planar graphs with vertex failures", "planar_oracle_cli"};
  app.require_subcommand(1);

  GenOpts gen;
  auto* g = app.add_subcommand("gen", "generate a .pgr instance");
  g->add_option("--grid", gen.grid, "RxC directed grid");
  g->add_option("--triangulation", gen.triangulation, "random triangulation on N vertices");
  g->add_option("--wheel", gen.wheel, "wheel with N spokes");
  g->add_flag("--unit", gen.unit, "unit weights");
  g->add_option("--max-weight", gen.max_weight, "random weights in [1, W]");
  g->add_option("--seed", gen.seed);
  g->add_option("--out", gen.out, "output file (default stdout)");

  BuildOpts build;
  auto* b = app.add_subcommand("build", "build an oracle file");
  b->add_option("graph,--graph", build.graph, ".pgr file");
  b->add_option("--mode", build.mode)->check(CLI::IsMember({"failure", "tradeoff"}));
  b->add_option("--leaf-size", build.leaf_size);
  b->add_option("--r", build.r, "tradeoff r (0 = smallest marked)");
  b->add_option("--k", build.k, "tradeoff failure budget");
  b->add_option("--out", build.out)->required();

  QueryOpts query;
  auto* q = app.add_subcommand("query", "answer 'u v x1 x2 ...' lines");
  q->add_option("--oracle", query.oracle)->required();
  q->add_option("input,--input", query.input, "query file (default stdin)");
  q->add_option("--strategy", query.strategy)->check(CLI::IsMember({"naive", "monge"}));

  VerifyOpts verify;
  auto* v = app.add_subcommand("verify", "cross-check random queries against brute force");
  v->add_option("graph,--graph", verify.graph);
  v->add_option("--oracle", verify.oracle, "check this oracle file instead of building one");
  v->add_option("--mode", verify.mode)->check(CLI::IsMember({"failure", "tradeoff"}));
  v->add_option("--leaf-size", verify.leaf_size);
  v->add_option("--r", verify.r);
  v->add_option("--k", verify.k);
  v->add_option("--samples", verify.samples);
  v->add_option("--max-failures", verify.max_failures);
  v->add_option("--seed", verify.seed);
  v->add_option("--strategy", verify.strategy)->check(CLI::IsMember({"naive", "monge"}));

  BenchOpts bench;
  auto* be = app.add_subcommand("bench", "sweep families, sizes, r and k");
  be->add_option("--family", bench.families, "grid|triangulation|wheel")->delimiter(',');
  be->add_option("--sizes", bench.sizes, "grid side / vertex count / spokes")->delimiter(',');
  be->add_option("--mode", bench.modes)->delimiter(',');
  be->add_option("--r", bench.rs)->delimiter(',');
  be->add_option("--k", bench.ks)->delimiter(',');
  be->add_option("--queries", bench.queries);
  be->add_option("--leaf-size", bench.leaf_size);
  be->add_option("--max-weight", bench.max_weight);
  be->add_option("--seed", bench.seed);
  be->add_option("--strategy", bench.strategy)->check(CLI::IsMember({"naive", "monge"}));
  be->add_option("--format", bench.format)->check(CLI::IsMember({"csv", "json"}));
  be->add_option("--out", bench.out);
  be->add_flag("--no-verify", bench.no_verify);
  be->add_flag("--no-timings", bench.no_timings, "omit timing columns");

  DynOpts dyn;
  auto* d = app.add_subcommand("dyn", "replay an update script");
  d->add_option("graph,--graph", dyn.graph);
  d->add_option("--script", dyn.script)->required();
  d->add_option("--r", dyn.r);
  d->add_option("--leaf-size", dyn.leaf_size);
  d->add_option("--strategy", dyn.strategy)->check(CLI::IsMember({"naive", "monge"}));
  d->add_option("--out", dyn.out);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  try {
    if (*g) return do_gen(gen, out);
    if (*b) return do_build(build);
    if (*q) return do_query(query, in, out);
    if (*v) return do_verify(verify, out, err);
    if (*be) return do_bench(bench, out, err);
    if (*d) return do_dyn(dyn, out);
    return usage;
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return usage;
  } catch (const std::ios_base::failure& e) {
    err << "I/O error: " << e.what() << '\n';
    return io_error;
  } catch (const std::exception& e) {
    err << "invalid input: " << e.what() << '\n';
    return invalid_input;
  }
}

}  // namespace planar_oracle::cli
