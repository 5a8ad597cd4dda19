#include "planar_oracle/bench.h"

#include <algorithm>
#include <chrono>
#include <iomanip>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "planar_oracle/parallel.h"
#include "planar_oracle/shortest_paths.h"
#include "planar_oracle/tradeoff_oracle.h"

namespace planar_oracle {

GraphFamily parse_family(const std::string& s) {
  if (s == "grid") return GraphFamily::grid;
  if (s == "triangulation") return GraphFamily::triangulation;
  if (s == "wheel") return GraphFamily::wheel;
  throw std::invalid_argument("unknown graph family '" + s + "'");
}

const char* family_name(GraphFamily f) {
  switch (f) {
    case GraphFamily::grid: return "grid";
    case GraphFamily::triangulation: return "triangulation";
    case GraphFamily::wheel: return "wheel";
  }
  return "?";
}

EmbeddedPlanarGraph generate_family(GraphFamily f, std::size_t size, Weight max_w, std::uint64_t seed) {
  WeightMode mode = max_w == 0 ? WeightMode(UnitWeights{}) : WeightMode(RandomWeights{max_w, seed});
  switch (f) {
    case GraphFamily::grid: return generate_grid(size, size, mode);
    case GraphFamily::triangulation: return generate_triangulation(size, mode, seed);
    case GraphFamily::wheel: return generate_wheel(size, mode);
  }
  throw std::logic_error("unhandled family");
}

BenchRecord run_bench(const BenchConfig& c) {
  using clock = std::chrono::steady_clock;
  auto g = std::make_shared<const EmbeddedPlanarGraph>(generate_family(c.family, c.size, c.max_w, c.seed));
  const std::size_t n = g->vertex_count();
  if (c.k + 2 > n) throw std::invalid_argument("graph too small for k failures");

  BenchRecord rec;
  rec.family = family_name(c.family);
  rec.mode = c.mode;
  rec.strategy = strategy_name(c.strategy);
  rec.n = n;
  rec.k = c.k;
  rec.queries = c.queries;

  auto t0 = clock::now();
  AnyOracle oracle;
  if (c.mode == "failure") {
    oracle = FailureOracle::build(g, {c.leaf_size, 2});
  } else if (c.mode == "tradeoff") {
    oracle = TradeoffOracle::build(g, {c.leaf_size, 2, c.r, c.k});
    rec.r = std::get<TradeoffOracle>(oracle).r();
  } else {
    throw std::invalid_argument("unknown mode '" + c.mode + "'");
  }
  rec.build_ms = std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  rec.bytes_on_disk = std::visit([](const auto& o) { return std::uint64_t(o.serialize().size()); }, oracle);

  std::mt19937_64 rng(c.seed ^ 0x9e3779b97f4a7c15ull);
  std::vector<double> times;
  double union_total = 0;
  bool ok = true;
  std::uint64_t digest = 1469598103934665603ull;
  for (std::size_t q = 0; q < c.queries; ++q) {
    VertexId u = static_cast<VertexId>(rng() % n), v = static_cast<VertexId>(rng() % n);
    std::vector<VertexId> x;
    while (x.size() < c.k) {
      auto f = static_cast<VertexId>(rng() % n);
      if (f != u && f != v && std::find(x.begin(), x.end(), f) == x.end()) x.push_back(f);
    }
    QueryStats st;
    auto s = clock::now();
    Distance d = query_oracle(oracle, u, v, x, c.strategy, &st);
    times.push_back(std::chrono::duration<double, std::micro>(clock::now() - s).count());
    union_total += static_cast<double>(st.distinct_vertices);
    digest = (digest ^ d.raw()) * 1099511628211ull;
    if (c.verify && d != distance_avoiding(*g, u, v, x)) ok = false;
  }
  rec.verified = c.verify && ok;
  rec.answer_digest = digest;
  if (!times.empty()) {
    double sum = 0;
    for (double t : times) sum += t;
    rec.query_mean_us = sum / static_cast<double>(times.size());
    std::sort(times.begin(), times.end());
    rec.query_p95_us = times[std::min(times.size() - 1, (times.size() * 95 + 99) / 100 - 1)];
    rec.union_vertices_mean = union_total / static_cast<double>(times.size());
  }
  return rec;
}

std::vector<BenchRecord> run_bench_sweep(const std::vector<BenchConfig>& configs,
                                         std::vector<std::string>* skipped) {
  std::vector<std::optional<BenchRecord>> got(configs.size());
  std::vector<std::string> why(configs.size());
  parallel_for(configs.size(), [&](std::size_t i) {
    if (!skipped) {
      got[i] = run_bench(configs[i]);
      return;
    }
    try {
      got[i] = run_bench(configs[i]);
    } catch (const std::invalid_argument& e) {
      const auto& c = configs[i];
      why[i] = std::string(family_name(c.family)) + " size=" + std::to_string(c.size) + " mode=" + c.mode +
               " r=" + std::to_string(c.r) + " k=" + std::to_string(c.k) + ": " + e.what();
    }
  });
  std::vector<BenchRecord> out;
  for (std::size_t i = 0; i < configs.size(); ++i) {
    if (got[i]) out.push_back(std::move(*got[i]));
    else if (skipped) skipped->push_back(why[i]);
  }
  return out;
}

namespace {

std::string fixed(double x, int digits) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << x;
  return s.str();
}

}  // namespace

std::string BenchReport::to_csv(bool with_timings) const {
  std::ostringstream out;
  out << "family,mode,strategy,n,r,k,queries,";
  if (with_timings) out << "build_ms,";
  out << "bytes_on_disk,";
  if (with_timings) out << "query_mean_us,query_p95_us,";
  out << "union_vertices_mean,verified,answer_digest\n";
  for (const auto& r : records) {
    out << r.family << ',' << r.mode << ',' << r.strategy << ',' << r.n << ',' << r.r << ',' << r.k << ','
        << r.queries << ',';
    if (with_timings) out << fixed(r.build_ms, 3) << ',';
    out << r.bytes_on_disk << ',';
    if (with_timings) out << fixed(r.query_mean_us, 3) << ',' << fixed(r.query_p95_us, 3) << ',';
    out << fixed(r.union_vertices_mean, 3) << ',' << (r.verified ? "true" : "false") << ',' << r.answer_digest
        << '\n';
  }
  return out.str();
}

std::string BenchReport::to_json(bool with_timings) const {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& r : records) {
    nlohmann::ordered_json j;
    j["family"] = r.family;
    j["mode"] = r.mode;
    j["strategy"] = r.strategy;
    j["n"] = r.n;
    j["r"] = r.r;
    j["k"] = r.k;
    j["queries"] = r.queries;
    if (with_timings) j["build_ms"] = r.build_ms;
    j["bytes_on_disk"] = r.bytes_on_disk;
    if (with_timings) {
      j["query_mean_us"] = r.query_mean_us;
      j["query_p95_us"] = r.query_p95_us;
    }
    j["union_vertices_mean"] = r.union_vertices_mean;
    j["verified"] = r.verified;
    j["answer_digest"] = r.answer_digest;
    arr.push_back(std::move(j));
  }
  return nlohmann::ordered_json{{"records", arr}}.dump(2) + "\n";
}

}  // namespace planar_oracle
