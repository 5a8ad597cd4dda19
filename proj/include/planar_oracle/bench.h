#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "planar_oracle/fr_dijkstra.h"
#include "planar_oracle/generators.h"

namespace planar_oracle {

enum class GraphFamily { grid, triangulation, wheel };
GraphFamily parse_family(const std::string& s);
const char* family_name(GraphFamily f);

// grid: size is the side length; triangulation / wheel: vertex / spoke count
EmbeddedPlanarGraph generate_family(GraphFamily f, std::size_t size, Weight max_w, std::uint64_t seed);

struct BenchConfig {
  GraphFamily family = GraphFamily::grid;
  std::size_t size = 16;
  std::string mode = "failure";  // failure | tradeoff
  std::size_t leaf_size = 32;
  std::size_t r = 0;  // tradeoff only; 0 = smallest marked r
  std::size_t k = 1;  // failures per query (exactly k)
  std::size_t queries = 50;
  std::uint64_t seed = 1;
  Weight max_w = 100;
  Strategy strategy = Strategy::naive;
  bool verify = true;
};

struct BenchRecord {
  std::string family, mode, strategy;
  std::size_t n = 0, r = 0, k = 0, queries = 0;
  double build_ms = 0;
  std::uint64_t bytes_on_disk = 0;
  double query_mean_us = 0, query_p95_us = 0;
  double union_vertices_mean = 0;  // distinct vertices in the searched union
  bool verified = false;  // every sampled query matched brute force
  std::uint64_t answer_digest = 0;  // hash of all answers, for determinism checks
};

BenchRecord run_bench(const BenchConfig& c);

// Configurations run in parallel (PLANAR_ORACLE_THREADS); records keep input
// order. With `skipped`, configs rejected by the oracle builders (e.g. k*r > n)
// are dropped and described there instead of throwing.
std::vector<BenchRecord> run_bench_sweep(const std::vector<BenchConfig>& configs,
                                         std::vector<std::string>* skipped = nullptr);

struct BenchReport {
  std::vector<BenchRecord> records;
  std::string to_csv(bool with_timings = true) const;
  std::string to_json(bool with_timings = true) const;
};

}  // namespace planar_oracle
