#include "planar_oracle/graph.h"

#include <algorithm>
#include <fstream>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace planar_oracle {

namespace {

struct UnionFind {
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::uint32_t> parent;
};

}  // namespace

FaceStructure trace_faces(std::span<const std::pair<std::uint32_t, std::uint32_t>> ends,
                          const std::vector<std::vector<std::uint32_t>>& rotation) {
  const std::size_t m = ends.size();
  std::vector<std::uint32_t> pos_tail(m), pos_head(m);
  for (std::uint32_t v = 0; v < rotation.size(); ++v) {
    for (std::uint32_t i = 0; i < rotation[v].size(); ++i) {
      std::uint32_t e = rotation[v][i];
      if (ends[e].first == v)
        pos_tail[e] = i;
      else
        pos_head[e] = i;
    }
  }
  FaceStructure fs;
  constexpr std::uint32_t kUnset = std::numeric_limits<std::uint32_t>::max();
  fs.dart_face.assign(2 * m, kUnset);
  for (std::uint32_t start = 0; start < 2 * m; ++start) {
    if (fs.dart_face[start] != kUnset) continue;
    auto face = static_cast<std::uint32_t>(fs.faces.size());
    fs.faces.emplace_back();
    std::uint32_t d = start;
    do {
      fs.dart_face[d] = face;
      fs.faces.back().push_back(d);
      std::uint32_t e = d / 2;
      std::uint32_t w = (d % 2 == 0) ? ends[e].second : ends[e].first;
      std::uint32_t p = (d % 2 == 0) ? pos_head[e] : pos_tail[e];
      const auto& rot = rotation[w];
      std::uint32_t e2 = rot[(p + 1) % rot.size()];
      d = (ends[e2].first == w) ? 2 * e2 : 2 * e2 + 1;
    } while (d != start);
  }
  return fs;
}

std::size_t check_euler(std::size_t n, std::span<const Arc> arcs,
                        const std::vector<std::vector<ArcId>>& rotation) {
  if (rotation.size() != n) throw EmbeddingError("rotation count differs from vertex count");
  const std::size_t m = arcs.size();
  std::vector<std::uint8_t> seen_tail(m, 0), seen_head(m, 0);
  for (VertexId v = 0; v < n; ++v) {
    for (ArcId a : rotation[v]) {
      if (a >= m) throw EmbeddingError("rotation of vertex " + std::to_string(v) + " names unknown arc " + std::to_string(a));
      const Arc& arc = arcs[a];
      if (arc.tail == v) {
        if (seen_tail[a]++) throw EmbeddingError("arc " + std::to_string(a) + " repeated around its tail");
      } else if (arc.head == v) {
        if (seen_head[a]++) throw EmbeddingError("arc " + std::to_string(a) + " repeated around its head");
      } else {
        throw EmbeddingError("arc " + std::to_string(a) + " listed around non-endpoint " + std::to_string(v));
      }
    }
  }
  for (ArcId a = 0; a < m; ++a)
    if (!seen_tail[a] || !seen_head[a])
      throw EmbeddingError("arc " + std::to_string(a) + " missing from a rotation");

  std::vector<std::pair<std::uint32_t, std::uint32_t>> ends(m);
  for (ArcId a = 0; a < m; ++a) ends[a] = {arcs[a].tail, arcs[a].head};
  FaceStructure fs = trace_faces(ends, rotation);

  UnionFind uf(n);
  for (const Arc& a : arcs) uf.unite(a.tail, a.head);
  std::vector<long long> chi(n, 0);
  std::vector<std::uint8_t> has_arc(n, 0);
  for (VertexId v = 0; v < n; ++v) chi[uf.find(v)] += 1;
  for (const Arc& a : arcs) {
    chi[uf.find(a.tail)] -= 1;
    has_arc[uf.find(a.tail)] = 1;
  }
  for (const auto& f : fs.faces) chi[uf.find(ends[f.front() / 2].first)] += 1;
  for (VertexId v = 0; v < n; ++v) {
    if (uf.find(v) != v || !has_arc[v]) continue;
    if (chi[v] != 2)
      throw EmbeddingError("Euler check failed for component of vertex " + std::to_string(v) +
                           " (V-E+F = " + std::to_string(chi[v]) + ")");
  }
  return fs.faces.size();
}

EmbeddedPlanarGraph::EmbeddedPlanarGraph(std::size_t n, std::vector<Arc> arcs,
                                         std::vector<std::vector<ArcId>> rotation)
    : arcs_(std::move(arcs)), rotation_(std::move(rotation)) {
  if (n >= std::numeric_limits<VertexId>::max() || arcs_.size() >= std::numeric_limits<ArcId>::max())
    throw std::invalid_argument("graph too large");
  std::vector<std::pair<VertexId, VertexId>> pairs;
  pairs.reserve(arcs_.size());
  Weight total = 0;
  for (const Arc& a : arcs_) {
    if (a.tail >= n || a.head >= n) throw EmbeddingError("arc endpoint out of range");
    if (a.tail == a.head) throw EmbeddingError("self-loop at vertex " + std::to_string(a.tail));
    pairs.emplace_back(a.tail, a.head);
    if (a.weight >= (Weight{1} << 63) || total + a.weight >= (Weight{1} << 63))
      throw WeightOverflowError("total arc weight does not fit in 63 bits");
    total += a.weight;
  }
  std::sort(pairs.begin(), pairs.end());
  auto dup = std::adjacent_find(pairs.begin(), pairs.end());
  if (dup != pairs.end())
    throw EmbeddingError("parallel arcs " + std::to_string(dup->first) + "->" + std::to_string(dup->second));
  total_weight_ = total;
  face_count_ = check_euler(n, arcs_, rotation_);

  out_start_.assign(n + 1, 0);
  for (const Arc& a : arcs_) ++out_start_[a.tail + 1];
  for (std::size_t v = 0; v < n; ++v) out_start_[v + 1] += out_start_[v];
  out_list_.resize(arcs_.size());
  std::vector<std::size_t> fill(out_start_.begin(), out_start_.end() - 1);
  for (ArcId a = 0; a < arcs_.size(); ++a) out_list_[fill[arcs_[a].tail]++] = a;
}

void EmbeddedPlanarGraph::check_vertex(VertexId v) const {
  if (!valid_vertex(v)) throw std::out_of_range("invalid vertex id " + std::to_string(v));
}

namespace {

// strips a '#' comment; returns whether anything but whitespace remains
bool strip(std::string& line) {
  auto hash = line.find('#');
  bool had_comment = hash != std::string::npos;
  if (had_comment) line.erase(hash);
  bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
  return !blank || !had_comment;
}

template <class T>
std::vector<T> parse_numbers(const std::string& line, std::size_t lineno) {
  std::istringstream ss(line);
  std::vector<T> out;
  std::string tok;
  while (ss >> tok) {
    if (tok.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError(lineno, "expected a nonnegative integer, got '" + tok + "'");
    try {
      unsigned long long v = std::stoull(tok);
      if (v > std::numeric_limits<T>::max()) throw std::out_of_range("");
      out.push_back(static_cast<T>(v));
    } catch (const std::out_of_range&) {
      throw ParseError(lineno, "number out of range: " + tok);
    }
  }
  return out;
}

}  // namespace

EmbeddedPlanarGraph load_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  // header and arcs skip blank lines; rotation lines do not (an isolated
  // vertex has an empty rotation), but whole-line comments are skipped
  auto next_content = [&](bool keep_blank) -> bool {
    while (std::getline(in, line)) {
      ++lineno;
      bool keep = strip(line);
      bool blank = line.find_first_not_of(" \t\r") == std::string::npos;
      if (!keep) continue;
      if (blank && !keep_blank) continue;
      return true;
    }
    return false;
  };
  if (!next_content(false)) throw ParseError(lineno, "missing header 'n m'");
  auto header = parse_numbers<std::uint64_t>(line, lineno);
  if (header.size() != 2) throw ParseError(lineno, "header must be 'n m'");
  if (header[0] >= std::numeric_limits<VertexId>::max() || header[1] >= std::numeric_limits<ArcId>::max())
    throw ParseError(lineno, "graph too large");
  const std::size_t n = header[0], m = header[1];
  std::vector<Arc> arcs;
  arcs.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (!next_content(false)) throw ParseError(lineno, "expected " + std::to_string(m) + " arc lines");
    auto nums = parse_numbers<std::uint64_t>(line, lineno);
    if (nums.size() != 3) throw ParseError(lineno, "arc line must be 'tail head weight'");
    if (nums[0] >= n || nums[1] >= n) throw ParseError(lineno, "arc endpoint out of range");
    arcs.push_back({static_cast<VertexId>(nums[0]), static_cast<VertexId>(nums[1]), nums[2]});
  }
  std::vector<std::vector<ArcId>> rotation(n);
  for (std::size_t v = 0; v < n; ++v) {
    if (!next_content(true)) break;  // missing trailing lines read as empty rotations
    auto nums = parse_numbers<std::uint64_t>(line, lineno);
    for (auto a : nums) {
      if (a >= m) throw ParseError(lineno, "rotation names unknown arc " + std::to_string(a));
      rotation[v].push_back(static_cast<ArcId>(a));
    }
  }
  while (next_content(false)) throw ParseError(lineno, "trailing content after rotations");
  return EmbeddedPlanarGraph(n, std::move(arcs), std::move(rotation));
}

EmbeddedPlanarGraph load_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::ios_base::failure("cannot open " + path);
  return load_graph(in);
}

void save_graph(const EmbeddedPlanarGraph& g, std::ostream& out) {
  out << g.vertex_count() << ' ' << g.arc_count() << '\n';
  for (const Arc& a : g.arcs()) out << a.tail << ' ' << a.head << ' ' << a.weight << '\n';
  for (VertexId v = 0; v < g.vertex_count(); ++v) {
    bool first = true;
    for (ArcId a : g.rotation(v)) {
      if (!first) out << ' ';
      out << a;
      first = false;
    }
    out << '\n';
  }
}

void save_graph_file(const EmbeddedPlanarGraph& g, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + path);
  save_graph(g, out);
  if (!out) throw std::ios_base::failure("write failed for " + path);
}

}  // namespace planar_oracle
