#include "planar_oracle/serialize.h"

namespace planar_oracle {

void BinaryWriter::section(std::string_view tag, const BinaryWriter& payload) {
  if (tag.size() != 4) throw std::invalid_argument("section tags have four characters");
  bytes(tag);
  u64(payload.size());
  bytes(payload.str());
}

void BinaryReader::need(std::size_t n) const {
  if (data_.size() - pos_ < n) throw FormatError("oracle file truncated");
}

std::uint8_t BinaryReader::u8() {
  need(1);
  return static_cast<std::uint8_t>(data_[pos_++]);
}

std::uint32_t BinaryReader::u32() {
  need(4);
  std::uint32_t x = 0;
  for (int i = 0; i < 4; ++i) x |= std::uint32_t(static_cast<std::uint8_t>(data_[pos_++])) << (8 * i);
  return x;
}

std::uint64_t BinaryReader::u64() {
  need(8);
  std::uint64_t x = 0;
  for (int i = 0; i < 8; ++i) x |= std::uint64_t(static_cast<std::uint8_t>(data_[pos_++])) << (8 * i);
  return x;
}

std::string_view BinaryReader::bytes(std::size_t n) {
  need(n);
  auto s = data_.substr(pos_, n);
  pos_ += n;
  return s;
}

std::vector<std::uint32_t> BinaryReader::u32s() {
  std::uint64_t n = u64();
  need(n * 4);
  std::vector<std::uint32_t> v(n);
  for (auto& x : v) x = u32();
  return v;
}

std::vector<Distance> BinaryReader::distances() {
  std::uint64_t n = u64();
  need(n * 8);
  std::vector<Distance> v(n);
  for (auto& x : v) x = Distance::from_raw(u64());
  return v;
}

bool BinaryReader::next_is(std::string_view tag) const {
  return data_.size() - pos_ >= 4 && data_.substr(pos_, 4) == tag;
}

BinaryReader BinaryReader::section(std::string_view tag) {
  auto got = bytes(4);
  if (got != tag) throw FormatError("expected section " + std::string(tag) + ", found " + std::string(got));
  std::uint64_t len = u64();
  return BinaryReader(bytes(len));
}

void write_graph(BinaryWriter& w, const EmbeddedPlanarGraph& g) {
  w.u64(g.vertex_count());
  w.u64(g.arc_count());
  for (const Arc& a : g.arcs()) {
    w.u32(a.tail);
    w.u32(a.head);
    w.u64(a.weight);
  }
  for (const auto& rot : g.rotations()) w.u32s(rot);
}

EmbeddedPlanarGraph read_graph(BinaryReader& r) {
  std::uint64_t n = r.u64(), m = r.u64();
  if (n >= (1ull << 32) || m >= (1ull << 32)) throw FormatError("graph too large");
  std::vector<Arc> arcs(m);
  for (auto& a : arcs) {
    a.tail = r.u32();
    a.head = r.u32();
    a.weight = r.u64();
  }
  std::vector<std::vector<ArcId>> rot(n);
  for (auto& x : rot) x = r.u32s();
  return EmbeddedPlanarGraph(n, std::move(arcs), std::move(rot));
}

void write_tree(BinaryWriter& w, const DecompositionTree& t) {
  w.u64(t.size());
  for (const Piece& p : t.pieces()) {
    w.u32(p.id);
    w.u32(p.parent);
    w.u32(p.children[0]);
    w.u32(p.children[1]);
    w.u32(p.depth);
    w.u32(p.subtree_size);
    w.u32s(p.vertices);
    w.u32s(p.boundary);
    w.u64(p.holes.size());
    for (const auto& h : p.holes) w.u32s(h);
    w.u32s(p.boundary_cycle);
    w.u32s(p.arcs);
  }
}

DecompositionTree read_tree(BinaryReader& r, std::size_t n, std::size_t leaf_size, std::size_t base) {
  std::uint64_t count = r.u64();
  std::vector<Piece> pieces;
  for (std::uint64_t i = 0; i < count; ++i) {
    Piece p;
    p.id = r.u32();
    p.parent = r.u32();
    p.children[0] = r.u32();
    p.children[1] = r.u32();
    p.depth = r.u32();
    p.subtree_size = r.u32();
    if (p.id != i) throw FormatError("tree pieces out of order");
    p.vertices = r.u32s();
    p.boundary = r.u32s();
    std::uint64_t holes = r.u64();
    for (std::uint64_t h = 0; h < holes; ++h) p.holes.push_back(r.u32s());
    p.boundary_cycle = r.u32s();
    p.arcs = r.u32s();
    for (VertexId v : p.vertices)
      if (v >= n) throw FormatError("piece vertex out of range");
    pieces.push_back(std::move(p));
  }
  return DecompositionTree(std::move(pieces), n, leaf_size, base);
}

void write_ddg(BinaryWriter& w, const DenseDistanceGraph& d) {
  w.u8(static_cast<std::uint8_t>(d.variant()));
  w.u32s(d.vertices());
  w.u32s(d.source_pieces());
  w.distances(d.weights());
}

DenseDistanceGraph read_ddg(BinaryReader& r) {
  auto variant = static_cast<DdgVariant>(r.u8());
  if (static_cast<int>(variant) > 2) throw FormatError("unknown DDG variant");
  auto vs = r.u32s();
  auto src = r.u32s();
  auto w = r.distances();
  try {
    return DenseDistanceGraph(variant, std::move(vs), std::move(w), std::move(src));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
}

}  // namespace planar_oracle
