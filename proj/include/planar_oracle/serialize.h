#pragma once

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "planar_oracle/ddg.h"
#include "planar_oracle/decomposition.h"
#include "planar_oracle/graph.h"

namespace planar_oracle {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Little-endian byte sink.
class BinaryWriter {
 public:
  void u8(std::uint8_t x) { buf_.push_back(static_cast<char>(x)); }
  void u32(std::uint32_t x) {
    for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(x >> (8 * i)));
  }
  void u64(std::uint64_t x) {
    for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(x >> (8 * i)));
  }
  void bytes(std::string_view s) { buf_.append(s); }
  void u32s(const std::vector<std::uint32_t>& v) {
    u64(v.size());
    for (auto x : v) u32(x);
  }
  void distances(const std::vector<Distance>& v) {
    u64(v.size());
    for (auto d : v) u64(d.raw());
  }
  // tag (4 chars) + u64 payload length + payload
  void section(std::string_view tag, const BinaryWriter& payload);

  const std::string& str() const { return buf_; }
  std::size_t size() const { return buf_.size(); }

 private:
  std::string buf_;
};

class BinaryReader {
 public:
  explicit BinaryReader(std::string_view data) : data_(data) {}
  std::uint8_t u8();
  std::uint32_t u32();
  std::uint64_t u64();
  std::string_view bytes(std::size_t n);
  std::vector<std::uint32_t> u32s();
  std::vector<Distance> distances();
  bool done() const { return pos_ == data_.size(); }
  // next section; tag must match
  BinaryReader section(std::string_view tag);
  bool next_is(std::string_view tag) const;

 private:
  void need(std::size_t n) const;
  std::string_view data_;
  std::size_t pos_ = 0;
};

void write_graph(BinaryWriter& w, const EmbeddedPlanarGraph& g);
EmbeddedPlanarGraph read_graph(BinaryReader& r);
void write_tree(BinaryWriter& w, const DecompositionTree& t);
DecompositionTree read_tree(BinaryReader& r, std::size_t n, std::size_t leaf_size, std::size_t base);
void write_ddg(BinaryWriter& w, const DenseDistanceGraph& d);
DenseDistanceGraph read_ddg(BinaryReader& r);

inline constexpr std::array<char, 4> kOracleMagic = {'P', 'F', 'O', 'R'};
inline constexpr std::uint32_t kOracleVersion = 1;

}  // namespace planar_oracle
