#pragma once

#include <compare>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>

namespace planar_oracle {

using VertexId = std::uint32_t;
using ArcId = std::uint32_t;
using NodeId = std::uint32_t;
using Weight = std::uint64_t;

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

// Exact path length or the unreachable sentinel. The sentinel is the largest
// raw value, so the defaulted ordering puts it above every finite length.
class Distance {
 public:
  constexpr Distance() = default;

  static constexpr Distance unreachable() { return Distance(); }
  static constexpr Distance finite(std::uint64_t len) {
    Distance d;
    d.raw_ = len < kMaxFinite ? len : kMaxFinite;
    return d;
  }
  static constexpr Distance zero() { return finite(0); }
  static constexpr Distance from_raw(std::uint64_t raw) {
    Distance d;
    d.raw_ = raw;
    return d;
  }

  constexpr bool is_finite() const { return raw_ != kUnreachableRaw; }
  constexpr bool is_unreachable() const { return raw_ == kUnreachableRaw; }
  constexpr std::uint64_t value() const { return raw_; }
  constexpr std::uint64_t raw() const { return raw_; }

  friend constexpr auto operator<=>(Distance, Distance) = default;
  friend constexpr bool operator==(Distance, Distance) = default;

  // unreachable absorbs; finite sums saturate just below the sentinel
  friend constexpr Distance operator+(Distance a, Distance b) {
    if (!a.is_finite() || !b.is_finite()) return unreachable();
    std::uint64_t s = a.raw_ + b.raw_;
    if (s < a.raw_ || s >= kMaxFinite) return finite(kMaxFinite);
    return finite(s);
  }
  friend constexpr Distance operator+(Distance a, Weight w) { return a + finite(w); }

  std::string to_string() const {
    return is_finite() ? std::to_string(raw_) : std::string("UNREACHABLE");
  }

  static constexpr std::uint64_t kUnreachableRaw = std::numeric_limits<std::uint64_t>::max();
  static constexpr std::uint64_t kMaxFinite = kUnreachableRaw - 1;

 private:
  std::uint64_t raw_ = kUnreachableRaw;
};

inline std::ostream& operator<<(std::ostream& os, Distance d) { return os << d.to_string(); }

inline constexpr Distance min(Distance a, Distance b) { return b < a ? b : a; }

}  // namespace planar_oracle
