#include "planar_oracle/monge.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace planar_oracle {

namespace {

class LayoutBuilder {
 public:
  LayoutBuilder(const DenseDistanceGraph& d, MongeLayout& out) : d_(d), out_(out) {}

  Distance cell(std::uint32_t r, std::uint32_t c) const { return d_.at(out_.order[r], out_.order[c]); }

  bool is_monge(std::uint32_t r0, std::uint32_t r1, std::uint32_t c0, std::uint32_t c1) const {
    for (std::uint32_t r = r0; r < r1; ++r)
      for (std::uint32_t c = c0; c < c1; ++c)
        if (!cell(r, c).is_finite()) return false;
    for (std::uint32_t r = r0; r + 1 < r1; ++r)
      for (std::uint32_t c = c0; c + 1 < c1; ++c) {
        // compare in 128 bits, entries are finite
        unsigned __int128 lhs = cell(r, c).value(), rhs = cell(r, c + 1).value();
        lhs += cell(r + 1, c + 1).value();
        rhs += cell(r + 1, c).value();
        if (lhs > rhs) return false;
      }
    return true;
  }

  void split(std::uint32_t r0, std::uint32_t r1, std::uint32_t c0, std::uint32_t c1) {
    if (r0 >= r1 || c0 >= c1) return;
    std::uint32_t h = r1 - r0, w = c1 - c0;
    bool monge = is_monge(r0, r1, c0, c1);
    if (monge || h * w <= 16 || (h == 1 && w == 1)) {
      out_.blocks.push_back({r0, r1, c0, c1, monge});
      if (monge) out_.monge_cells += std::size_t(h) * w;
      return;
    }
    std::uint32_t rm = h > 1 ? r0 + h / 2 : r1, cm = w > 1 ? c0 + w / 2 : c1;
    split(r0, rm, c0, cm);
    split(r0, rm, cm, c1);
    split(rm, r1, c0, cm);
    split(rm, r1, cm, c1);
  }

 private:
  const DenseDistanceGraph& d_;
  MongeLayout& out_;
};

struct ColumnMinima {
  const DenseDistanceGraph& d;
  const MongeLayout& L;
  std::span<const std::uint32_t> rows;
  std::span<const Distance> offsets;
  std::vector<Distance>& best;
  std::uint64_t evaluated = 0;

  Distance f(std::size_t k, std::uint32_t c) {
    ++evaluated;
    return offsets[k] + d.at(L.order[rows[k]], L.order[c]);
  }

  // columns [clo, chi], candidate rows [klo, khi]; topmost minima are monotone
  void solve(std::int64_t clo, std::int64_t chi, std::size_t klo, std::size_t khi) {
    while (clo <= chi) {
      std::int64_t mid = clo + (chi - clo) / 2;
      auto c = static_cast<std::uint32_t>(mid);
      std::size_t arg = klo;
      Distance m = f(klo, c);
      for (std::size_t k = klo + 1; k <= khi; ++k) {
        Distance v = f(k, c);
        if (v < m) {
          m = v;
          arg = k;
        }
      }
      best[c] = min(best[c], m);
      solve(clo, mid - 1, klo, arg);
      clo = mid + 1;
      klo = arg;
    }
  }
};

}  // namespace

MongeLayout build_monge_layout(const DenseDistanceGraph& d, const std::vector<std::uint32_t>& order) {
  const auto m = static_cast<std::uint32_t>(d.size());
  MongeLayout L;
  L.order = order;
  if (L.order.size() != m) throw std::invalid_argument("monge order has the wrong length");
  L.position.assign(m, m);
  for (std::uint32_t p = 0; p < m; ++p) {
    if (L.order[p] >= m || L.position[L.order[p]] != m) throw std::invalid_argument("monge order is not a permutation");
    L.position[L.order[p]] = p;
  }
  LayoutBuilder(d, L).split(0, m, 0, m);
  return L;
}

std::uint64_t batch_column_minima(const DenseDistanceGraph& d, const MongeLayout& L,
                                  std::span<const std::uint32_t> rows, std::span<const Distance> offsets,
                                  std::vector<Distance>& best) {
  ColumnMinima cm{d, L, rows, offsets, best};
  for (const MongeBlock& b : L.blocks) {
    auto lo = static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), b.r0) - rows.begin());
    auto hi = static_cast<std::size_t>(std::lower_bound(rows.begin(), rows.end(), b.r1) - rows.begin());
    if (lo == hi) continue;
    if (b.monge) {
      cm.solve(b.c0, static_cast<std::int64_t>(b.c1) - 1, lo, hi - 1);
    } else {
      for (std::size_t k = lo; k < hi; ++k)
        for (std::uint32_t c = b.c0; c < b.c1; ++c) best[c] = min(best[c], cm.f(k, c));
    }
  }
  return cm.evaluated;
}

}  // namespace planar_oracle
