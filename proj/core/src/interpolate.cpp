#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>

#include "srsm/superres.hpp"

namespace srsm::sr {

namespace {

struct Candidate {
  std::int64_t dist2 = std::numeric_limits<std::int64_t>::max();
  std::ptrdiff_t row = 0;
  std::ptrdiff_t col = 0;
  bool found() const noexcept { return dist2 != std::numeric_limits<std::int64_t>::max(); }
  // Ties broken by smaller row, then smaller column.
  bool better_than(const Candidate& o) const noexcept {
    if (dist2 != o.dist2) return dist2 < o.dist2;
    if (row != o.row) return row < o.row;
    return col < o.col;
  }
};

// Quadrants partition the plane minus the origin by rotation:
// 0: dr < 0, dc >= 0   1: dr >= 0, dc > 0   2: dr > 0, dc <= 0   3: dr <= 0, dc < 0
int quadrant(std::ptrdiff_t dr, std::ptrdiff_t dc) noexcept {
  if (dr < 0 && dc >= 0) return 0;
  if (dr >= 0 && dc > 0) return 1;
  if (dr > 0 && dc <= 0) return 2;
  return 3;
}

// Visits the square ring at Chebyshev radius k around (r, c).
template <class Fn>
void for_each_on_ring(const BinaryMask& filled, std::ptrdiff_t r, std::ptrdiff_t c, std::ptrdiff_t k, Fn&& fn) {
  auto visit = [&](std::ptrdiff_t rr, std::ptrdiff_t cc) {
    if (filled.contains(rr, cc) && filled(static_cast<std::size_t>(rr), static_cast<std::size_t>(cc))) fn(rr, cc);
  };
  for (std::ptrdiff_t cc = c - k; cc <= c + k; ++cc) {
    visit(r - k, cc);
    visit(r + k, cc);
  }
  for (std::ptrdiff_t rr = r - k + 1; rr <= r + k - 1; ++rr) {
    visit(rr, c - k);
    visit(rr, c + k);
  }
}

std::ptrdiff_t max_radius(const SparseZImage& s) {
  return static_cast<std::ptrdiff_t>(std::max(s.rows(), s.cols()));
}

}  // namespace

ZImage interp_nearest(const SparseZImage& sparse) {
  require(!sparse.empty(), ErrorCode::EmptySparse, "no filled pixels to interpolate from");
  const BinaryMask filled = sparse.mask();
  ZImage out = sparse.to_dense(0.0);
  const std::ptrdiff_t limit = max_radius(sparse);
  for (std::size_t r = 0; r < sparse.rows(); ++r) {
    for (std::size_t c = 0; c < sparse.cols(); ++c) {
      if (filled(r, c)) continue;
      const auto rr = static_cast<std::ptrdiff_t>(r);
      const auto cc = static_cast<std::ptrdiff_t>(c);
      Candidate best;
      for (std::ptrdiff_t k = 1; k <= limit; ++k) {
        // every pixel on ring k is at distance >= k
        if (best.found() && k * k > best.dist2) break;
        for_each_on_ring(filled, rr, cc, k, [&](std::ptrdiff_t fr, std::ptrdiff_t fc) {
          const Candidate cand{(fr - rr) * (fr - rr) + (fc - cc) * (fc - cc), fr, fc};
          if (cand.better_than(best)) best = cand;
        });
      }
      out(r, c) = out(static_cast<std::size_t>(best.row), static_cast<std::size_t>(best.col));
    }
  }
  return out;
}

ZImage interp_bilinear(const SparseZImage& sparse) {
  require(!sparse.empty(), ErrorCode::EmptySparse, "no filled pixels to interpolate from");
  const BinaryMask filled = sparse.mask();
  const ZImage known = sparse.to_dense(0.0);
  ZImage out = known;
  const std::ptrdiff_t limit = max_radius(sparse);
  for (std::size_t r = 0; r < sparse.rows(); ++r) {
    for (std::size_t c = 0; c < sparse.cols(); ++c) {
      if (filled(r, c)) continue;
      const auto rr = static_cast<std::ptrdiff_t>(r);
      const auto cc = static_cast<std::ptrdiff_t>(c);
      std::array<Candidate, 4> best{};
      for (std::ptrdiff_t k = 1; k <= limit; ++k) {
        const bool done = std::all_of(best.begin(), best.end(), [&](const Candidate& b) { return b.found() && k * k > b.dist2; });
        if (done) break;
        for_each_on_ring(filled, rr, cc, k, [&](std::ptrdiff_t fr, std::ptrdiff_t fc) {
          const Candidate cand{(fr - rr) * (fr - rr) + (fc - cc) * (fc - cc), fr, fc};
          auto& slot = best[static_cast<std::size_t>(quadrant(fr - rr, fc - cc))];
          if (cand.better_than(slot)) slot = cand;
        });
      }
      double wsum = 0.0;
      double acc = 0.0;
      for (const auto& b : best) {
        if (!b.found()) continue;
        const double w = 1.0 / static_cast<double>(b.dist2);
        wsum += w;
        acc += w * known(static_cast<std::size_t>(b.row), static_cast<std::size_t>(b.col));
      }
      out(r, c) = acc / wsum;
    }
  }
  return out;
}

}  // namespace srsm::sr
