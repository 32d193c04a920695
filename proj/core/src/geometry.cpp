#include "srsm/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace srsm::geometry {

bool point_in_polygon(const std::vector<PixelPoint>& poly, double row, double col) noexcept {
  bool inside = false;
  const std::size_t n = poly.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const auto& a = poly[i];
    const auto& b = poly[j];
    if ((a.row > row) != (b.row > row)) {
      const double x = a.col + (row - a.row) * (b.col - a.col) / (b.row - a.row);
      if (col < x) inside = !inside;
    }
  }
  return inside;
}

BinaryMask rasterize(const Contour& c, std::size_t rows, std::size_t cols) {
  BinaryMask out(rows, cols, 0);
  const auto& pts = c.points();
  const std::size_t n = pts.size();
  std::vector<double> xs;
  for (std::size_t r = 0; r < rows; ++r) {
    const double y = static_cast<double>(r) + 0.5;
    xs.clear();
    for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
      const auto& a = pts[i];
      const auto& b = pts[j];
      if ((a.row > y) != (b.row > y)) xs.push_back(a.col + (y - a.row) * (b.col - a.col) / (b.row - a.row));
    }
    std::sort(xs.begin(), xs.end());
    for (std::size_t k = 0; k + 1 < xs.size(); k += 2) {
      // centers c + 0.5 strictly left of the right crossing, at or right of the left one
      const double lo = std::ceil(xs[k] - 0.5);
      const double hi = std::ceil(xs[k + 1] - 0.5);
      const auto c0 = static_cast<std::ptrdiff_t>(std::max(lo, 0.0));
      const auto c1 = static_cast<std::ptrdiff_t>(std::min(hi, static_cast<double>(cols)));
      for (std::ptrdiff_t col = c0; col < c1; ++col) out(r, static_cast<std::size_t>(col)) = 1;
    }
  }
  return out;
}

namespace {

double segment_distance(const PixelPoint& a, const PixelPoint& b, const PixelPoint& p) noexcept {
  const double dr = b.row - a.row;
  const double dc = b.col - a.col;
  const double len2 = dr * dr + dc * dc;
  double t = 0.0;
  if (len2 > 0.0) t = std::clamp(((p.row - a.row) * dr + (p.col - a.col) * dc) / len2, 0.0, 1.0);
  return std::hypot(p.row - (a.row + t * dr), p.col - (a.col + t * dc));
}

}  // namespace

double distance_to_polyline(const Contour& c, const PixelPoint& p) noexcept {
  double best = std::numeric_limits<double>::infinity();
  const auto& pts = c.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    best = std::min(best, segment_distance(pts[i], pts[(i + 1) % pts.size()], p));
  }
  return best;
}

std::vector<PixelPoint> densify(const Contour& c, double step) {
  require(step > 0.0, ErrorCode::InvalidArgument, "densify step must be positive");
  std::vector<PixelPoint> out;
  const auto& pts = c.points();
  double seg_start = 0.0;  // arc length at the start of the current segment
  double next = 0.0;       // arc length of the next sample
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % pts.size()];
    const double len = std::hypot(b.row - a.row, b.col - a.col);
    while (next < seg_start + len) {
      const double t = (next - seg_start) / len;
      out.push_back({a.row + t * (b.row - a.row), a.col + t * (b.col - a.col)});
      next = step * static_cast<double>(out.size());
    }
    seg_start += len;
  }
  return out;
}

}  // namespace srsm::geometry
