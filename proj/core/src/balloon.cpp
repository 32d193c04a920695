#include <cmath>

#include "srsm/snake.hpp"

namespace srsm::snake {

std::vector<Vec2> outward_normals(const Contour& c) {
  const auto& pts = c.points();
  const std::size_t n = pts.size();
  // For positive signed area (x = col, y = row) the outward normal of direction (dx, dy) is (dy, -dx).
  const double orient = c.signed_area() >= 0.0 ? 1.0 : -1.0;
  std::vector<Vec2> edge_normal(n);
  std::vector<Vec2> edge_dir(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % n];
    const double dr = b.row - a.row;
    const double dc = b.col - a.col;
    const double len = std::hypot(dr, dc);
    require(len > 1e-9, ErrorCode::DegenerateNormal, "coincident consecutive contour points");
    edge_dir[i] = {dr / len, dc / len};
    edge_normal[i] = {-orient * dc / len, orient * dr / len};
  }
  std::vector<Vec2> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& in = edge_normal[(i + n - 1) % n];
    const auto& on = edge_normal[i];
    Vec2 m{in.row + on.row, in.col + on.col};
    double len = std::hypot(m.row, m.col);
    if (len < 1e-12) {
      // hairpin: the vertex is a spike tip, so outward is along the incoming edge
      m = edge_dir[(i + n - 1) % n];
      len = 1.0;
    }
    out[i] = {m.row / len, m.col / len};
  }
  return out;
}

std::vector<Vec2> classic_balloon(const Contour& c, double kappa) {
  auto forces = outward_normals(c);
  for (auto& f : forces) {
    f.row *= kappa;
    f.col *= kappa;
  }
  return forces;
}

std::vector<Vec2> improved_balloon(const Contour& c, const BinaryMask& mask, double kappa, std::vector<std::int8_t>* signs) {
  auto forces = outward_normals(c);
  if (signs != nullptr) signs->assign(c.size(), 0);
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto r = static_cast<std::ptrdiff_t>(std::floor(c[i].row));
    const auto col = static_cast<std::ptrdiff_t>(std::floor(c[i].col));
    const bool inside = mask.contains(r, col) && mask(static_cast<std::size_t>(r), static_cast<std::size_t>(col)) != 0;
    const double k = inside ? kappa : -kappa;
    forces[i].row *= k;
    forces[i].col *= k;
    if (signs != nullptr) (*signs)[i] = inside ? 1 : -1;
  }
  return forces;
}

}  // namespace srsm::snake
