#include <array>
#include <deque>

#include "srsm/scene.hpp"

namespace srsm::scene {

Components label_components(const BinaryMask& mask) {
  Components out{Grid<std::uint32_t>(mask.rows(), mask.cols(), 0), {}};
  std::deque<std::size_t> queue;
  const std::size_t rows = mask.rows();
  const std::size_t cols = mask.cols();
  for (std::size_t start = 0; start < mask.size(); ++start) {
    if (!mask[start] || out.labels[start] != 0) continue;
    const auto label = static_cast<std::uint32_t>(out.sizes.size() + 1);
    std::size_t count = 0;
    out.labels[start] = label;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t i = queue.front();
      queue.pop_front();
      ++count;
      const std::size_t r = i / cols;
      const std::size_t c = i % cols;
      const auto visit = [&](std::size_t j) {
        if (mask[j] && out.labels[j] == 0) {
          out.labels[j] = label;
          queue.push_back(j);
        }
      };
      if (r > 0) visit(i - cols);
      if (r + 1 < rows) visit(i + cols);
      if (c > 0) visit(i - 1);
      if (c + 1 < cols) visit(i + 1);
    }
    out.sizes.push_back(count);
  }
  return out;
}

namespace {

struct Heading {
  std::ptrdiff_t dr;
  std::ptrdiff_t dc;
  bool operator==(const Heading&) const = default;
};

// Pixel offsets, relative to the current corner, of the two pixels ahead of a heading.
struct Ahead {
  std::ptrdiff_t left_r, left_c, right_r, right_c;
};

Ahead ahead_of(const Heading& h) noexcept {
  if (h.dc == 1) return {-1, 0, 0, 0};     // east
  if (h.dr == 1) return {0, 0, 0, -1};     // south
  if (h.dc == -1) return {0, -1, -1, -1};  // west
  return {-1, -1, -1, 0};                  // north
}

}  // namespace

Contour trace_boundary(const BinaryMask& mask, std::size_t seed_row, std::size_t seed_col) {
  require(seed_row < mask.rows() && seed_col < mask.cols() && mask(seed_row, seed_col), ErrorCode::InvalidArgument,
          "trace seed must be a foreground pixel");

  // isolate the seed's 4-connected component
  const Components comps = label_components(mask);
  const std::uint32_t label = comps.labels(seed_row, seed_col);
  std::size_t first = 0;
  while (comps.labels[first] != label) ++first;
  const auto in = [&](std::ptrdiff_t r, std::ptrdiff_t c) {
    return comps.labels.contains(r, c) && comps.labels(static_cast<std::size_t>(r), static_cast<std::size_t>(c)) == label;
  };

  // The first pixel in raster order has an exposed top edge; walk it eastwards with the
  // component on the right-hand side.
  const auto r0 = static_cast<std::ptrdiff_t>(first / mask.cols());
  const auto c0 = static_cast<std::ptrdiff_t>(first % mask.cols());
  const Heading start_heading{0, 1};
  std::ptrdiff_t r = r0;
  std::ptrdiff_t c = c0;
  Heading h = start_heading;
  std::vector<PixelPoint> vertices{{static_cast<double>(r), static_cast<double>(c)}};
  const std::size_t guard = 4 * (mask.rows() + 1) * (mask.cols() + 1);
  for (std::size_t step = 0; step < guard; ++step) {
    r += h.dr;
    c += h.dc;
    const Ahead a = ahead_of(h);
    const bool right_in = in(r + a.right_r, c + a.right_c);
    const bool left_in = in(r + a.left_r, c + a.left_c);
    Heading next = h;
    if (!right_in) {
      next = {h.dc, -h.dr};  // turn right
    } else if (left_in) {
      next = {-h.dc, h.dr};  // turn left
    }
    if (r == r0 && c == c0 && next == start_heading) break;
    if (!(next == h)) vertices.push_back({static_cast<double>(r), static_cast<double>(c)});
    h = next;
  }
  return Contour(std::move(vertices)).counter_clockwise();
}

}  // namespace srsm::scene
