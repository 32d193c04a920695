#pragma once

#include <cstddef>
#include <vector>

#include "srsm/types.hpp"

namespace srsm::geometry {

/// Even-odd rule. Points exactly on an edge follow the half-open crossing convention.
bool point_in_polygon(const std::vector<PixelPoint>& poly, double row, double col) noexcept;

/// Even-odd scanline fill; a pixel is set when its center lies inside.
BinaryMask rasterize(const Contour& c, std::size_t rows, std::size_t cols);

/// Euclidean distance from p to the closed polyline.
double distance_to_polyline(const Contour& c, const PixelPoint& p) noexcept;

/// Points along the closed polyline every `step` of arc length (vertices not retained).
std::vector<PixelPoint> densify(const Contour& c, double step);

}  // namespace srsm::geometry
