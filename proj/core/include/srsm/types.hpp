#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "srsm/grid.hpp"

namespace srsm {

struct Point3 {
  double x = 0.0;  // easting, meters
  double y = 0.0;  // northing, meters
  double z = 0.0;  // elevation, meters
};

/// LiDAR cloud. Every coordinate is finite.
class PointCloud3D {
 public:
  PointCloud3D() = default;
  explicit PointCloud3D(std::vector<Point3> points);

  const std::vector<Point3>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }

 private:
  std::vector<Point3> points_;
};

/// North-up affine map between world meters and raster pixels.
struct GeoTransform {
  double origin_x = 0.0;  // world x of the west edge
  double origin_y = 0.0;  // world y of the north edge
  double pixel_size = 1.0;
  std::size_t rows = 1;
  std::size_t cols = 1;

  void validate() const;
  double pixel_area() const noexcept { return pixel_size * pixel_size; }

  bool operator==(const GeoTransform&) const = default;
};

/// Continuous raster position; pixel (r, c) spans [r, r+1) x [c, c+1).
struct PixelPoint {
  double row = 0.0;
  double col = 0.0;

  bool operator==(const PixelPoint&) const = default;
};

struct WorldPoint {
  double x = 0.0;
  double y = 0.0;
};

PixelPoint world_to_pixel(const GeoTransform& gt, double x, double y) noexcept;
WorldPoint pixel_to_world(const GeoTransform& gt, double row, double col) noexcept;

/// Sparse z-image: the filled index set and its projected elevations.
class SparseZImage {
 public:
  SparseZImage(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  std::size_t filled_count() const noexcept { return filled_.size(); }
  bool empty() const noexcept { return filled_.empty(); }

  /// Keeps the larger elevation if the pixel is already filled.
  void put_max(std::size_t row, std::size_t col, double z);
  void set(std::size_t row, std::size_t col, double z);
  bool is_filled(std::size_t row, std::size_t col) const;

  /// Linear index (row * cols + col) to elevation, ordered by index.
  const std::map<std::size_t, double>& filled() const noexcept { return filled_; }

  /// Dense raster with empty pixels set to `fill`, plus the fill mask.
  ZImage to_dense(double fill = 0.0) const;
  BinaryMask mask() const;

  static SparseZImage from_dense(const ZImage& z, const BinaryMask& keep);

 private:
  std::size_t index(std::size_t row, std::size_t col) const;

  std::size_t rows_;
  std::size_t cols_;
  std::map<std::size_t, double> filled_;
};

/// Closed polyline in pixel coordinates. At least three points, consecutive points distinct.
class Contour {
 public:
  Contour() = default;
  explicit Contour(std::vector<PixelPoint> points);

  const std::vector<PixelPoint>& points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  const PixelPoint& operator[](std::size_t i) const noexcept { return points_[i]; }

  /// Shoelace area with x = col, y = row. Positive means counter-clockwise in that frame.
  double signed_area() const noexcept;
  double area() const noexcept;
  double perimeter() const noexcept;

  Contour reversed() const;
  /// Same contour with positive signed area.
  Contour counter_clockwise() const;
  Contour translated(double drow, double dcol) const;

  bool operator==(const Contour&) const = default;

 private:
  std::vector<PixelPoint> points_;
};

enum class ExternalForce {
  Gvf,       // gradient vector flow of the edge map
  Gradient,  // raw -grad(E_img)
};

struct SnakeParams {
  double alpha = 0.2;
  double beta = 0.2;
  double kappa = 0.1;
  double mu_gvf = 0.2;
  double w_line = 0.04;
  double w_edge = 2.0;
  double w_term = 0.01;
  double sigma = 1.0;
  double gamma = 1.0;
  std::size_t max_iters = 400;
  double resample_spacing = 2.0;
  double convergence_tol = 0.05;
  std::size_t gvf_iters = 200;
  ExternalForce external = ExternalForce::Gvf;

  void validate() const;
};

}  // namespace srsm
