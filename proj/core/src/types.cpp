#include "srsm/types.hpp"

#include <algorithm>
#include <cmath>

namespace srsm {

PointCloud3D::PointCloud3D(std::vector<Point3> points) : points_(std::move(points)) {
  for (const auto& p : points_) {
    require(std::isfinite(p.x) && std::isfinite(p.y) && std::isfinite(p.z), ErrorCode::NonFinite,
            "point cloud contains a non-finite coordinate");
  }
}

void GeoTransform::validate() const {
  require(std::isfinite(origin_x) && std::isfinite(origin_y), ErrorCode::InvalidArgument, "geotransform origin must be finite");
  require(pixel_size > 0.0 && std::isfinite(pixel_size), ErrorCode::InvalidArgument, "pixel_size must be positive");
  require(rows >= 1 && cols >= 1, ErrorCode::InvalidArgument, "geotransform needs at least one row and column");
}

PixelPoint world_to_pixel(const GeoTransform& gt, double x, double y) noexcept {
  return {(gt.origin_y - y) / gt.pixel_size, (x - gt.origin_x) / gt.pixel_size};
}

WorldPoint pixel_to_world(const GeoTransform& gt, double row, double col) noexcept {
  return {gt.origin_x + col * gt.pixel_size, gt.origin_y - row * gt.pixel_size};
}

std::size_t SparseZImage::index(std::size_t row, std::size_t col) const {
  require(row < rows_ && col < cols_, ErrorCode::InvalidArgument, "sparse z-image index out of range");
  return row * cols_ + col;
}

void SparseZImage::put_max(std::size_t row, std::size_t col, double z) {
  const auto [it, inserted] = filled_.emplace(index(row, col), z);
  if (!inserted && z > it->second) it->second = z;
}

void SparseZImage::set(std::size_t row, std::size_t col, double z) { filled_[index(row, col)] = z; }

bool SparseZImage::is_filled(std::size_t row, std::size_t col) const { return filled_.contains(index(row, col)); }

ZImage SparseZImage::to_dense(double fill) const {
  ZImage out(rows_, cols_, fill);
  for (const auto& [i, z] : filled_) out[i] = z;
  return out;
}

BinaryMask SparseZImage::mask() const {
  BinaryMask out(rows_, cols_, 0);
  for (const auto& kv : filled_) out[kv.first] = 1;
  return out;
}

SparseZImage SparseZImage::from_dense(const ZImage& z, const BinaryMask& keep) {
  require(z.same_shape(keep), ErrorCode::DimMismatch, "keep mask does not match z-image");
  SparseZImage out(z.rows(), z.cols());
  for (std::size_t i = 0; i < z.size(); ++i) {
    if (keep[i]) out.filled_.emplace_hint(out.filled_.end(), i, z[i]);
  }
  return out;
}

Contour::Contour(std::vector<PixelPoint> points) : points_(std::move(points)) {
  require(points_.size() >= 3, ErrorCode::InvalidArgument, "contour needs at least 3 points");
  for (std::size_t i = 0; i < points_.size(); ++i) {
    const auto& a = points_[i];
    const auto& b = points_[(i + 1) % points_.size()];
    require(std::isfinite(a.row) && std::isfinite(a.col), ErrorCode::NonFinite, "contour point is not finite");
    require(std::hypot(a.row - b.row, a.col - b.col) > 1e-9, ErrorCode::InvalidArgument,
            "contour has coincident consecutive points");
  }
}

double Contour::signed_area() const noexcept {
  double acc = 0.0;
  const std::size_t n = points_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = points_[i];
    const auto& b = points_[(i + 1) % n];
    acc += a.col * b.row - b.col * a.row;
  }
  return 0.5 * acc;
}

double Contour::area() const noexcept { return std::abs(signed_area()); }

double Contour::perimeter() const noexcept {
  double acc = 0.0;
  const std::size_t n = points_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = points_[i];
    const auto& b = points_[(i + 1) % n];
    acc += std::hypot(b.row - a.row, b.col - a.col);
  }
  return acc;
}

Contour Contour::reversed() const {
  std::vector<PixelPoint> pts(points_.rbegin(), points_.rend());
  return Contour(std::move(pts));
}

Contour Contour::counter_clockwise() const { return signed_area() < 0.0 ? reversed() : *this; }

Contour Contour::translated(double drow, double dcol) const {
  std::vector<PixelPoint> pts = points_;
  for (auto& p : pts) {
    p.row += drow;
    p.col += dcol;
  }
  return Contour(std::move(pts));
}

void SnakeParams::validate() const {
  require(alpha >= 0.0 && beta >= 0.0 && kappa >= 0.0, ErrorCode::InvalidArgument, "alpha, beta, kappa must be >= 0");
  require(mu_gvf > 0.0 && sigma > 0.0 && gamma > 0.0, ErrorCode::InvalidArgument, "mu_gvf, sigma, gamma must be > 0");
  require(max_iters >= 1, ErrorCode::InvalidArgument, "max_iters must be >= 1");
  require(resample_spacing > 0.0 && convergence_tol > 0.0, ErrorCode::InvalidArgument,
          "resample_spacing and convergence_tol must be > 0");
}

}  // namespace srsm
