#include "srsm/superres.hpp"

#include <cmath>

namespace srsm::sr {

void SrParams::validate() const {
  require(lambda >= 0.0 && std::isfinite(lambda), ErrorCode::InvalidArgument, "lambda must be >= 0");
  require(max_iters >= 1, ErrorCode::InvalidArgument, "max_iters must be >= 1");
  require(diff_tol > 0.0, ErrorCode::InvalidArgument, "diff_tol must be > 0");
  require(step_size > 0.0, ErrorCode::InvalidArgument, "step_size must be > 0");
}

SrParams SrParams::defaults_for(const SparseZImage& sparse) {
  SrParams p;
  double sum = 0.0;
  for (const auto& kv : sparse.filled()) sum += kv.second;
  const double mean = sparse.empty() ? 0.0 : sum / static_cast<double>(sparse.filled_count());
  p.lambda = 1e-3 * (mean == 0.0 ? 1.0 : std::abs(mean));
  return p;
}

SparseZImage project_points(const PointCloud3D& cloud, const GeoTransform& gt) {
  gt.validate();
  require(!cloud.empty(), ErrorCode::EmptyCloud, "point cloud is empty");
  SparseZImage out(gt.rows, gt.cols);
  for (const auto& p : cloud.points()) {
    const auto px = world_to_pixel(gt, p.x, p.y);
    const double r = std::floor(px.row);
    const double c = std::floor(px.col);
    if (r < 0.0 || c < 0.0 || r >= static_cast<double>(gt.rows) || c >= static_cast<double>(gt.cols)) continue;
    out.put_max(static_cast<std::size_t>(r), static_cast<std::size_t>(c), p.z);
  }
  require(!out.empty(), ErrorCode::EmptyCloud, "no point falls inside the raster extent");
  return out;
}

double ssdg_cost(const ZImage& img, double lambda) {
  const std::size_t rows = img.rows();
  const std::size_t cols = img.cols();
  double smooth = 0.0;
  double l1 = 0.0;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = img(r, c);
      if (c + 1 < cols) {
        const double dx = img(r, c + 1) - v;
        smooth += dx * dx;
      }
      if (r + 1 < rows) {
        const double dy = img(r + 1, c) - v;
        smooth += dy * dy;
      }
      l1 += std::abs(v);
    }
  }
  return smooth + lambda * l1;
}

namespace {

void smooth_gradient(const ZImage& img, ZImage& out) {
  const std::size_t rows = img.rows();
  const std::size_t cols = img.cols();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      const double v = img(r, c);
      double acc = 0.0;
      if (r > 0) acc += v - img(r - 1, c);
      if (r + 1 < rows) acc += v - img(r + 1, c);
      if (c > 0) acc += v - img(r, c - 1);
      if (c + 1 < cols) acc += v - img(r, c + 1);
      out(r, c) = 2.0 * acc;
    }
  }
}

double soft_threshold(double v, double t) noexcept {
  if (v > t) return v - t;
  if (v < -t) return v + t;
  return 0.0;
}

}  // namespace

ZImage ssdg_gradient(const ZImage& img) {
  ZImage out(img.rows(), img.cols());
  smooth_gradient(img, out);
  return out;
}

SrResult propagate_fista(const SparseZImage& sparse, const SrParams& params) {
  params.validate();
  require(!sparse.empty(), ErrorCode::EmptySparse, "no projected pixels to propagate");

  const std::size_t n = sparse.rows() * sparse.cols();
  ZImage x = sparse.to_dense(0.0);
  ZImage y = x;
  ZImage x_next(sparse.rows(), sparse.cols());
  ZImage grad(sparse.rows(), sparse.cols());
  const double threshold = params.lambda * params.step_size;
  double t = 1.0;

  SrResult result;
  auto& trace = result.trace;
  for (std::size_t k = 0; k < params.max_iters; ++k) {
    smooth_gradient(y, grad);
    for (std::size_t i = 0; i < n; ++i) x_next[i] = soft_threshold(y[i] - params.step_size * grad[i], threshold);
    for (const auto& [i, z] : sparse.filled()) x_next[i] = z;

    double diff2 = 0.0;
    bool all_filled = true;
    for (std::size_t i = 0; i < n; ++i) {
      const double d = x_next[i] - x[i];
      diff2 += d * d;
      if (x_next[i] == 0.0) all_filled = false;
    }
    const double diff = std::sqrt(diff2);
    require(std::isfinite(diff), ErrorCode::NonFinite, "propagation produced non-finite values; reduce step_size");

    const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
    const double momentum = (t - 1.0) / t_next;
    for (std::size_t i = 0; i < n; ++i) y[i] = x_next[i] + momentum * (x_next[i] - x[i]);
    t = t_next;
    std::swap(x, x_next);

    trace.diff.push_back(diff);
    trace.cost.push_back(ssdg_cost(x, params.lambda));
    if (all_filled && !trace.first_filled_iter) trace.first_filled_iter = k;
    if (diff < params.diff_tol) break;
  }
  result.image = std::move(x);
  return result;
}

}  // namespace srsm::sr
