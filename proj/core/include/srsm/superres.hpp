#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "srsm/types.hpp"

namespace srsm::sr {

/// Settings for the constrained l1 + smoothness propagation.
///
/// `step_size` multiplies the true gradient of the smoothness term, whose
/// Lipschitz constant is bounded by 16 on the 4-neighbour stencil.
struct SrParams {
  double lambda = 0.0;
  std::size_t max_iters = 1000;
  double diff_tol = 1e-3;
  double step_size = 1.0 / 16.0;

  void validate() const;

  /// Defaults with lambda = 1e-3 * |mean of the constrained values| (1e-3 when that mean is zero).
  static SrParams defaults_for(const SparseZImage& sparse);
};

struct SrTrace {
  std::vector<double> diff;  // ||phi(k+1) - phi(k)||_2
  std::vector<double> cost;  // F(phi(k+1))
  /// First iteration after which no pixel is still exactly zero.
  std::optional<std::size_t> first_filled_iter;

  std::size_t iterations() const noexcept { return diff.size(); }
};

struct SrResult {
  ZImage image;
  SrTrace trace;
};

/// Projects points onto the raster grid. Out-of-extent points are dropped; collisions keep the maximum z.
SparseZImage project_points(const PointCloud3D& cloud, const GeoTransform& gt);

/// Squared forward-difference gradients (replicate boundary) plus lambda * l1 norm.
double ssdg_cost(const ZImage& img, double lambda);

/// Gradient of the smooth part of ssdg_cost: 2 * (deg(p) * phi(p) - sum of 4-neighbours).
ZImage ssdg_gradient(const ZImage& img);

/// FISTA on ssdg_cost with the filled pixels held fixed.
SrResult propagate_fista(const SparseZImage& sparse, const SrParams& params);

ZImage interp_nearest(const SparseZImage& sparse);
/// Inverse-distance (power 2) average of the nearest filled pixel in each of four quadrants.
ZImage interp_bilinear(const SparseZImage& sparse);

double rmse_image(const ZImage& a, const ZImage& b);
/// Returns +infinity when the images are identical.
double psnr(const ZImage& a, const ZImage& b, double peak_val);
/// Mean SSIM over 8x8 windows (stride 1, replicate border). `dynamic_range` <= 0 selects
/// the larger value range of the two images (or 1 for constant images).
double ssim(const ZImage& a, const ZImage& b, double dynamic_range = 0.0);

struct SrScore {
  std::string method;  // "SR", "NN" or "bilinear"
  int factor = 1;
  double rmse = 0.0;
  double ssim = 0.0;
  double psnr = 0.0;
};

struct SrBenchmarkReport {
  ZImage ground_truth;
  std::vector<SrScore> scores;

  const SrScore& find(const std::string& method, int factor) const;
};

/// Keeps every `factor`-th point, reconstructs with each method and scores against
/// the DSM propagated from the full cloud. PSNR and SSIM use the ground-truth value range as peak.
SrBenchmarkReport sr_benchmark(const PointCloud3D& cloud, const GeoTransform& gt, const std::vector<int>& factors);

PointCloud3D subsample_stride(const PointCloud3D& cloud, int factor);

}  // namespace srsm::sr
