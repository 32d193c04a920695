#include <algorithm>

#include "srsm/superres.hpp"

namespace srsm::sr {

PointCloud3D subsample_stride(const PointCloud3D& cloud, int factor) {
  require(factor >= 1, ErrorCode::InvalidArgument, "subsampling factor must be >= 1");
  std::vector<Point3> kept;
  kept.reserve(cloud.size() / static_cast<std::size_t>(factor) + 1);
  for (std::size_t i = 0; i < cloud.size(); i += static_cast<std::size_t>(factor)) kept.push_back(cloud.points()[i]);
  return PointCloud3D(std::move(kept));
}

const SrScore& SrBenchmarkReport::find(const std::string& method, int factor) const {
  const auto it = std::find_if(scores.begin(), scores.end(),
                               [&](const SrScore& s) { return s.method == method && s.factor == factor; });
  require(it != scores.end(), ErrorCode::InvalidArgument, "no benchmark score for the requested method/factor");
  return *it;
}

SrBenchmarkReport sr_benchmark(const PointCloud3D& cloud, const GeoTransform& gt, const std::vector<int>& factors) {
  const SparseZImage full = project_points(cloud, gt);
  const double fill = static_cast<double>(full.filled_count()) / static_cast<double>(gt.rows * gt.cols);
  require(fill >= 0.9, ErrorCode::InvalidArgument, "full-resolution raster must be at least 90% filled");

  SrBenchmarkReport report;
  report.ground_truth = propagate_fista(full, SrParams::defaults_for(full)).image;
  const auto [lo, hi] = std::minmax_element(report.ground_truth.values().begin(), report.ground_truth.values().end());
  const double peak = *hi - *lo > 0.0 ? *hi - *lo : 1.0;

  for (const int factor : factors) {
    const SparseZImage sparse = project_points(subsample_stride(cloud, factor), gt);
    const auto score = [&](const char* name, const ZImage& img) {
      report.scores.push_back({name, factor, rmse_image(img, report.ground_truth), ssim(img, report.ground_truth, peak),
                               psnr(img, report.ground_truth, peak)});
    };
    score("SR", propagate_fista(sparse, SrParams::defaults_for(sparse)).image);
    score("NN", interp_nearest(sparse));
    score("bilinear", interp_bilinear(sparse));
  }
  return report;
}

}  // namespace srsm::sr
