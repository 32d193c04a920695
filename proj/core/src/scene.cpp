#include "srsm/scene.hpp"

#include <algorithm>
#include <cmath>

#include "srsm/geometry.hpp"

namespace srsm::scene {

void MultiSpectralImage::set_band(const std::string& name, ScalarField band) {
  if (bands_.empty()) {
    rows_ = band.rows();
    cols_ = band.cols();
  } else {
    require(band.rows() == rows_ && band.cols() == cols_, ErrorCode::DimMismatch, "all bands must share dims");
  }
  bands_[name] = std::move(band);
}

const ScalarField& MultiSpectralImage::band(const std::string& name) const {
  const auto it = bands_.find(name);
  if (it == bands_.end()) fail(ErrorCode::MissingBand, "missing band: " + name);
  return it->second;
}

ScalarField ndvi(const MultiSpectralImage& ms) {
  const ScalarField& nir = ms.band("nir");
  const ScalarField& red = ms.band("red");
  ScalarField out(nir.rows(), nir.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double den = nir[i] + red[i];
    out[i] = den == 0.0 ? 0.0 : (nir[i] - red[i]) / den;
  }
  return out;
}

BinaryMask vegetation_mask(const ScalarField& ndvi_field, double threshold) {
  BinaryMask out(ndvi_field.rows(), ndvi_field.cols(), 0);
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = ndvi_field[i] > threshold ? 1 : 0;
  return out;
}

BinaryMask mask_from_contour(const Contour& c, std::size_t rows, std::size_t cols) {
  return geometry::rasterize(c, rows, cols);
}

namespace {

struct AxisWeight {
  std::size_t lo;
  std::size_t hi;
  double t;
};

// Linear weights between block centers along one axis; constant beyond the outer centers.
AxisWeight axis_weight(double coord, const std::vector<double>& centers) {
  if (centers.size() == 1 || coord <= centers.front()) return {0, 0, 0.0};
  if (coord >= centers.back()) return {centers.size() - 1, centers.size() - 1, 0.0};
  std::size_t k = 0;
  while (centers[k + 1] < coord) ++k;
  return {k, k + 1, (coord - centers[k]) / (centers[k + 1] - centers[k])};
}

std::vector<double> block_centers(std::size_t extent, std::size_t block) {
  std::vector<double> centers;
  for (std::size_t start = 0; start < extent; start += block) {
    const std::size_t end = std::min(extent, start + block);
    centers.push_back(0.5 * static_cast<double>(start + end));
  }
  return centers;
}

}  // namespace

ZImage estimate_terrain(const ZImage& z, std::size_t block, double percentile) {
  require(block >= 1 && percentile >= 0.0 && percentile <= 1.0, ErrorCode::InvalidArgument, "bad terrain block settings");
  const auto row_centers = block_centers(z.rows(), block);
  const auto col_centers = block_centers(z.cols(), block);
  Grid<double> ground(row_centers.size(), col_centers.size());
  std::vector<double> values;
  for (std::size_t br = 0; br < ground.rows(); ++br) {
    for (std::size_t bc = 0; bc < ground.cols(); ++bc) {
      values.clear();
      for (std::size_t r = br * block; r < std::min(z.rows(), (br + 1) * block); ++r) {
        for (std::size_t c = bc * block; c < std::min(z.cols(), (bc + 1) * block); ++c) values.push_back(z(r, c));
      }
      const auto k = static_cast<std::size_t>(std::floor(percentile * static_cast<double>(values.size() - 1)));
      std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(k), values.end());
      ground(br, bc) = values[k];
    }
  }
  ZImage out(z.rows(), z.cols());
  for (std::size_t r = 0; r < z.rows(); ++r) {
    const AxisWeight wr = axis_weight(static_cast<double>(r) + 0.5, row_centers);
    for (std::size_t c = 0; c < z.cols(); ++c) {
      const AxisWeight wc = axis_weight(static_cast<double>(c) + 0.5, col_centers);
      const double top = (1.0 - wc.t) * ground(wr.lo, wc.lo) + wc.t * ground(wr.lo, wc.hi);
      const double bottom = (1.0 - wc.t) * ground(wr.hi, wc.lo) + wc.t * ground(wr.hi, wc.hi);
      out(r, c) = (1.0 - wr.t) * top + wr.t * bottom;
    }
  }
  return out;
}

Candidates preliminary_extract(const ZImage& z, const GeoTransform& gt, double min_height, double min_area,
                               const BinaryMask* veg_mask) {
  gt.validate();
  require(gt.rows == z.rows() && gt.cols == z.cols(), ErrorCode::DimMismatch, "geotransform does not match z-image");
  for (const double v : z.values()) require(std::isfinite(v), ErrorCode::NonFinite, "z-image has non-finite values");
  if (veg_mask != nullptr) require(veg_mask->same_shape(z), ErrorCode::DimMismatch, "vegetation mask does not match z-image");

  const ZImage terrain = estimate_terrain(z);
  BinaryMask above(z.rows(), z.cols(), 0);
  for (std::size_t i = 0; i < z.size(); ++i) {
    const bool vegetated = veg_mask != nullptr && (*veg_mask)[i] != 0;
    above[i] = (z[i] - terrain[i] >= min_height && !vegetated) ? 1 : 0;
  }

  const Components comps = label_components(above);
  const double min_pixels = min_area / gt.pixel_area();
  std::vector<std::size_t> first_pixel(comps.sizes.size(), comps.labels.size());
  for (std::size_t i = 0; i < comps.labels.size(); ++i) {
    const auto label = comps.labels[i];
    if (label != 0 && first_pixel[label - 1] == comps.labels.size()) first_pixel[label - 1] = i;
  }

  Candidates out;
  BinaryMask claimed(z.rows(), z.cols(), 0);
  for (std::size_t k = 0; k < comps.sizes.size(); ++k) {
    if (static_cast<double>(comps.sizes[k]) < min_pixels) continue;
    const std::size_t seed = first_pixel[k];
    // a component lying in the hole of an earlier one is already covered by its filled mask
    if (claimed[seed]) continue;
    Contour boundary = trace_boundary(above, seed / z.cols(), seed % z.cols());
    BinaryMask filled = mask_from_contour(boundary, z.rows(), z.cols());
    for (std::size_t i = 0; i < filled.size(); ++i) {
      if (filled[i] && claimed[i]) filled[i] = 0;
      if (filled[i]) claimed[i] = 1;
    }
    out.boundaries.push_back(std::move(boundary));
    out.masks.push_back(std::move(filled));
  }
  return out;
}

Contour world_polygon_to_contour(const std::vector<WorldPoint>& poly, const GeoTransform& gt) {
  std::vector<PixelPoint> pts;
  pts.reserve(poly.size());
  for (const auto& p : poly) pts.push_back(world_to_pixel(gt, p.x, p.y));
  return Contour(std::move(pts));
}

std::vector<WorldPoint> contour_to_world(const Contour& c, const GeoTransform& gt) {
  std::vector<WorldPoint> out;
  out.reserve(c.size());
  for (const auto& p : c.points()) out.push_back(pixel_to_world(gt, p.row, p.col));
  return out;
}

}  // namespace srsm::scene
