#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "srsm/types.hpp"

namespace srsm::scene {

/// Named reflectance bands of equal dims ("red", "nir", "green", "blue").
class MultiSpectralImage {
 public:
  void set_band(const std::string& name, ScalarField band);
  bool has_band(const std::string& name) const { return bands_.contains(name); }
  const ScalarField& band(const std::string& name) const;
  const std::map<std::string, ScalarField>& bands() const noexcept { return bands_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::map<std::string, ScalarField> bands_;
};

ScalarField ndvi(const MultiSpectralImage& ms);
BinaryMask vegetation_mask(const ScalarField& ndvi_field, double threshold);

/// Pixels whose centers lie inside the polygon (even-odd rule).
BinaryMask mask_from_contour(const Contour& c, std::size_t rows, std::size_t cols);

/// 4-connected component labels (0 = background, 1.. in raster-scan order of first pixel).
struct Components {
  Grid<std::uint32_t> labels;
  std::vector<std::size_t> sizes;  // sizes[k] is the pixel count of label k + 1
};
Components label_components(const BinaryMask& mask);

/// Outer boundary of the 4-connected component containing the seed, traced along pixel
/// edges with a Moore-neighbourhood turn rule. Vertices sit on pixel corners and
/// collinear runs are merged, so mask_from_contour reproduces the component with holes filled.
Contour trace_boundary(const BinaryMask& mask, std::size_t seed_row, std::size_t seed_col);

/// Blockwise low-percentile ground estimate, bilinearly blended between block centers.
ZImage estimate_terrain(const ZImage& z, std::size_t block = 32, double percentile = 0.05);

struct Candidates {
  std::vector<Contour> boundaries;  // initial snakes
  std::vector<BinaryMask> masks;    // filled components, pairwise disjoint
};

Candidates preliminary_extract(const ZImage& z, const GeoTransform& gt, double min_height, double min_area,
                               const BinaryMask* veg_mask = nullptr);

struct Footprint {
  std::vector<WorldPoint> polygon;  // world meters, closed implicitly
  double height = 0.0;
};

struct Tree {
  WorldPoint center;
  double radius = 0.0;
  double height = 0.0;
};

struct SceneSpec {
  double origin_x = 0.0;
  double origin_y = 0.0;
  double width = 64.0;   // meters
  double height = 64.0;  // meters
  double pixel_size = 0.5;
  double ground = 0.0;
  double density = 4.0;  // points per m^2
  double noise_std = 0.0;
  std::vector<Footprint> boxes;
  std::vector<Tree> trees;

  void validate() const;
  GeoTransform geotransform() const;
};

struct SyntheticScene {
  PointCloud3D cloud;
  ZImage truth_z;
  std::vector<Contour> footprints;  // pixel coordinates
  MultiSpectralImage image;
  GeoTransform gt;
};

SyntheticScene synth_scene(const SceneSpec& spec, std::uint64_t seed);

/// Two flat-roofed boxes on level ground, used by tests, benchmarks and the demo config.
SceneSpec standard_two_box_scene();

Contour world_polygon_to_contour(const std::vector<WorldPoint>& poly, const GeoTransform& gt);
std::vector<WorldPoint> contour_to_world(const Contour& c, const GeoTransform& gt);

}  // namespace srsm::scene
