#include <cmath>
#include <random>

#include "srsm/geometry.hpp"
#include "srsm/scene.hpp"

namespace srsm::scene {

void SceneSpec::validate() const {
  require(width > 0.0 && height > 0.0 && pixel_size > 0.0, ErrorCode::InvalidArgument, "scene extent and pixel size must be > 0");
  require(density > 0.0, ErrorCode::InvalidArgument, "point density must be > 0");
  require(noise_std >= 0.0, ErrorCode::InvalidArgument, "noise std must be >= 0");
  for (const auto& b : boxes) {
    require(b.height > 0.0, ErrorCode::InvalidArgument, "box height must be > 0");
    require(b.polygon.size() >= 3, ErrorCode::InvalidArgument, "box polygon needs at least 3 vertices");
  }
  for (const auto& t : trees) require(t.radius > 0.0 && t.height > 0.0, ErrorCode::InvalidArgument, "tree radius and height must be > 0");
}

GeoTransform SceneSpec::geotransform() const {
  GeoTransform gt{origin_x, origin_y, pixel_size, static_cast<std::size_t>(std::llround(height / pixel_size)),
                  static_cast<std::size_t>(std::llround(width / pixel_size))};
  gt.validate();
  return gt;
}

namespace {

enum class Cover { Ground, Building, Tree };

struct Surface {
  double z;
  Cover cover;
};

class SceneModel {
 public:
  explicit SceneModel(const SceneSpec& spec) : spec_(spec) {
    for (const auto& b : spec.boxes) {
      std::vector<PixelPoint> poly;
      for (const auto& p : b.polygon) poly.push_back({p.y, p.x});
      polys_.push_back(std::move(poly));
    }
  }

  Surface at(double x, double y) const {
    Surface s{spec_.ground, Cover::Ground};
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (geometry::point_in_polygon(polys_[k], y, x) && spec_.ground + spec_.boxes[k].height > s.z) {
        s = {spec_.ground + spec_.boxes[k].height, Cover::Building};
      }
    }
    for (const auto& t : spec_.trees) {
      const double d = std::hypot(x - t.center.x, y - t.center.y);
      if (d < t.radius) {
        const double z = spec_.ground + t.height * std::sqrt(1.0 - (d * d) / (t.radius * t.radius));
        if (z > s.z) s = {z, Cover::Tree};
      }
    }
    return s;
  }

 private:
  const SceneSpec& spec_;
  std::vector<std::vector<PixelPoint>> polys_;  // (row = y, col = x) in world meters
};

}  // namespace

SyntheticScene synth_scene(const SceneSpec& spec, std::uint64_t seed) {
  spec.validate();
  SyntheticScene out;
  out.gt = spec.geotransform();
  const SceneModel model(spec);

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> jitter(-0.45, 0.45);
  std::normal_distribution<double> noise(0.0, spec.noise_std > 0.0 ? spec.noise_std : 1.0);

  const double spacing = 1.0 / std::sqrt(spec.density);
  const auto nx = static_cast<std::size_t>(std::floor(spec.width / spacing + 1e-9));
  const auto ny = static_cast<std::size_t>(std::floor(spec.height / spacing + 1e-9));
  std::vector<Point3> points;
  points.reserve(nx * ny);
  for (std::size_t j = 0; j < ny; ++j) {
    for (std::size_t i = 0; i < nx; ++i) {
      const double x = spec.origin_x + (static_cast<double>(i) + 0.5 + jitter(rng)) * spacing;
      const double y = spec.origin_y - (static_cast<double>(j) + 0.5 + jitter(rng)) * spacing;
      double z = model.at(x, y).z;
      if (spec.noise_std > 0.0) z += noise(rng);
      points.push_back({x, y, z});
    }
  }
  out.cloud = PointCloud3D(std::move(points));

  const GeoTransform& gt = out.gt;
  out.truth_z = ZImage(gt.rows, gt.cols);
  ScalarField red(gt.rows, gt.cols), nir(gt.rows, gt.cols), green(gt.rows, gt.cols), blue(gt.rows, gt.cols);
  for (std::size_t r = 0; r < gt.rows; ++r) {
    for (std::size_t c = 0; c < gt.cols; ++c) {
      const auto w = pixel_to_world(gt, static_cast<double>(r) + 0.5, static_cast<double>(c) + 0.5);
      const Surface s = model.at(w.x, w.y);
      out.truth_z(r, c) = s.z;
      // reflectances chosen so NDVI is ~0.08 on roofs, ~0.17 on bare ground, ~0.82 on trees
      switch (s.cover) {
        case Cover::Building: red(r, c) = 0.30, nir(r, c) = 0.35, green(r, c) = 0.28, blue(r, c) = 0.27; break;
        case Cover::Tree: red(r, c) = 0.05, nir(r, c) = 0.50, green(r, c) = 0.12, blue(r, c) = 0.04; break;
        case Cover::Ground: red(r, c) = 0.20, nir(r, c) = 0.28, green(r, c) = 0.18, blue(r, c) = 0.15; break;
      }
    }
  }
  out.image.set_band("red", std::move(red));
  out.image.set_band("nir", std::move(nir));
  out.image.set_band("green", std::move(green));
  out.image.set_band("blue", std::move(blue));

  for (const auto& b : spec.boxes) out.footprints.push_back(world_polygon_to_contour(b.polygon, gt));
  return out;
}

SceneSpec standard_two_box_scene() {
  SceneSpec s;
  s.origin_x = 0.0;
  s.origin_y = 64.0;
  s.width = 64.0;
  s.height = 64.0;
  s.pixel_size = 0.5;
  s.ground = 100.0;
  s.density = 4.0;
  s.boxes.push_back({{{10.0, 54.0}, {30.0, 54.0}, {30.0, 34.0}, {10.0, 34.0}}, 10.0});
  s.boxes.push_back({{{38.0, 24.0}, {56.0, 24.0}, {56.0, 8.0}, {38.0, 8.0}}, 6.0});
  return s;
}

}  // namespace srsm::scene
