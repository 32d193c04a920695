#include <json.hpp>

#include "srsm/io.hpp"

namespace srsm::io {

using nlohmann::json;

std::string footprints_to_geojson(const std::vector<Contour>& contours, const GeoTransform& gt, CoordSpace space) {
  json features = json::array();
  for (std::size_t i = 0; i < contours.size(); ++i) {
    json ring = json::array();
    const auto push = [&](const PixelPoint& p) {
      if (space == CoordSpace::World) {
        const auto w = pixel_to_world(gt, p.row, p.col);
        ring.push_back({w.x, w.y});
      } else {
        ring.push_back({p.col, p.row});
      }
    };
    for (const auto& p : contours[i].points()) push(p);
    push(contours[i][0]);  // GeoJSON rings repeat the first position
    features.push_back({
        {"type", "Feature"},
        {"properties", {{"id", i}, {"coords", space == CoordSpace::World ? "world" : "pixel"}}},
        {"geometry", {{"type", "Polygon"}, {"coordinates", json::array({ring})}}},
    });
  }
  const json fc = {{"type", "FeatureCollection"}, {"features", features}};
  return fc.dump(1) + "\n";
}

void write_geojson(const fs::path& path, const std::vector<Contour>& contours, const GeoTransform& gt, CoordSpace space) {
  write_text(path, footprints_to_geojson(contours, gt, space));
}

std::vector<Contour> read_geojson(const fs::path& path, const GeoTransform& gt) {
  json doc;
  try {
    doc = json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    fail(ErrorCode::FormatError, path.string() + ": " + e.what());
  }
  if (doc.value("type", "") != "FeatureCollection" || !doc.contains("features")) {
    fail(ErrorCode::FormatError, path.string() + ": expected a FeatureCollection");
  }
  std::vector<Contour> out;
  for (const auto& f : doc["features"]) {
    const auto& geom = f.at("geometry");
    if (geom.value("type", "") != "Polygon") fail(ErrorCode::FormatError, path.string() + ": only Polygon geometries are supported");
    std::string coords = "world";
    if (f.contains("properties") && f["properties"].is_object()) coords = f["properties"].value("coords", "world");
    const auto& ring = geom.at("coordinates").at(0);
    std::vector<PixelPoint> pts;
    for (const auto& pos : ring) {
      const double a = pos.at(0).get<double>();
      const double b = pos.at(1).get<double>();
      pts.push_back(coords == "pixel" ? PixelPoint{b, a} : world_to_pixel(gt, a, b));
    }
    if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
    out.emplace_back(std::move(pts));
  }
  return out;
}

}  // namespace srsm::io
