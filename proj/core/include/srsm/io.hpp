#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "srsm/scene.hpp"
#include "srsm/snake.hpp"
#include "srsm/superres.hpp"
#include "srsm/types.hpp"

namespace srsm::io {

namespace fs = std::filesystem;

/// ASCII XYZ: one "x y z" triple per line; '#' starts a comment.
PointCloud3D read_xyz(const fs::path& path);
void write_xyz(const fs::path& path, const PointCloud3D& cloud);

/// ZIMG raster: 16-byte header ("ZIMG", u32 rows, u32 cols, u32 reserved = 0, little-endian)
/// followed by rows * cols little-endian float32 values, row-major.
void write_zimg(const fs::path& path, const Grid<double>& img);
Grid<double> read_zimg(const fs::path& path);

/// Sidecar path for a raster: "<path>.geo".
fs::path sidecar_path(const fs::path& raster);
void write_geotransform(const fs::path& path, const GeoTransform& gt);
GeoTransform read_geotransform(const fs::path& path);

/// Raster plus its geotransform sidecar.
void write_zimg_geo(const fs::path& path, const Grid<double>& img, const GeoTransform& gt);

/// Binary PGM (P5). Values are min-max scaled to the full range of the bit depth.
void write_pgm16(const fs::path& path, const Grid<double>& img);
void write_pgm8(const fs::path& path, const Grid<double>& img);
/// Reads an 8- or 16-bit P5 PGM, returning value / maxval.
Grid<double> read_pgm(const fs::path& path);

/// Reflectance band written as 16-bit PGM scaled by 65535 (values clamped to [0, 1]).
void write_band_pgm(const fs::path& path, const Grid<double>& band);

void write_trace_csv(const fs::path& path, const sr::SrTrace& trace);
void write_history_csv(const fs::path& path, const std::vector<snake::SnakeState>& history);

enum class CoordSpace { Pixel, World };

/// GeoJSON FeatureCollection of Polygon features. World coordinates are written as (x, y);
/// pixel coordinates as (col, row). The choice is recorded in each feature's "coords" property.
std::string footprints_to_geojson(const std::vector<Contour>& contours, const GeoTransform& gt, CoordSpace space);
void write_geojson(const fs::path& path, const std::vector<Contour>& contours, const GeoTransform& gt, CoordSpace space);
/// Returns contours in pixel coordinates regardless of the file's coordinate space.
std::vector<Contour> read_geojson(const fs::path& path, const GeoTransform& gt);

std::string read_text(const fs::path& path);
void write_text(const fs::path& path, const std::string& text);

}  // namespace srsm::io
