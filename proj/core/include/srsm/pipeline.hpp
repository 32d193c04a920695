#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <vector>

#include "srsm/config.hpp"
#include "srsm/error.hpp"
#include "srsm/evaluation.hpp"
#include "srsm/scene.hpp"
#include "srsm/snake.hpp"
#include "srsm/superres.hpp"

namespace srsm::pipeline {

namespace fs = std::filesystem;

/// Runs fn(0..n-1) on up to `jobs` threads. Work items are claimed in index order;
/// the first exception (lowest index) is rethrown after all workers finish.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn);

/// A tile's core window and the halo-extended window it is solved on.
struct Tile {
  std::size_t row0 = 0, col0 = 0, rows = 0, cols = 0;
  std::size_t ext_row0 = 0, ext_col0 = 0, ext_rows = 0, ext_cols = 0;
};

std::vector<Tile> make_tiles(std::size_t rows, std::size_t cols, std::size_t tile_size, std::size_t halo);

/// Pixels within `halo` of an internal tile boundary.
BinaryMask seam_mask(std::size_t rows, std::size_t cols, const std::vector<Tile>& tiles, std::size_t halo);

struct TiledResult {
  ZImage image;
  std::vector<Tile> tiles;
  std::vector<sr::SrTrace> traces;  // one per tile, tile order
};

/// Solves each halo-extended tile independently with the same parameters and keeps each
/// tile's core window; the halo only supplies context.
TiledResult tiled_superres(const SparseZImage& sparse, const sr::SrParams& params, std::size_t tile_size,
                           std::size_t halo, std::size_t jobs);

GeoTransform resolve_geotransform(const config::PipelineConfig& cfg);

struct SuperresOutput {
  GeoTransform gt;
  TiledResult result;
};

SuperresOutput run_superres(const config::PipelineConfig& cfg);

struct BuildingResult {
  std::size_t index = 0;
  std::optional<Contour> footprint;  // full-raster pixel coordinates
  std::vector<snake::SnakeState> history;
  std::optional<ErrorCode> failure;
};

std::vector<BuildingResult> extract_buildings(const ZImage& dsm, const GeoTransform& gt, const BinaryMask* veg_mask,
                                              const config::PipelineConfig& cfg);

/// Vegetation mask from the configured red and nir bands, when both are present.
std::optional<BinaryMask> load_vegetation_mask(const config::PipelineConfig& cfg, const GeoTransform& gt);

fs::path dsm_path(const config::PipelineConfig& cfg);
fs::path footprints_path(const config::PipelineConfig& cfg);

void cmd_superres(const config::PipelineConfig& cfg);
void cmd_extract(const config::PipelineConfig& cfg);
eval::EvalReport cmd_evaluate(const config::PipelineConfig& cfg);
/// Writes cloud.xyz, truth.geojson, truth_z.zimg, band_<name>.pgm and pipeline.ini into `out_dir`.
void cmd_synth(const scene::SceneSpec& spec, std::uint64_t seed, const fs::path& out_dir);
sr::SrBenchmarkReport cmd_bench_sr(const config::PipelineConfig& cfg);

/// Process exit status for a module error: 2 config, 3 missing input, 4 numerical failure.
int exit_code_for(ErrorCode code) noexcept;

}  // namespace srsm::pipeline
