#include "srsm/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cstdio>
#include <exception>
#include <iostream>
#include <mutex>
#include <thread>

#include "srsm/energy.hpp"
#include "srsm/io.hpp"

namespace srsm::pipeline {

namespace {

void require_input(const fs::path& p, const char* what) {
  if (p.empty()) fail(ErrorCode::ConfigError, std::string("no ") + what + " path configured");
  if (!fs::exists(p)) fail(ErrorCode::MissingInput, std::string("missing ") + what + ": " + p.string());
}

template <class T>
Grid<T> crop(const Grid<T>& g, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  Grid<T> out(rows, cols);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) out(r, c) = g(r0 + r, c0 + c);
  }
  return out;
}

SparseZImage crop_sparse(const SparseZImage& s, const Tile& t) {
  SparseZImage out(t.ext_rows, t.ext_cols);
  for (const auto& [idx, z] : s.filled()) {
    const std::size_t r = idx / s.cols();
    const std::size_t c = idx % s.cols();
    if (r >= t.ext_row0 && r < t.ext_row0 + t.ext_rows && c >= t.ext_col0 && c < t.ext_col0 + t.ext_cols) {
      out.set(r - t.ext_row0, c - t.ext_col0, z);
    }
  }
  return out;
}

sr::SrParams effective_sr_params(const config::PipelineConfig& cfg, const SparseZImage& sparse) {
  sr::SrParams p = cfg.sr;
  if (cfg.auto_lambda) p.lambda = sr::SrParams::defaults_for(sparse).lambda;
  return p;
}

}  // namespace

void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t workers = std::clamp<std::size_t>(jobs, 1, n);
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::exception_ptr first_error;
  std::size_t first_index = n;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < first_index) {
          first_index = i;
          first_error = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<Tile> make_tiles(std::size_t rows, std::size_t cols, std::size_t tile_size, std::size_t halo) {
  require(tile_size > 0, ErrorCode::InvalidArgument, "tile_size must be positive");
  std::vector<Tile> tiles;
  for (std::size_t r0 = 0; r0 < rows; r0 += tile_size) {
    for (std::size_t c0 = 0; c0 < cols; c0 += tile_size) {
      Tile t;
      t.row0 = r0;
      t.col0 = c0;
      t.rows = std::min(tile_size, rows - r0);
      t.cols = std::min(tile_size, cols - c0);
      t.ext_row0 = r0 > halo ? r0 - halo : 0;
      t.ext_col0 = c0 > halo ? c0 - halo : 0;
      t.ext_rows = std::min(rows, r0 + t.rows + halo) - t.ext_row0;
      t.ext_cols = std::min(cols, c0 + t.cols + halo) - t.ext_col0;
      tiles.push_back(t);
    }
  }
  return tiles;
}

BinaryMask seam_mask(std::size_t rows, std::size_t cols, const std::vector<Tile>& tiles, std::size_t halo) {
  BinaryMask mask(rows, cols, 0);
  auto near = [halo](std::size_t p, std::size_t b) { return p + halo >= b && p < b + halo; };
  for (const auto& t : tiles) {
    for (std::size_t r = 0; r < rows; ++r) {
      for (std::size_t c = 0; c < cols; ++c) {
        if ((t.row0 > 0 && near(r, t.row0)) || (t.col0 > 0 && near(c, t.col0))) mask(r, c) = 1;
      }
    }
  }
  return mask;
}

TiledResult tiled_superres(const SparseZImage& sparse, const sr::SrParams& params, std::size_t tile_size,
                           std::size_t halo, std::size_t jobs) {
  TiledResult out;
  out.tiles = make_tiles(sparse.rows(), sparse.cols(), tile_size, halo);
  if (out.tiles.size() == 1) {
    auto res = sr::propagate_fista(sparse, params);
    out.image = std::move(res.image);
    out.traces.push_back(std::move(res.trace));
    return out;
  }

  std::vector<sr::SrResult> parts(out.tiles.size());
  parallel_for(out.tiles.size(), jobs, [&](std::size_t k) {
    const Tile& t = out.tiles[k];
    const SparseZImage sub = crop_sparse(sparse, t);
    if (sub.empty()) {
      std::cerr << "warning: tile " << k << " holds no points; filled with zeros\n";
      parts[k].image = ZImage(t.ext_rows, t.ext_cols, 0.0);
      return;
    }
    parts[k] = sr::propagate_fista(sub, params);
  });

  ZImage img(sparse.rows(), sparse.cols(), 0.0);
  for (std::size_t k = 0; k < out.tiles.size(); ++k) {
    const Tile& t = out.tiles[k];
    const std::size_t dr = t.row0 - t.ext_row0;
    const std::size_t dc = t.col0 - t.ext_col0;
    for (std::size_t r = 0; r < t.rows; ++r) {
      for (std::size_t c = 0; c < t.cols; ++c) img(t.row0 + r, t.col0 + c) = parts[k].image(dr + r, dc + c);
    }
    out.traces.push_back(std::move(parts[k].trace));
  }
  out.image = std::move(img);
  return out;
}

GeoTransform resolve_geotransform(const config::PipelineConfig& cfg) {
  if (cfg.geo) return *cfg.geo;
  const fs::path side = io::sidecar_path(dsm_path(cfg));
  if (fs::exists(side)) return io::read_geotransform(side);
  fail(ErrorCode::ConfigError, "no [geo] section and no DSM sidecar to take the geotransform from");
}

fs::path dsm_path(const config::PipelineConfig& cfg) { return cfg.out_dir / "dsm.zimg"; }
fs::path footprints_path(const config::PipelineConfig& cfg) { return cfg.out_dir / "footprints.geojson"; }

SuperresOutput run_superres(const config::PipelineConfig& cfg) {
  cfg.validate();
  require_input(cfg.cloud, "point cloud");
  SuperresOutput out;
  out.gt = resolve_geotransform(cfg);
  const PointCloud3D cloud = io::read_xyz(cfg.cloud);
  const SparseZImage sparse = sr::project_points(cloud, out.gt);
  out.result = tiled_superres(sparse, effective_sr_params(cfg, sparse), cfg.tile_size, cfg.halo, cfg.jobs);
  return out;
}

void cmd_superres(const config::PipelineConfig& cfg) {
  const SuperresOutput res = run_superres(cfg);
  io::write_zimg_geo(dsm_path(cfg), res.result.image, res.gt);
  io::write_pgm16(cfg.out_dir / "dsm.pgm", res.result.image);
  for (std::size_t k = 0; k < res.result.traces.size(); ++k) {
    io::write_trace_csv(cfg.out_dir / ("sr_trace_tile" + std::to_string(k) + ".csv"), res.result.traces[k]);
  }
}

std::optional<BinaryMask> load_vegetation_mask(const config::PipelineConfig& cfg, const GeoTransform& gt) {
  const auto red = cfg.bands.find("red");
  const auto nir = cfg.bands.find("nir");
  if (red == cfg.bands.end() || nir == cfg.bands.end()) return std::nullopt;
  scene::MultiSpectralImage ms;
  ms.set_band("red", io::read_pgm(red->second));
  ms.set_band("nir", io::read_pgm(nir->second));
  require(ms.rows() == gt.rows && ms.cols() == gt.cols, ErrorCode::DimMismatch, "image bands do not match the raster");
  return scene::vegetation_mask(scene::ndvi(ms), cfg.ndvi_threshold);
}

std::vector<BuildingResult> extract_buildings(const ZImage& dsm, const GeoTransform& gt, const BinaryMask* veg_mask,
                                              const config::PipelineConfig& cfg) {
  const scene::Candidates cand = scene::preliminary_extract(dsm, gt, cfg.min_height, cfg.min_area, veg_mask);
  std::vector<BuildingResult> results(cand.boundaries.size());
  parallel_for(results.size(), cfg.jobs, [&](std::size_t i) {
    BuildingResult& br = results[i];
    br.index = i;
    const BinaryMask& m = cand.masks[i];
    std::size_t rmin = m.rows(), rmax = 0, cmin = m.cols(), cmax = 0;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      for (std::size_t c = 0; c < m.cols(); ++c) {
        if (!m(r, c)) continue;
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
      }
    }
    const std::size_t pad = cfg.crop_pad;
    const std::size_t r0 = rmin > pad ? rmin - pad : 0;
    const std::size_t c0 = cmin > pad ? cmin - pad : 0;
    const std::size_t r1 = std::min(dsm.rows(), rmax + 1 + pad);
    const std::size_t c1 = std::min(dsm.cols(), cmax + 1 + pad);
    try {
      const ZImage z = crop(dsm, r0, c0, r1 - r0, c1 - c0);
      const BinaryMask mask = crop(m, r0, c0, r1 - r0, c1 - c0);
      const Contour init = cand.boundaries[i].translated(-static_cast<double>(r0), -static_cast<double>(c0));
      const VectorField field = energy::external_field(z, cfg.snake);
      snake::EvolveResult res = snake::evolve(init, field, &mask, cfg.snake);
      br.footprint = res.contour.translated(static_cast<double>(r0), static_cast<double>(c0));
      br.history = std::move(res.history);
    } catch (const Error& e) {
      br.failure = e.code();
      std::cerr << "warning: building " << i << " skipped: code=" << to_string(e.code()) << " message=" << e.what()
                << '\n';
    }
  });
  return results;
}

void cmd_extract(const config::PipelineConfig& cfg) {
  cfg.validate();
  for (const auto& [name, p] : cfg.bands) require_input(p, ("band " + name).c_str());

  ZImage dsm;
  GeoTransform gt;
  if (fs::exists(dsm_path(cfg))) {
    dsm = io::read_zimg(dsm_path(cfg));
    gt = io::read_geotransform(io::sidecar_path(dsm_path(cfg)));
    require(dsm.rows() == gt.rows && dsm.cols() == gt.cols, ErrorCode::DimMismatch, "DSM does not match its sidecar");
  } else {
    SuperresOutput res = run_superres(cfg);
    dsm = std::move(res.result.image);
    gt = res.gt;
  }

  const auto veg = load_vegetation_mask(cfg, gt);
  const auto results = extract_buildings(dsm, gt, veg ? &*veg : nullptr, cfg);

  std::vector<Contour> footprints;
  std::optional<ErrorCode> first_failure;
  for (const auto& br : results) {
    if (br.footprint) footprints.push_back(*br.footprint);
    else if (!first_failure) first_failure = br.failure;
  }
  if (!results.empty() && footprints.empty()) {
    fail(first_failure.value_or(ErrorCode::Diverged), "every building failed to converge");
  }

  io::write_geojson(footprints_path(cfg), footprints, gt, io::CoordSpace::World);
  for (const auto& br : results) {
    if (!br.footprint) continue;
    io::write_history_csv(cfg.out_dir / "history" / ("building_" + std::to_string(br.index) + ".csv"), br.history);
  }
}

eval::EvalReport cmd_evaluate(const config::PipelineConfig& cfg) {
  require_input(cfg.truth, "ground truth");
  require_input(footprints_path(cfg), "footprints");
  const GeoTransform gt = resolve_geotransform(cfg);
  const auto extracted = io::read_geojson(footprints_path(cfg), gt);
  const auto truth = io::read_geojson(cfg.truth, gt);
  const eval::EvalReport report = eval::evaluate(extracted, truth, gt);
  io::write_text(cfg.out_dir / "eval_report.csv", eval::report_csv(report));
  io::write_text(cfg.out_dir / "eval_report.txt", eval::report_table(report));
  return report;
}

void cmd_synth(const scene::SceneSpec& spec, std::uint64_t seed, const fs::path& out_dir) {
  const scene::SyntheticScene s = scene::synth_scene(spec, seed);
  io::write_xyz(out_dir / "cloud.xyz", s.cloud);
  io::write_geojson(out_dir / "truth.geojson", s.footprints, s.gt, io::CoordSpace::World);
  io::write_zimg_geo(out_dir / "truth_z.zimg", s.truth_z, s.gt);

  config::PipelineConfig cfg;
  cfg.cloud = out_dir / "cloud.xyz";
  cfg.truth = out_dir / "truth.geojson";
  cfg.out_dir = out_dir / "out";
  cfg.geo = s.gt;
  for (const auto& [name, band] : s.image.bands()) {
    const fs::path p = out_dir / ("band_" + name + ".pgm");
    io::write_band_pgm(p, band);
    cfg.bands[name] = p;
  }
  io::write_text(out_dir / "scene.ini", config::scene_spec_to_ini(spec));
  io::write_text(out_dir / "pipeline.ini", config::pipeline_config_to_ini(cfg, out_dir));
}

sr::SrBenchmarkReport cmd_bench_sr(const config::PipelineConfig& cfg) {
  cfg.validate();
  require_input(cfg.cloud, "point cloud");
  const GeoTransform gt = resolve_geotransform(cfg);
  const PointCloud3D cloud = io::read_xyz(cfg.cloud);
  sr::SrBenchmarkReport report = sr::sr_benchmark(cloud, gt, cfg.bench_factors);

  std::string csv = "method,factor,rmse,ssim,psnr\n";
  char line[160];
  for (const auto& s : report.scores) {
    std::snprintf(line, sizeof line, "%s,%d,%.6f,%.6f,%.4f\n", s.method.c_str(), s.factor, s.rmse, s.ssim, s.psnr);
    csv += line;
  }
  io::write_text(cfg.out_dir / "bench_sr.csv", csv);
  return report;
}

int exit_code_for(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConfigError:
    case ErrorCode::InvalidArgument:
    case ErrorCode::FormatError:
    case ErrorCode::DimMismatch:
      return 2;
    case ErrorCode::MissingInput:
    case ErrorCode::MissingBand:
    case ErrorCode::IoError:
      return 3;
    case ErrorCode::EmptyCloud:
    case ErrorCode::EmptySparse:
    case ErrorCode::NonFinite:
    case ErrorCode::Unstable:
    case ErrorCode::SingularOperator:
    case ErrorCode::DegenerateNormal:
    case ErrorCode::Diverged:
    case ErrorCode::Collapsed:
      return 4;
  }
  return 4;
}

}  // namespace srsm::pipeline
