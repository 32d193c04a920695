// srsm: sparse LiDAR super-resolution and snake-based footprint extraction.
#include <CLI11.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "srsm/config.hpp"
#include "srsm/pipeline.hpp"

namespace fs = std::filesystem;
using namespace srsm;

namespace {

struct Flags {
  std::string config;
  std::string out;
  std::optional<std::size_t> tile_size;
  std::optional<std::size_t> jobs;
  std::uint64_t seed = 1;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "pipeline config file")->required();
  cmd->add_option("--out", f.out, "output directory (overrides the config)");
  cmd->add_option("--tile-size", f.tile_size, "tile size in pixels, >= 64");
  cmd->add_option("--jobs", f.jobs, "worker threads");
}

config::PipelineConfig load(const Flags& f) {
  config::PipelineConfig cfg = config::load_pipeline_config(f.config);
  if (!f.out.empty()) cfg.out_dir = f.out;
  if (f.tile_size) cfg.tile_size = *f.tile_size;
  if (f.jobs) cfg.jobs = *f.jobs;
  cfg.validate();
  return cfg;
}

int report(ErrorCode code, const std::string& message) {
  std::cerr << "error: code=" << to_string(code) << " message=" << message << '\n';
  return pipeline::exit_code_for(code);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Super-resolution snake model for building footprint extraction"};
  app.require_subcommand(1);
  Flags f;

  auto* superres = app.add_subcommand("superres", "propagate the point cloud to a dense DSM (out/dsm.zimg)");
  add_run_flags(superres, f);
  auto* extract = app.add_subcommand("extract", "extract footprints from the DSM (out/footprints.geojson)");
  add_run_flags(extract, f);
  auto* evaluate = app.add_subcommand("evaluate", "score footprints against ground truth (out/eval_report.*)");
  add_run_flags(evaluate, f);
  auto* bench = app.add_subcommand("bench-sr", "compare SR with nearest and bilinear interpolation (out/bench_sr.csv)");
  add_run_flags(bench, f);

  auto* synth = app.add_subcommand("synth", "write a synthetic scene fixture directory");
  synth->add_option("--config", f.config, "scene spec file (default: the standard two-box scene)");
  synth->add_option("--seed", f.seed, "random seed");
  synth->add_option("--out", f.out, "fixture directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return pipeline::exit_code_for(ErrorCode::ConfigError);
  }

  try {
    if (synth->parsed()) {
      const auto spec = f.config.empty() ? scene::standard_two_box_scene() : config::load_scene_spec(f.config);
      pipeline::cmd_synth(spec, f.seed, f.out);
    } else if (superres->parsed()) {
      pipeline::cmd_superres(load(f));
    } else if (extract->parsed()) {
      pipeline::cmd_extract(load(f));
    } else if (evaluate->parsed()) {
      std::cout << eval::report_table(pipeline::cmd_evaluate(load(f)));
    } else if (bench->parsed()) {
      pipeline::cmd_bench_sr(load(f));
    }
  } catch (const Error& e) {
    return report(e.code(), e.what());
  } catch (const fs::filesystem_error& e) {
    return report(ErrorCode::IoError, e.what());
  } catch (const std::exception& e) {
    std::cerr << "error: code=Internal message=" << e.what() << '\n';
    return 4;
  }
  return 0;
}
