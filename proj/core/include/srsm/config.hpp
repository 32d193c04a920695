#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srsm/scene.hpp"
#include "srsm/superres.hpp"
#include "srsm/types.hpp"

namespace srsm::config {

namespace fs = std::filesystem;

/// Declarative "key = value" text with [section] headers. Sections may repeat.
struct IniSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  std::optional<std::string> get(const std::string& key) const;
};

struct IniDocument {
  std::vector<IniSection> sections;

  std::vector<const IniSection*> all(const std::string& name) const;
  const IniSection* first(const std::string& name) const;
};

IniDocument parse_ini(const std::string& text);

scene::SceneSpec parse_scene_spec(const std::string& text);
scene::SceneSpec load_scene_spec(const fs::path& path);
std::string scene_spec_to_ini(const scene::SceneSpec& spec);

struct PipelineConfig {
  fs::path cloud;
  fs::path truth;
  fs::path out_dir = "out";
  std::map<std::string, fs::path> bands;  // band name -> PGM path
  std::optional<GeoTransform> geo;

  sr::SrParams sr;
  bool auto_lambda = true;  // derive lambda from the constrained values

  SnakeParams snake;

  double min_height = 2.5;
  double min_area = 10.0;
  double ndvi_threshold = 0.3;

  std::size_t tile_size = 256;
  std::size_t jobs = 1;
  std::size_t halo = 16;
  std::size_t crop_pad = 16;
  std::vector<int> bench_factors{2, 4, 8};

  void validate() const;
};

/// Relative paths in the file resolve against the config file's directory.
PipelineConfig load_pipeline_config(const fs::path& path);
PipelineConfig parse_pipeline_config(const std::string& text, const fs::path& base_dir);
/// Paths are written relative to `base_dir` when they lie beneath it.
std::string pipeline_config_to_ini(const PipelineConfig& cfg, const fs::path& base_dir);

}  // namespace srsm::config
