#include "srsm/config.hpp"

#include <algorithm>
#include <charconv>
#include <iomanip>
#include <sstream>

#include "srsm/io.hpp"

namespace srsm::config {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const char* first = value.data();
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) fail(ErrorCode::ConfigError, "expected a number for '" + key + "', got '" + value + "'");
  return out;
}

std::size_t to_size(const std::string& key, const std::string& value) {
  std::size_t out = 0;
  const char* last = value.data() + value.size();
  const auto [ptr, ec] = std::from_chars(value.data(), last, out);
  if (ec != std::errc{} || ptr != last) fail(ErrorCode::ConfigError, "expected a non-negative integer for '" + key + "', got '" + value + "'");
  return out;
}

std::vector<double> to_doubles(const std::string& key, std::string value) {
  std::replace(value.begin(), value.end(), ',', ' ');
  std::istringstream is(value);
  std::vector<double> out;
  std::string tok;
  while (is >> tok) out.push_back(to_double(key, tok));
  return out;
}

std::vector<WorldPoint> to_polygon(const std::string& key, const std::string& value) {
  const auto nums = to_doubles(key, value);
  if (nums.size() % 2 != 0 || nums.size() < 6) fail(ErrorCode::ConfigError, "'" + key + "' needs at least 3 'x y' pairs");
  std::vector<WorldPoint> poly;
  for (std::size_t i = 0; i < nums.size(); i += 2) poly.push_back({nums[i], nums[i + 1]});
  return poly;
}

[[noreturn]] void unknown_key(const IniSection& s, const std::string& key) {
  fail(ErrorCode::ConfigError, "unknown key '" + key + "' in [" + s.name + "]");
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

fs::path resolve(const fs::path& base, const std::string& value) {
  const fs::path p(value);
  return p.is_absolute() ? p : base / p;
}

std::string relative_to(const fs::path& p, const fs::path& base) {
  if (p.empty()) return {};
  const auto rel = p.lexically_normal().lexically_relative(base.lexically_normal());
  if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  return p.generic_string();
}

}  // namespace

std::optional<std::string> IniSection::get(const std::string& key) const {
  for (auto it = entries.rbegin(); it != entries.rend(); ++it) {
    if (it->first == key) return it->second;
  }
  return std::nullopt;
}

std::vector<const IniSection*> IniDocument::all(const std::string& name) const {
  std::vector<const IniSection*> out;
  for (const auto& s : sections) {
    if (s.name == name) out.push_back(&s);
  }
  return out;
}

const IniSection* IniDocument::first(const std::string& name) const {
  for (const auto& s : sections) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

IniDocument parse_ini(const std::string& text) {
  IniDocument doc;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (const auto hash = raw.find_first_of("#;"); hash != std::string::npos) raw.erase(hash);
    const std::string line = trim(raw);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": unterminated section header");
      doc.sections.push_back({trim(line.substr(1, line.size() - 2)), {}});
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": expected 'key = value'");
    if (doc.sections.empty()) fail(ErrorCode::ConfigError, "line " + std::to_string(lineno) + ": key outside of a section");
    doc.sections.back().entries.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return doc;
}

scene::SceneSpec parse_scene_spec(const std::string& text) {
  const IniDocument doc = parse_ini(text);
  scene::SceneSpec spec;
  spec.boxes.clear();
  for (const auto& s : doc.sections) {
    if (s.name == "scene") {
      for (const auto& [k, v] : s.entries) {
        if (k == "origin_x") spec.origin_x = to_double(k, v);
        else if (k == "origin_y") spec.origin_y = to_double(k, v);
        else if (k == "width") spec.width = to_double(k, v);
        else if (k == "height") spec.height = to_double(k, v);
        else if (k == "pixel_size") spec.pixel_size = to_double(k, v);
        else if (k == "ground") spec.ground = to_double(k, v);
        else if (k == "density") spec.density = to_double(k, v);
        else if (k == "noise_std") spec.noise_std = to_double(k, v);
        else unknown_key(s, k);
      }
    } else if (s.name == "box") {
      scene::Footprint box;
      for (const auto& [k, v] : s.entries) {
        if (k == "polygon") box.polygon = to_polygon(k, v);
        else if (k == "height") box.height = to_double(k, v);
        else unknown_key(s, k);
      }
      spec.boxes.push_back(std::move(box));
    } else if (s.name == "tree") {
      scene::Tree tree;
      for (const auto& [k, v] : s.entries) {
        if (k == "center") {
          const auto c = to_doubles(k, v);
          if (c.size() != 2) fail(ErrorCode::ConfigError, "tree center needs 'x y'");
          tree.center = {c[0], c[1]};
        } else if (k == "radius") {
          tree.radius = to_double(k, v);
        } else if (k == "height") {
          tree.height = to_double(k, v);
        } else {
          unknown_key(s, k);
        }
      }
      spec.trees.push_back(tree);
    } else {
      fail(ErrorCode::ConfigError, "unknown section [" + s.name + "] in scene spec");
    }
  }
  try {
    spec.validate();
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, e.what());
  }
  return spec;
}

scene::SceneSpec load_scene_spec(const fs::path& path) { return parse_scene_spec(io::read_text(path)); }

std::string scene_spec_to_ini(const scene::SceneSpec& spec) {
  std::ostringstream os;
  os << "[scene]\norigin_x = " << num(spec.origin_x) << "\norigin_y = " << num(spec.origin_y) << "\nwidth = " << num(spec.width)
     << "\nheight = " << num(spec.height) << "\npixel_size = " << num(spec.pixel_size) << "\nground = " << num(spec.ground)
     << "\ndensity = " << num(spec.density) << "\nnoise_std = " << num(spec.noise_std) << '\n';
  for (const auto& b : spec.boxes) {
    os << "\n[box]\npolygon =";
    for (std::size_t i = 0; i < b.polygon.size(); ++i) {
      os << (i == 0 ? " " : ", ") << num(b.polygon[i].x) << ' ' << num(b.polygon[i].y);
    }
    os << "\nheight = " << num(b.height) << '\n';
  }
  for (const auto& t : spec.trees) {
    os << "\n[tree]\ncenter = " << num(t.center.x) << ' ' << num(t.center.y) << "\nradius = " << num(t.radius)
       << "\nheight = " << num(t.height) << '\n';
  }
  return os.str();
}

void PipelineConfig::validate() const {
  try {
    sr.validate();
    snake.validate();
    if (geo) geo->validate();
  } catch (const Error& e) {
    fail(ErrorCode::ConfigError, e.what());
  }
  require(tile_size >= 64, ErrorCode::ConfigError, "tile_size must be >= 64");
  require(jobs >= 1, ErrorCode::ConfigError, "jobs must be >= 1");
  require(min_area >= 0.0, ErrorCode::ConfigError, "min_area must be >= 0");
  for (const int f : bench_factors) require(f >= 1, ErrorCode::ConfigError, "bench factors must be >= 1");
}

PipelineConfig parse_pipeline_config(const std::string& text, const fs::path& base_dir) {
  const IniDocument doc = parse_ini(text);
  PipelineConfig cfg;
  cfg.out_dir = base_dir / "out";
  for (const auto& s : doc.sections) {
    if (s.name == "paths") {
      for (const auto& [k, v] : s.entries) {
        if (k == "cloud") cfg.cloud = resolve(base_dir, v);
        else if (k == "truth") cfg.truth = resolve(base_dir, v);
        else if (k == "out") cfg.out_dir = resolve(base_dir, v);
        else if (k.rfind("band_", 0) == 0) cfg.bands[k.substr(5)] = resolve(base_dir, v);
        else unknown_key(s, k);
      }
    } else if (s.name == "geo") {
      GeoTransform gt;
      for (const auto& [k, v] : s.entries) {
        if (k == "origin_x") gt.origin_x = to_double(k, v);
        else if (k == "origin_y") gt.origin_y = to_double(k, v);
        else if (k == "pixel_size") gt.pixel_size = to_double(k, v);
        else if (k == "rows") gt.rows = to_size(k, v);
        else if (k == "cols") gt.cols = to_size(k, v);
        else unknown_key(s, k);
      }
      cfg.geo = gt;
    } else if (s.name == "superres") {
      for (const auto& [k, v] : s.entries) {
        if (k == "lambda") {
          cfg.auto_lambda = v == "auto";
          if (!cfg.auto_lambda) cfg.sr.lambda = to_double(k, v);
        } else if (k == "max_iters") {
          cfg.sr.max_iters = to_size(k, v);
        } else if (k == "diff_tol") {
          cfg.sr.diff_tol = to_double(k, v);
        } else if (k == "step_size") {
          cfg.sr.step_size = to_double(k, v);
        } else {
          unknown_key(s, k);
        }
      }
    } else if (s.name == "snake") {
      auto& p = cfg.snake;
      for (const auto& [k, v] : s.entries) {
        if (k == "alpha") p.alpha = to_double(k, v);
        else if (k == "beta") p.beta = to_double(k, v);
        else if (k == "kappa") p.kappa = to_double(k, v);
        else if (k == "mu_gvf") p.mu_gvf = to_double(k, v);
        else if (k == "w_line") p.w_line = to_double(k, v);
        else if (k == "w_edge") p.w_edge = to_double(k, v);
        else if (k == "w_term") p.w_term = to_double(k, v);
        else if (k == "sigma") p.sigma = to_double(k, v);
        else if (k == "gamma") p.gamma = to_double(k, v);
        else if (k == "max_iters") p.max_iters = to_size(k, v);
        else if (k == "resample_spacing") p.resample_spacing = to_double(k, v);
        else if (k == "convergence_tol") p.convergence_tol = to_double(k, v);
        else if (k == "gvf_iters") p.gvf_iters = to_size(k, v);
        else if (k == "external") {
          if (v == "gvf") p.external = ExternalForce::Gvf;
          else if (v == "gradient") p.external = ExternalForce::Gradient;
          else fail(ErrorCode::ConfigError, "external must be 'gvf' or 'gradient'");
        } else {
          unknown_key(s, k);
        }
      }
    } else if (s.name == "extract") {
      for (const auto& [k, v] : s.entries) {
        if (k == "min_height") cfg.min_height = to_double(k, v);
        else if (k == "min_area") cfg.min_area = to_double(k, v);
        else if (k == "ndvi_threshold") cfg.ndvi_threshold = to_double(k, v);
        else if (k == "crop_pad") cfg.crop_pad = to_size(k, v);
        else unknown_key(s, k);
      }
    } else if (s.name == "run") {
      for (const auto& [k, v] : s.entries) {
        if (k == "tile_size") cfg.tile_size = to_size(k, v);
        else if (k == "jobs") cfg.jobs = to_size(k, v);
        else if (k == "halo") cfg.halo = to_size(k, v);
        else if (k == "bench_factors") {
          cfg.bench_factors.clear();
          for (const double f : to_doubles(k, v)) cfg.bench_factors.push_back(static_cast<int>(f));
        } else {
          unknown_key(s, k);
        }
      }
    } else {
      fail(ErrorCode::ConfigError, "unknown section [" + s.name + "] in pipeline config");
    }
  }
  cfg.validate();
  return cfg;
}

PipelineConfig load_pipeline_config(const fs::path& path) {
  const std::string text = io::read_text(path);
  return parse_pipeline_config(text, path.has_parent_path() ? path.parent_path() : fs::path("."));
}

std::string pipeline_config_to_ini(const PipelineConfig& cfg, const fs::path& base_dir) {
  std::ostringstream os;
  os << "[paths]\n";
  if (!cfg.cloud.empty()) os << "cloud = " << relative_to(cfg.cloud, base_dir) << '\n';
  if (!cfg.truth.empty()) os << "truth = " << relative_to(cfg.truth, base_dir) << '\n';
  for (const auto& [name, p] : cfg.bands) os << "band_" << name << " = " << relative_to(p, base_dir) << '\n';
  os << "out = " << relative_to(cfg.out_dir, base_dir) << '\n';
  if (cfg.geo) {
    os << "\n[geo]\norigin_x = " << num(cfg.geo->origin_x) << "\norigin_y = " << num(cfg.geo->origin_y)
       << "\npixel_size = " << num(cfg.geo->pixel_size) << "\nrows = " << cfg.geo->rows << "\ncols = " << cfg.geo->cols << '\n';
  }
  os << "\n[superres]\nlambda = " << (cfg.auto_lambda ? std::string("auto") : num(cfg.sr.lambda))
     << "\nmax_iters = " << cfg.sr.max_iters << "\ndiff_tol = " << num(cfg.sr.diff_tol) << "\nstep_size = " << num(cfg.sr.step_size)
     << '\n';
  const auto& p = cfg.snake;
  os << "\n[snake]\nalpha = " << num(p.alpha) << "\nbeta = " << num(p.beta) << "\nkappa = " << num(p.kappa)
     << "\nmu_gvf = " << num(p.mu_gvf) << "\nw_line = " << num(p.w_line) << "\nw_edge = " << num(p.w_edge)
     << "\nw_term = " << num(p.w_term) << "\nsigma = " << num(p.sigma) << "\ngamma = " << num(p.gamma)
     << "\nmax_iters = " << p.max_iters << "\nresample_spacing = " << num(p.resample_spacing)
     << "\nconvergence_tol = " << num(p.convergence_tol) << "\ngvf_iters = " << p.gvf_iters
     << "\nexternal = " << (p.external == ExternalForce::Gvf ? "gvf" : "gradient") << '\n';
  os << "\n[extract]\nmin_height = " << num(cfg.min_height) << "\nmin_area = " << num(cfg.min_area)
     << "\nndvi_threshold = " << num(cfg.ndvi_threshold) << "\ncrop_pad = " << cfg.crop_pad << '\n';
  os << "\n[run]\ntile_size = " << cfg.tile_size << "\njobs = " << cfg.jobs << "\nhalo = " << cfg.halo << "\nbench_factors =";
  for (const int f : cfg.bench_factors) os << ' ' << f;
  os << '\n';
  return os.str();
}

}  // namespace srsm::config
