#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "oracles.hpp"
#include "srsm/config.hpp"
#include "srsm/io.hpp"

using namespace srsm;
namespace fs = std::filesystem;

namespace {

class TempDir : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("srsm_io_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  fs::path dir_;
};

template <class Fn>
ErrorCode code_of(Fn fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorCode::InvalidArgument;
}

}  // namespace

using IoTest = TempDir;

TEST_F(IoTest, XyzRoundTripIsExact) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e5, 1e5);
  std::vector<Point3> pts;
  for (int i = 0; i < 500; ++i) pts.push_back({u(rng), u(rng), u(rng)});
  io::write_xyz(dir_ / "a.xyz", PointCloud3D(pts));
  const auto back = io::read_xyz(dir_ / "a.xyz");
  ASSERT_EQ(back.size(), pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) {
    EXPECT_EQ(back.points()[i].x, pts[i].x);
    EXPECT_EQ(back.points()[i].z, pts[i].z);
  }
}

TEST_F(IoTest, XyzCommentsAndErrors) {
  io::write_text(dir_ / "c.xyz", "# header\n1 2 3 # trailing\n\n4 5 6\n");
  EXPECT_EQ(io::read_xyz(dir_ / "c.xyz").size(), 2u);
  io::write_text(dir_ / "bad.xyz", "1 2\n");
  EXPECT_EQ(code_of([&] { io::read_xyz(dir_ / "bad.xyz"); }), ErrorCode::FormatError);
  EXPECT_EQ(code_of([&] { io::read_xyz(dir_ / "none.xyz"); }), ErrorCode::MissingInput);
}

TEST_F(IoTest, ZimgRoundTripAndHeader) {
  ZImage z(3, 5);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = 0.25 * static_cast<double>(i) - 1.0;
  io::write_zimg(dir_ / "z.zimg", z);
  EXPECT_EQ(fs::file_size(dir_ / "z.zimg"), 16u + 4u * 15u);
  EXPECT_EQ(io::read_zimg(dir_ / "z.zimg"), z);  // quarter steps are exact in float32
  std::ifstream in(dir_ / "z.zimg", std::ios::binary);
  char magic[4];
  in.read(magic, 4);
  EXPECT_EQ(std::string(magic, 4), "ZIMG");
  io::write_text(dir_ / "junk.zimg", "nope");
  EXPECT_EQ(code_of([&] { io::read_zimg(dir_ / "junk.zimg"); }), ErrorCode::FormatError);
}

TEST_F(IoTest, GeotransformSidecarRoundTrip) {
  const GeoTransform gt{351234.125, 5401022.5, 0.37, 77, 91};
  io::write_zimg_geo(dir_ / "d.zimg", ZImage(77, 91, 1.0), gt);
  EXPECT_EQ(io::sidecar_path(dir_ / "d.zimg"), dir_ / "d.zimg.geo");
  EXPECT_EQ(io::read_geotransform(io::sidecar_path(dir_ / "d.zimg")), gt);
}

TEST_F(IoTest, PgmScalesToFullRange) {
  ZImage z(2, 3);
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = 10.0 + static_cast<double>(i);
  io::write_pgm16(dir_ / "a.pgm", z);
  const auto b = io::read_pgm(dir_ / "a.pgm");
  EXPECT_DOUBLE_EQ(b[0], 0.0);
  EXPECT_DOUBLE_EQ(b[5], 1.0);
  EXPECT_NEAR(b[2], 0.4, 1.0 / 65535);
  io::write_pgm8(dir_ / "b.pgm", z);
  EXPECT_NEAR(io::read_pgm(dir_ / "b.pgm")[3], 0.6, 1.0 / 255);
  ScalarField band(2, 2, 0.3);
  band[3] = 1.7;  // clamped
  io::write_band_pgm(dir_ / "band.pgm", band);
  const auto rb = io::read_pgm(dir_ / "band.pgm");
  EXPECT_NEAR(rb[0], 0.3, 1.0 / 65535);
  EXPECT_DOUBLE_EQ(rb[3], 1.0);
}

TEST_F(IoTest, GeojsonRoundTripBothSpaces) {
  const GeoTransform gt{500.0, 800.0, 0.5, 100, 100};
  const std::vector<Contour> cs{oracle::rect(10, 12, 30, 44), Contour({{1.5, 2.25}, {7, 3}, {4, 9.75}})};
  for (const auto space : {io::CoordSpace::World, io::CoordSpace::Pixel}) {
    io::write_geojson(dir_ / "f.geojson", cs, gt, space);
    const auto back = io::read_geojson(dir_ / "f.geojson", gt);
    ASSERT_EQ(back.size(), cs.size());
    for (std::size_t k = 0; k < cs.size(); ++k) {
      ASSERT_EQ(back[k].size(), cs[k].size());
      for (std::size_t i = 0; i < cs[k].size(); ++i) {
        EXPECT_NEAR(back[k][i].row, cs[k][i].row, 1e-9);
        EXPECT_NEAR(back[k][i].col, cs[k][i].col, 1e-9);
      }
    }
  }
  EXPECT_NE(io::footprints_to_geojson({}, gt, io::CoordSpace::World).find("\"features\": []"), std::string::npos);
  io::write_text(dir_ / "bad.geojson", "{\"type\": \"Feature\"}");
  EXPECT_EQ(code_of([&] { io::read_geojson(dir_ / "bad.geojson", gt); }), ErrorCode::FormatError);
}

TEST(Ini, SectionsCommentsAndRepeats) {
  const auto doc = config::parse_ini("# c\n[a]\nx = 1\n; c\nx=2\n[b]\n y = hello world \n[b]\ny=3\n");
  ASSERT_EQ(doc.sections.size(), 3u);
  EXPECT_EQ(doc.first("a")->get("x"), "2");
  EXPECT_EQ(doc.first("b")->get("y"), "hello world");
  EXPECT_EQ(doc.all("b").size(), 2u);
  EXPECT_EQ(doc.first("zzz"), nullptr);
  EXPECT_FALSE(doc.first("a")->get("q").has_value());
}

TEST(Ini, SyntaxErrors) {
  EXPECT_EQ(code_of([] { config::parse_ini("x = 1\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_ini("[a\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_ini("[a]\nnovalue\n"); }), ErrorCode::ConfigError);
}

TEST(SceneSpec, IniRoundTrip) {
  auto spec = scene::standard_two_box_scene();
  spec.noise_std = 0.15;
  spec.trees.push_back({{5.5, 6.25}, 2.0, 7.0});
  const auto back = config::parse_scene_spec(config::scene_spec_to_ini(spec));
  EXPECT_EQ(back.width, spec.width);
  EXPECT_EQ(back.noise_std, spec.noise_std);
  ASSERT_EQ(back.boxes.size(), 2u);
  EXPECT_EQ(back.boxes[1].height, 6.0);
  EXPECT_EQ(back.boxes[1].polygon[2].x, 56.0);
  ASSERT_EQ(back.trees.size(), 1u);
  EXPECT_EQ(back.trees[0].center.y, 6.25);
}

TEST(SceneSpec, Errors) {
  EXPECT_EQ(code_of([] { config::parse_scene_spec("[scene]\nwidth = -3\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_scene_spec("[scene]\ncolour = red\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_scene_spec("[box]\npolygon = 0 0, 1 1\nheight = 3\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_scene_spec("[scene]\nwidth = abc\n"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::load_scene_spec("/nonexistent/scene.ini"); }), ErrorCode::MissingInput);
}

TEST(PipelineConfig, ParseResolvesPathsAndParams) {
  const auto cfg = config::parse_pipeline_config(
      "[paths]\ncloud = data/c.xyz\ntruth = /abs/t.geojson\nband_red = r.pgm\n"
      "[superres]\nlambda = 0.5\nmax_iters = 77\n"
      "[snake]\nkappa = 0.3\nexternal = gradient\n"
      "[extract]\nmin_height = 3\n"
      "[run]\ntile_size = 128\njobs = 4\nbench_factors = 2, 3\n",
      "/base");
  EXPECT_EQ(cfg.cloud, fs::path("/base/data/c.xyz"));
  EXPECT_EQ(cfg.truth, fs::path("/abs/t.geojson"));
  EXPECT_EQ(cfg.bands.at("red"), fs::path("/base/r.pgm"));
  EXPECT_EQ(cfg.out_dir, fs::path("/base/out"));
  EXPECT_FALSE(cfg.auto_lambda);
  EXPECT_EQ(cfg.sr.lambda, 0.5);
  EXPECT_EQ(cfg.sr.max_iters, 77u);
  EXPECT_EQ(cfg.snake.kappa, 0.3);
  EXPECT_EQ(cfg.snake.external, ExternalForce::Gradient);
  EXPECT_EQ(cfg.min_height, 3.0);
  EXPECT_EQ(cfg.tile_size, 128u);
  EXPECT_EQ(cfg.jobs, 4u);
  EXPECT_EQ(cfg.bench_factors, (std::vector<int>{2, 3}));
}

TEST(PipelineConfig, RejectsBadValues) {
  EXPECT_EQ(code_of([] { config::parse_pipeline_config("[run]\ntile_size = 32\n", "/b"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_pipeline_config("[run]\njobs = 0\n", "/b"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_pipeline_config("[snake]\nalpha = -1\n", "/b"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_pipeline_config("[snake]\nexternal = magic\n", "/b"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_pipeline_config("[nonsense]\n", "/b"); }), ErrorCode::ConfigError);
  EXPECT_EQ(code_of([] { config::parse_pipeline_config("[superres]\nlambda = -2\n", "/b"); }), ErrorCode::ConfigError);
}

TEST(PipelineConfig, IniRoundTrip) {
  config::PipelineConfig cfg;
  cfg.cloud = "/w/cloud.xyz";
  cfg.truth = "/w/truth.geojson";
  cfg.out_dir = "/w/out";
  cfg.bands["nir"] = "/w/band_nir.pgm";
  cfg.geo = GeoTransform{1, 2, 0.5, 10, 12};
  cfg.snake.alpha = 0.35;
  cfg.jobs = 3;
  const auto back = config::parse_pipeline_config(config::pipeline_config_to_ini(cfg, "/w"), "/w");
  EXPECT_EQ(back.cloud, cfg.cloud);
  EXPECT_EQ(back.truth, cfg.truth);
  EXPECT_EQ(back.out_dir, cfg.out_dir);
  EXPECT_EQ(back.bands, cfg.bands);
  EXPECT_EQ(back.geo, cfg.geo);
  EXPECT_EQ(back.snake.alpha, 0.35);
  EXPECT_EQ(back.jobs, 3u);
  EXPECT_TRUE(back.auto_lambda);
}
