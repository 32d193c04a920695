#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "srsm/geometry.hpp"
#include "srsm/scene.hpp"
#include "srsm/superres.hpp"

using namespace srsm;

namespace {

scene::MultiSpectralImage two_band(double red, double nir, std::size_t rows = 2, std::size_t cols = 2) {
  scene::MultiSpectralImage ms;
  ms.set_band("red", ScalarField(rows, cols, red));
  ms.set_band("nir", ScalarField(rows, cols, nir));
  return ms;
}

BinaryMask random_blobs(std::mt19937_64& rng, std::size_t rows, std::size_t cols, double p) {
  std::bernoulli_distribution on(p);
  BinaryMask m(rows, cols, 0);
  for (auto& v : m.values()) v = on(rng) ? 1 : 0;
  return m;
}

// Flood fill from the seed, then fill every background pixel not reachable from the border.
BinaryMask component_with_holes_filled(const BinaryMask& m, std::size_t sr, std::size_t sc) {
  const std::size_t rows = m.rows(), cols = m.cols();
  BinaryMask comp(rows, cols, 0);
  std::vector<std::pair<std::size_t, std::size_t>> stack{{sr, sc}};
  comp(sr, sc) = 1;
  // component grows 4-connected, the background around it 8-connected
  const auto visit = [&](BinaryMask& seen, int nbrs, auto pred) {
    while (!stack.empty()) {
      const auto [r, c] = stack.back();
      stack.pop_back();
      const long dr[8] = {-1, 1, 0, 0, -1, -1, 1, 1}, dc[8] = {0, 0, -1, 1, -1, 1, -1, 1};
      for (int k = 0; k < nbrs; ++k) {
        const long rr = static_cast<long>(r) + dr[k], cc = static_cast<long>(c) + dc[k];
        if (rr < 0 || cc < 0 || rr >= static_cast<long>(rows) || cc >= static_cast<long>(cols)) continue;
        const auto ur = static_cast<std::size_t>(rr), uc = static_cast<std::size_t>(cc);
        if (seen(ur, uc) || !pred(ur, uc)) continue;
        seen(ur, uc) = 1;
        stack.push_back({ur, uc});
      }
    }
  };
  visit(comp, 4, [&](std::size_t r, std::size_t c) { return m(r, c) != 0; });
  BinaryMask outside(rows, cols, 0);
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < cols; ++c) {
      if ((r == 0 || c == 0 || r + 1 == rows || c + 1 == cols) && !comp(r, c)) {
        outside(r, c) = 1;
        stack.push_back({r, c});
      }
    }
  }
  visit(outside, 8, [&](std::size_t r, std::size_t c) { return comp(r, c) == 0; });
  BinaryMask filled(rows, cols, 0);
  for (std::size_t i = 0; i < filled.size(); ++i) filled[i] = outside[i] ? 0 : 1;
  return filled;
}

}  // namespace

TEST(Ndvi, HandComputedValues) {
  EXPECT_NEAR(scene::ndvi(two_band(0.1, 0.5))(0, 0), 0.4 / 0.6, 1e-15);
  EXPECT_DOUBLE_EQ(scene::ndvi(two_band(0.3, 0.3))(1, 1), 0.0);
  EXPECT_DOUBLE_EQ(scene::ndvi(two_band(0.0, 0.0))(0, 1), 0.0);
  EXPECT_DOUBLE_EQ(scene::ndvi(two_band(0.0, 0.7))(0, 0), 1.0);
}

TEST(Ndvi, MissingBandAndMismatchedDims) {
  scene::MultiSpectralImage ms;
  ms.set_band("red", ScalarField(3, 3, 0.1));
  try {
    scene::ndvi(ms);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingBand);
  }
  EXPECT_THROW(ms.set_band("nir", ScalarField(3, 4, 0.1)), Error);
}

TEST(VegetationMask, ThresholdIsStrict) {
  ScalarField n(1, 4);
  n[0] = 0.1;
  n[1] = 0.3;
  n[2] = 0.31;
  n[3] = 0.9;
  const auto m = scene::vegetation_mask(n, 0.3);
  EXPECT_EQ(m[0], 0);
  EXPECT_EQ(m[1], 0);
  EXPECT_EQ(m[2], 1);
  EXPECT_EQ(m[3], 1);
}

TEST(VegetationMask, SyntheticTreesAreFlaggedRoofsAreNot) {
  auto spec = scene::standard_two_box_scene();
  spec.trees.push_back({{60.0, 60.0}, 3.0, 8.0});
  const auto s = scene::synth_scene(spec, 2);
  const auto veg = scene::vegetation_mask(scene::ndvi(s.image), 0.3);
  const auto roofs = scene::mask_from_contour(s.footprints[0], s.gt.rows, s.gt.cols);
  for (std::size_t i = 0; i < roofs.size(); ++i) {
    if (roofs[i]) {
      EXPECT_EQ(veg[i], 0);
    }
  }
  const auto tree_px = world_to_pixel(s.gt, 60.0, 60.0);
  EXPECT_EQ(veg(static_cast<std::size_t>(tree_px.row), static_cast<std::size_t>(tree_px.col)), 1);
  const double frac = static_cast<double>(count_true(veg)) * s.gt.pixel_area() / (M_PI * 9.0);
  EXPECT_NEAR(frac, 1.0, 0.1);
}

TEST(LabelComponents, FourConnectivityAndRasterOrder) {
  BinaryMask m(4, 5, 0);
  m(0, 3) = m(0, 4) = 1;  // label 1
  m(1, 0) = 1;            // label 2
  m(2, 1) = 1;            // diagonal neighbour: label 3
  m(3, 1) = m(3, 2) = 1;
  const auto comps = scene::label_components(m);
  ASSERT_EQ(comps.sizes.size(), 3u);
  EXPECT_EQ(comps.labels(0, 3), 1u);
  EXPECT_EQ(comps.labels(1, 0), 2u);
  EXPECT_EQ(comps.labels(2, 1), 3u);
  EXPECT_EQ(comps.labels(3, 2), 3u);
  EXPECT_EQ(comps.sizes[0], 2u);
  EXPECT_EQ(comps.sizes[1], 1u);
  EXPECT_EQ(comps.sizes[2], 3u);
  EXPECT_EQ(comps.labels(0, 0), 0u);
}

TEST(TraceBoundary, SquareCorners) {
  const auto m = oracle::box_mask(8, 8, 2, 3, 5, 7);
  const auto c = scene::trace_boundary(m, 2, 3);
  EXPECT_EQ(c.size(), 4u);
  EXPECT_DOUBLE_EQ(c.area(), 12.0);
  EXPECT_EQ(scene::mask_from_contour(c, 8, 8), m);
}

TEST(TraceBoundary, SinglePixel) {
  BinaryMask m(3, 3, 0);
  m(1, 1) = 1;
  const auto c = scene::trace_boundary(m, 1, 1);
  EXPECT_DOUBLE_EQ(c.area(), 1.0);
  EXPECT_EQ(scene::mask_from_contour(c, 3, 3), m);
}

TEST(TraceBoundary, RasterizingTheTraceReproducesTheFilledComponent) {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    const auto m = random_blobs(rng, 18, 21, 0.55);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (!m[i]) continue;
      const std::size_t r = i / m.cols(), c = i % m.cols();
      const auto contour = scene::trace_boundary(m, r, c);
      ASSERT_EQ(scene::mask_from_contour(contour, m.rows(), m.cols()), component_with_holes_filled(m, r, c))
          << "trial " << trial << " seed " << r << "," << c;
      break;
    }
  }
}

TEST(TraceBoundary, RejectsBackgroundSeed) {
  EXPECT_THROW(scene::trace_boundary(BinaryMask(4, 4, 0), 1, 1), Error);
}

TEST(Terrain, FlatGroundAndSmallObjects) {
  ZImage z(64, 64, 12.0);
  for (std::size_t r = 20; r < 30; ++r) {
    for (std::size_t c = 20; c < 30; ++c) z(r, c) = 30.0;
  }
  const auto terrain = scene::estimate_terrain(z);
  for (const double v : terrain.values()) EXPECT_DOUBLE_EQ(v, 12.0);
}

TEST(Terrain, TracksAPlaneWithinABlockSlope) {
  ZImage z(96, 96);
  for (std::size_t r = 0; r < 96; ++r) {
    for (std::size_t c = 0; c < 96; ++c) z(r, c) = 0.05 * static_cast<double>(c);
  }
  const auto t = scene::estimate_terrain(z);
  for (std::size_t i = 0; i < z.size(); ++i) EXPECT_LT(std::fabs(t[i] - z[i]), 0.05 * 32);
}

TEST(PreliminaryExtract, TwoBoxesAndFilters) {
  const auto s = scene::synth_scene(scene::standard_two_box_scene(), 1);
  const auto cand = scene::preliminary_extract(s.truth_z, s.gt, 2.5, 10.0);
  ASSERT_EQ(cand.boundaries.size(), 2u);
  for (std::size_t k = 0; k < 2; ++k) {
    EXPECT_EQ(cand.masks[k], scene::mask_from_contour(s.footprints[k], s.gt.rows, s.gt.cols));
  }
  // too tall a threshold: nothing; too large a minimum area: only the larger box
  EXPECT_TRUE(scene::preliminary_extract(s.truth_z, s.gt, 20.0, 10.0).boundaries.empty());
  EXPECT_EQ(scene::preliminary_extract(s.truth_z, s.gt, 2.5, 300.0).boundaries.size(), 1u);
  // a vegetation mask over the first box removes it
  const auto veg = scene::mask_from_contour(s.footprints[0], s.gt.rows, s.gt.cols);
  EXPECT_EQ(scene::preliminary_extract(s.truth_z, s.gt, 2.5, 10.0, &veg).boundaries.size(), 1u);
}

TEST(PreliminaryExtract, CourtyardFilledAndMasksDisjoint) {
  ZImage z(60, 60, 0.0);
  for (std::size_t r = 10; r < 50; ++r) {
    for (std::size_t c = 10; c < 50; ++c) z(r, c) = (r >= 20 && r < 40 && c >= 20 && c < 40) ? 0.0 : 8.0;
  }
  for (std::size_t r = 27; r < 33; ++r) {
    for (std::size_t c = 27; c < 33; ++c) z(r, c) = 6.0;  // kiosk inside the courtyard
  }
  const GeoTransform gt{0.0, 60.0, 1.0, 60, 60};
  const auto cand = scene::preliminary_extract(z, gt, 2.5, 10.0);
  ASSERT_EQ(cand.masks.size(), 1u);
  EXPECT_EQ(count_true(cand.masks[0]), 1600u);
}

TEST(Synth, DeterministicPerSeed) {
  const auto spec = scene::standard_two_box_scene();
  const auto a = scene::synth_scene(spec, 42);
  const auto b = scene::synth_scene(spec, 42);
  const auto c = scene::synth_scene(spec, 43);
  ASSERT_EQ(a.cloud.size(), b.cloud.size());
  for (std::size_t i = 0; i < a.cloud.size(); ++i) {
    EXPECT_EQ(a.cloud.points()[i].x, b.cloud.points()[i].x);
    EXPECT_EQ(a.cloud.points()[i].z, b.cloud.points()[i].z);
  }
  EXPECT_NE(a.cloud.points()[0].x, c.cloud.points()[0].x);
  EXPECT_EQ(a.truth_z, c.truth_z);
  EXPECT_EQ(a.cloud.size(), 128u * 128u);
}

TEST(Synth, NoiseFreePointsSitOnTheSurface) {
  const auto s = scene::synth_scene(scene::standard_two_box_scene(), 5);
  const auto sparse = sr::project_points(s.cloud, s.gt);
  EXPECT_GE(static_cast<double>(sparse.filled_count()), 0.9 * static_cast<double>(s.gt.rows * s.gt.cols));
  for (const auto& p : s.cloud.points()) {
    const bool in_a = p.x > 10 && p.x < 30 && p.y > 34 && p.y < 54;
    const bool in_b = p.x > 38 && p.x < 56 && p.y > 8 && p.y < 24;
    EXPECT_DOUBLE_EQ(p.z, in_a ? 110.0 : in_b ? 106.0 : 100.0);
  }
}

TEST(Synth, NoiseHasTheRequestedSpread) {
  auto spec = scene::standard_two_box_scene();
  spec.noise_std = 0.2;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const auto noisy = scene::synth_scene(spec, seed);
    const auto ref = scene::synth_scene(scene::standard_two_box_scene(), seed);
    double acc = 0.0;
    for (std::size_t i = 0; i < noisy.cloud.size(); ++i) {
      const double d = noisy.cloud.points()[i].z - ref.cloud.points()[i].z;
      acc += d * d;
    }
    const double rmse = std::sqrt(acc / static_cast<double>(noisy.cloud.size()));
    EXPECT_LE(rmse, 3 * spec.noise_std);
    EXPECT_GT(rmse, 0.5 * spec.noise_std);
  }
}

TEST(Synth, WorldContourRoundTrip) {
  const auto spec = scene::standard_two_box_scene();
  const auto gt = spec.geotransform();
  const auto c = scene::world_polygon_to_contour(spec.boxes[0].polygon, gt);
  EXPECT_DOUBLE_EQ(c[0].row, 20.0);
  EXPECT_DOUBLE_EQ(c[0].col, 20.0);
  const auto w = scene::contour_to_world(c, gt);
  for (std::size_t i = 0; i < w.size(); ++i) {
    EXPECT_DOUBLE_EQ(w[i].x, spec.boxes[0].polygon[i].x);
    EXPECT_DOUBLE_EQ(w[i].y, spec.boxes[0].polygon[i].y);
  }
}
