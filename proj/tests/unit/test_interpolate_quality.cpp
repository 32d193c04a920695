#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <random>

#include "oracles.hpp"
#include "srsm/scene.hpp"
#include "srsm/superres.hpp"

using namespace srsm;

namespace {

// Straightforward SSIM: explicit 8x8 window per pixel, rows/cols r-3..r+4, clamped indices.
double ssim_oracle(const ZImage& a, const ZImage& b, double L) {
  const double c1 = std::pow(0.01 * L, 2), c2 = std::pow(0.03 * L, 2);
  double total = 0.0;
  for (long r = 0; r < static_cast<long>(a.rows()); ++r) {
    for (long c = 0; c < static_cast<long>(a.cols()); ++c) {
      std::vector<double> wa, wb;
      for (long i = r - 3; i <= r + 4; ++i) {
        for (long j = c - 3; j <= c + 4; ++j) {
          wa.push_back(a.clamped(i, j));
          wb.push_back(b.clamped(i, j));
        }
      }
      double ma = 0, mb = 0;
      for (std::size_t k = 0; k < wa.size(); ++k) {
        ma += wa[k];
        mb += wb[k];
      }
      ma /= 64;
      mb /= 64;
      double va = 0, vb = 0, cov = 0;
      for (std::size_t k = 0; k < wa.size(); ++k) {
        va += (wa[k] - ma) * (wa[k] - ma);
        vb += (wb[k] - mb) * (wb[k] - mb);
        cov += (wa[k] - ma) * (wb[k] - mb);
      }
      va /= 64;
      vb /= 64;
      cov /= 64;
      total += (2 * ma * mb + c1) * (2 * cov + c2) / ((ma * ma + mb * mb + c1) * (va + vb + c2));
    }
  }
  return total / static_cast<double>(a.size());
}

}  // namespace

TEST(Interpolate, SingleFilledPixelSpreadsEverywhere) {
  SparseZImage s(6, 7);
  s.set(2, 5, 3.0);
  for (const auto& img : {sr::interp_nearest(s), sr::interp_bilinear(s)}) {
    for (const double v : img.values()) EXPECT_DOUBLE_EQ(v, 3.0);
  }
}

TEST(Interpolate, TwoEndsOfARow) {
  SparseZImage s(1, 11);
  s.set(0, 0, 0.0);
  s.set(0, 10, 10.0);
  // equal inverse-square weights at the midpoint
  EXPECT_NEAR(sr::interp_bilinear(s)(0, 5), 5.0, 1e-9);
  // tie broken toward the smaller column
  EXPECT_DOUBLE_EQ(sr::interp_nearest(s)(0, 5), 0.0);
  EXPECT_DOUBLE_EQ(sr::interp_nearest(s)(0, 6), 10.0);
  // weights 1/d^2 with d = 2 and 8
  EXPECT_NEAR(sr::interp_bilinear(s)(0, 2), (0.0 / 4 + 10.0 / 64) / (1.0 / 4 + 1.0 / 64), 1e-12);
}

TEST(Interpolate, FilledValuesReproducedExactly) {
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> u(0, 50);
  std::bernoulli_distribution keep(0.15);
  SparseZImage s(20, 17);
  for (std::size_t r = 0; r < 20; ++r) {
    for (std::size_t c = 0; c < 17; ++c) {
      if (keep(rng)) s.set(r, c, u(rng));
    }
  }
  const auto nn = sr::interp_nearest(s);
  const auto bl = sr::interp_bilinear(s);
  for (const auto& [i, z] : s.filled()) {
    EXPECT_EQ(nn[i], z);
    EXPECT_EQ(bl[i], z);
  }
}

TEST(Interpolate, NearestMatchesBruteForce) {
  std::mt19937_64 rng(12);
  std::bernoulli_distribution keep(0.05);
  SparseZImage s(25, 31);
  for (std::size_t r = 0; r < 25; ++r) {
    for (std::size_t c = 0; c < 31; ++c) {
      if (keep(rng)) s.set(r, c, static_cast<double>(r * 100 + c));
    }
  }
  s.set(0, 0, 0.0);
  const auto nn = sr::interp_nearest(s);
  for (std::size_t r = 0; r < 25; ++r) {
    for (std::size_t c = 0; c < 31; ++c) {
      long best = -1;
      long bd = std::numeric_limits<long>::max();
      for (const auto& [i, z] : s.filled()) {
        const long fr = static_cast<long>(i / 31), fc = static_cast<long>(i % 31);
        const long d = (fr - static_cast<long>(r)) * (fr - static_cast<long>(r)) + (fc - static_cast<long>(c)) * (fc - static_cast<long>(c));
        if (d < bd) {  // filled() is ordered by (row, col), so the first minimum wins ties
          bd = d;
          best = static_cast<long>(i);
        }
      }
      EXPECT_DOUBLE_EQ(nn(r, c), s.filled().at(static_cast<std::size_t>(best)));
    }
  }
}

TEST(Interpolate, CheckerboardRampBilinearBeatsNearest) {
  ZImage ramp(16, 16);
  BinaryMask keep(16, 16, 0);
  for (std::size_t r = 0; r < 16; ++r) {
    for (std::size_t c = 0; c < 16; ++c) {
      ramp(r, c) = 0.7 * static_cast<double>(r) + 1.3 * static_cast<double>(c);
      keep(r, c) = (r + c) % 2 == 0;
    }
  }
  const auto s = SparseZImage::from_dense(ramp, keep);
  EXPECT_LT(sr::rmse_image(sr::interp_bilinear(s), ramp), sr::rmse_image(sr::interp_nearest(s), ramp));
}

TEST(Metrics, Identities) {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(80, 120);
  ZImage a(20, 24);
  for (auto& v : a.values()) v = u(rng);
  EXPECT_DOUBLE_EQ(sr::rmse_image(a, a), 0.0);
  EXPECT_NEAR(sr::ssim(a, a), 1.0, 1e-12);
  EXPECT_EQ(sr::psnr(a, a, 255.0), std::numeric_limits<double>::infinity());
}

TEST(Metrics, PsnrConstantOffset) {
  ZImage a(9, 9, 10.0), b(9, 9, 11.0);
  EXPECT_NEAR(sr::psnr(a, b, 255.0), 20.0 * std::log10(255.0), 1e-9);
  EXPECT_NEAR(sr::psnr(a, b, 255.0), 48.1308036, 1e-6);
  EXPECT_DOUBLE_EQ(sr::rmse_image(a, b), 1.0);
}

TEST(Metrics, SsimMatchesExplicitWindowOracle) {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> u(0, 5);
  ZImage a(13, 11), b(13, 11);
  for (std::size_t i = 0; i < a.size(); ++i) {
    a[i] = u(rng);
    b[i] = a[i] + 0.5 * u(rng);
  }
  EXPECT_NEAR(sr::ssim(a, b, 7.0), ssim_oracle(a, b, 7.0), 1e-12);
  EXPECT_LT(sr::ssim(a, b), 1.0);
}

TEST(Metrics, DimMismatch) {
  try {
    sr::rmse_image(ZImage(2, 2), ZImage(2, 3));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DimMismatch);
  }
}

TEST(SrBenchmark, ShapeAndFactorOne) {
  const auto s = scene::synth_scene(scene::standard_two_box_scene(), 3);
  const auto rep = sr::sr_benchmark(s.cloud, s.gt, {1, 2, 4, 8});
  EXPECT_EQ(rep.scores.size(), 12u);
  for (const char* m : {"SR", "NN", "bilinear"}) {
    EXPECT_DOUBLE_EQ(rep.find(m, 1).rmse, 0.0);
  }
  EXPECT_GT(rep.find("SR", 8).rmse, 0.0);
  const auto again = sr::sr_benchmark(s.cloud, s.gt, {2});
  EXPECT_EQ(again.find("SR", 2).rmse, rep.find("SR", 2).rmse);
}

TEST(SrBenchmark, RequiresDenseCloud) {
  auto spec = scene::standard_two_box_scene();
  spec.density = 1.0;
  const auto s = scene::synth_scene(spec, 3);
  EXPECT_THROW(sr::sr_benchmark(s.cloud, s.gt, {2}), Error);
}
