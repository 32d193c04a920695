#include <algorithm>
#include <cmath>
#include <limits>

#include "srsm/superres.hpp"

namespace srsm::sr {

namespace {

void check_dims(const ZImage& a, const ZImage& b) {
  require(a.same_shape(b) && !a.empty(), ErrorCode::DimMismatch, "images must have equal, non-zero dimensions");
}

double mse(const ZImage& a, const ZImage& b) {
  check_dims(a, b);
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc / static_cast<double>(a.size());
}

double value_range(const ZImage& img) {
  const auto [lo, hi] = std::minmax_element(img.values().begin(), img.values().end());
  return *hi - *lo;
}

constexpr std::ptrdiff_t kWindow = 8;
// window rows r - 3 .. r + 4 around its anchor pixel
constexpr std::ptrdiff_t kWindowLo = -(kWindow / 2 - 1);

}  // namespace

double rmse_image(const ZImage& a, const ZImage& b) { return std::sqrt(mse(a, b)); }

double psnr(const ZImage& a, const ZImage& b, double peak_val) {
  const double m = mse(a, b);
  if (m == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(peak_val * peak_val / m);
}

double ssim(const ZImage& a, const ZImage& b, double dynamic_range) {
  check_dims(a, b);
  double L = dynamic_range;
  if (L <= 0.0) L = std::max(value_range(a), value_range(b));
  if (L <= 0.0) L = 1.0;
  const double c1 = (0.01 * L) * (0.01 * L);
  const double c2 = (0.03 * L) * (0.03 * L);
  constexpr double count = static_cast<double>(kWindow * kWindow);

  double total = 0.0;
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < a.cols(); ++c) {
      double sa = 0.0, sb = 0.0, saa = 0.0, sbb = 0.0, sab = 0.0;
      for (std::ptrdiff_t dr = kWindowLo; dr < kWindowLo + kWindow; ++dr) {
        for (std::ptrdiff_t dc = kWindowLo; dc < kWindowLo + kWindow; ++dc) {
          const auto rr = static_cast<std::ptrdiff_t>(r) + dr;
          const auto cc = static_cast<std::ptrdiff_t>(c) + dc;
          const double va = a.clamped(rr, cc);
          const double vb = b.clamped(rr, cc);
          sa += va;
          sb += vb;
          saa += va * va;
          sbb += vb * vb;
          sab += va * vb;
        }
      }
      const double mu_a = sa / count;
      const double mu_b = sb / count;
      const double var_a = std::max(0.0, saa / count - mu_a * mu_a);
      const double var_b = std::max(0.0, sbb / count - mu_b * mu_b);
      const double cov = sab / count - mu_a * mu_b;
      total += ((2.0 * mu_a * mu_b + c1) / (mu_a * mu_a + mu_b * mu_b + c1)) * ((2.0 * cov + c2) / (var_a + var_b + c2));
    }
  }
  return total / static_cast<double>(a.size());
}

}  // namespace srsm::sr
