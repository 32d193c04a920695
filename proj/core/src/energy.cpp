#include "srsm/energy.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace srsm::energy {

namespace {

std::vector<double> gaussian_kernel(double sigma) {
  const auto radius = static_cast<std::ptrdiff_t>(std::ceil(3.0 * sigma));
  std::vector<double> k(static_cast<std::size_t>(2 * radius + 1));
  double sum = 0.0;
  for (std::ptrdiff_t i = -radius; i <= radius; ++i) {
    const double w = std::exp(-static_cast<double>(i * i) / (2.0 * sigma * sigma));
    k[static_cast<std::size_t>(i + radius)] = w;
    sum += w;
  }
  for (auto& w : k) w /= sum;
  return k;
}

ScalarField second_xx(const ScalarField& f) {
  ScalarField out(f.rows(), f.cols());
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < f.cols(); ++c) {
      const auto rr = static_cast<std::ptrdiff_t>(r);
      const auto cc = static_cast<std::ptrdiff_t>(c);
      out(r, c) = f.clamped(rr, cc + 1) - 2.0 * f(r, c) + f.clamped(rr, cc - 1);
    }
  }
  return out;
}

ScalarField second_yy(const ScalarField& f) {
  ScalarField out(f.rows(), f.cols());
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < f.cols(); ++c) {
      const auto rr = static_cast<std::ptrdiff_t>(r);
      const auto cc = static_cast<std::ptrdiff_t>(c);
      out(r, c) = f.clamped(rr + 1, cc) - 2.0 * f(r, c) + f.clamped(rr - 1, cc);
    }
  }
  return out;
}

}  // namespace

ScalarField gaussian_smooth(const ScalarField& img, double sigma) {
  require(sigma > 0.0, ErrorCode::InvalidArgument, "sigma must be > 0");
  const auto kernel = gaussian_kernel(sigma);
  const auto radius = static_cast<std::ptrdiff_t>(kernel.size() / 2);

  ScalarField tmp(img.rows(), img.cols());
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += kernel[static_cast<std::size_t>(k + radius)] *
               img.clamped(static_cast<std::ptrdiff_t>(r), static_cast<std::ptrdiff_t>(c) + k);
      }
      tmp(r, c) = acc;
    }
  }
  ScalarField out(img.rows(), img.cols());
  for (std::size_t r = 0; r < img.rows(); ++r) {
    for (std::size_t c = 0; c < img.cols(); ++c) {
      double acc = 0.0;
      for (std::ptrdiff_t k = -radius; k <= radius; ++k) {
        acc += kernel[static_cast<std::size_t>(k + radius)] *
               tmp.clamped(static_cast<std::ptrdiff_t>(r) + k, static_cast<std::ptrdiff_t>(c));
      }
      out(r, c) = acc;
    }
  }
  return out;
}

ScalarField diff_x(const ScalarField& f) {
  ScalarField out(f.rows(), f.cols());
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < f.cols(); ++c) {
      const auto rr = static_cast<std::ptrdiff_t>(r);
      const auto cc = static_cast<std::ptrdiff_t>(c);
      out(r, c) = 0.5 * (f.clamped(rr, cc + 1) - f.clamped(rr, cc - 1));
    }
  }
  return out;
}

ScalarField diff_y(const ScalarField& f) {
  ScalarField out(f.rows(), f.cols());
  for (std::size_t r = 0; r < f.rows(); ++r) {
    for (std::size_t c = 0; c < f.cols(); ++c) {
      const auto rr = static_cast<std::ptrdiff_t>(r);
      const auto cc = static_cast<std::ptrdiff_t>(c);
      out(r, c) = 0.5 * (f.clamped(rr + 1, cc) - f.clamped(rr - 1, cc));
    }
  }
  return out;
}

ScalarField e_line(const ScalarField& img, double sigma) { return gaussian_smooth(img, sigma); }

ScalarField e_edge(const ScalarField& img, double sigma) {
  const ScalarField smoothed = gaussian_smooth(img, sigma);
  const ScalarField cx = diff_x(smoothed);
  const ScalarField cy = diff_y(smoothed);
  ScalarField out(img.rows(), img.cols());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = -(cx[i] * cx[i] + cy[i] * cy[i]);
  return out;
}

ScalarField e_term(const ScalarField& img, double sigma) {
  constexpr double kGuard = 1e-8;
  const ScalarField smoothed = gaussian_smooth(img, sigma);
  const ScalarField cx = diff_x(smoothed);
  const ScalarField cy = diff_y(smoothed);
  const ScalarField cxx = second_xx(smoothed);
  const ScalarField cyy = second_yy(smoothed);
  const ScalarField cxy = diff_y(cx);
  ScalarField out(img.rows(), img.cols());
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double num = cyy[i] * cx[i] * cx[i] - 2.0 * cxy[i] * cx[i] * cy[i] + cxx[i] * cy[i] * cy[i];
    const double den = std::pow(cx[i] * cx[i] + cy[i] * cy[i] + kGuard, 1.5);
    out[i] = num / den;
  }
  return out;
}

ScalarField e_img(const ScalarField& img, const SnakeParams& params) {
  ScalarField out(img.rows(), img.cols(), 0.0);
  const auto accumulate = [&](double w, const ScalarField& term) {
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * term[i];
  };
  if (params.w_line != 0.0) accumulate(params.w_line, e_line(img, params.sigma));
  if (params.w_edge != 0.0) accumulate(params.w_edge, e_edge(img, params.sigma));
  if (params.w_term != 0.0) accumulate(params.w_term, e_term(img, params.sigma));

  if (out.empty()) return out;
  const auto [lo_it, hi_it] = std::minmax_element(out.values().begin(), out.values().end());
  const double lo = *lo_it;
  const double span = *hi_it - lo;
  if (!(span > 0.0)) return ScalarField(img.rows(), img.cols(), 0.0);
  for (auto& v : out.values()) v = (v - lo) / span;
  return out;
}

VectorField potential_force(const ScalarField& e_img_field) {
  VectorField out{diff_x(e_img_field), diff_y(e_img_field)};
  for (auto& v : out.u.values()) v = -v;
  for (auto& v : out.v.values()) v = -v;
  return out;
}

VectorField external_field(const ScalarField& img, const SnakeParams& params) {
  params.validate();
  const ScalarField energy = e_img(img, params);
  if (params.external == ExternalForce::Gradient) return potential_force(energy);
  ScalarField edge_map(energy.rows(), energy.cols());
  for (std::size_t i = 0; i < energy.size(); ++i) edge_map[i] = -energy[i];
  return gvf(edge_map, params.mu_gvf, params.gvf_iters, gvf_default_dt(params.mu_gvf));
}

}  // namespace srsm::energy
