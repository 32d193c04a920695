#include <algorithm>
#include <cmath>

#include "srsm/energy.hpp"

namespace srsm::energy {

namespace {

// 5-point Laplacian with replicate (zero-flux) borders.
double laplacian(const ScalarField& f, std::size_t r, std::size_t c) noexcept {
  const auto rr = static_cast<std::ptrdiff_t>(r);
  const auto cc = static_cast<std::ptrdiff_t>(c);
  return f.clamped(rr - 1, cc) + f.clamped(rr + 1, cc) + f.clamped(rr, cc - 1) + f.clamped(rr, cc + 1) - 4.0 * f(r, c);
}

}  // namespace

VectorField gvf(const ScalarField& f, double mu_gvf, std::size_t iters, double dt) {
  require(mu_gvf > 0.0, ErrorCode::InvalidArgument, "mu_gvf must be > 0");
  require(dt > 0.0 && dt * 4.0 * mu_gvf < 1.0, ErrorCode::InvalidArgument, "GVF step violates dt * 4 * mu < 1");
  constexpr double kBlowUp = 1e12;

  const ScalarField fx = diff_x(f);
  const ScalarField fy = diff_y(f);
  ScalarField mag2(f.rows(), f.cols());
  for (std::size_t i = 0; i < f.size(); ++i) mag2[i] = fx[i] * fx[i] + fy[i] * fy[i];

  VectorField cur{fx, fy};
  VectorField next{ScalarField(f.rows(), f.cols()), ScalarField(f.rows(), f.cols())};
  for (std::size_t it = 0; it < iters; ++it) {
    double peak = 0.0;
    for (std::size_t r = 0; r < f.rows(); ++r) {
      for (std::size_t c = 0; c < f.cols(); ++c) {
        const std::size_t i = r * f.cols() + c;
        next.u[i] = cur.u[i] + dt * (mu_gvf * laplacian(cur.u, r, c) - (cur.u[i] - fx[i]) * mag2[i]);
        next.v[i] = cur.v[i] + dt * (mu_gvf * laplacian(cur.v, r, c) - (cur.v[i] - fy[i]) * mag2[i]);
        peak = std::max({peak, std::abs(next.u[i]), std::abs(next.v[i])});
      }
    }
    require(std::isfinite(peak) && peak <= kBlowUp, ErrorCode::Unstable, "GVF iteration diverged; reduce dt");
    std::swap(cur, next);
  }
  return cur;
}

}  // namespace srsm::energy
