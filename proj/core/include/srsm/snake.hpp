#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "srsm/types.hpp"

namespace srsm::snake {

struct Vec2 {
  double row = 0.0;
  double col = 0.0;
};

/// Factorized (I + gamma * A) for a closed snake of n points, where A is the cyclic
/// pentadiagonal internal-energy operator: alpha * [-1, 2, -1] + beta * [1, -4, 6, -4, 1].
class InternalSolver {
 public:
  InternalSolver(std::size_t n, double alpha, double beta, double gamma);
  ~InternalSolver();
  InternalSolver(InternalSolver&&) noexcept;
  InternalSolver& operator=(InternalSolver&&) noexcept;

  std::size_t size() const noexcept { return n_; }

  /// Solves (I + gamma * A) x = rhs.
  std::vector<double> solve(const std::vector<double>& rhs) const;
  /// Computes (I + gamma * A) x.
  std::vector<double> apply(const std::vector<double>& x) const;

 private:
  struct Impl;
  std::size_t n_;
  double diag_, off1_, off2_;
  std::unique_ptr<Impl> impl_;
};

/// Unit outward normals of a counter-clockwise contour: the normalized mean of the
/// two adjacent edge normals at each vertex.
std::vector<Vec2> outward_normals(const Contour& c);

std::vector<Vec2> classic_balloon(const Contour& c, double kappa);

/// Balloon force whose sign follows the building mask: +kappa on mask pixels, -kappa elsewhere.
/// `signs`, when given, receives +1/-1 per point.
std::vector<Vec2> improved_balloon(const Contour& c, const BinaryMask& mask, double kappa,
                                   std::vector<std::int8_t>* signs = nullptr);

/// Uniform arc-length resampling starting at the first point; max(8, round(perimeter / spacing)) points.
Contour resample(const Contour& c, double spacing);

struct SnakeState {
  Contour contour;
  std::size_t iteration = 0;
  double last_move = 0.0;                 // max point displacement of the step, pixels
  double solve_residual = 0.0;            // max-norm residual of the implicit solve
  std::vector<std::int8_t> balloon_sign;  // per point of the pre-step contour; empty without a mask
};

struct EvolveResult {
  Contour contour;
  std::vector<SnakeState> history;
  bool converged = false;
};

/// Semi-implicit snake evolution under the sampled external field plus a balloon force
/// (mask-signed when `mask` is non-null, classic otherwise).
EvolveResult evolve(const Contour& init, const VectorField& field, const BinaryMask* mask, const SnakeParams& params);

/// Iterations between arc-length resamplings during evolve().
inline constexpr std::size_t kResamplePeriod = 5;

}  // namespace srsm::snake
