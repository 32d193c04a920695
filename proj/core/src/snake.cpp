#include "srsm/snake.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>

namespace srsm::snake {

struct InternalSolver::Impl {
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt;
};

InternalSolver::InternalSolver(std::size_t n, double alpha, double beta, double gamma)
    : n_(n),
      diag_(1.0 + gamma * (2.0 * alpha + 6.0 * beta)),
      off1_(gamma * (-alpha - 4.0 * beta)),
      off2_(gamma * beta),
      impl_(std::make_unique<Impl>()) {
  require(n >= 5, ErrorCode::InvalidArgument, "internal operator needs at least 5 points");
  require(alpha >= 0.0 && beta >= 0.0 && gamma > 0.0, ErrorCode::InvalidArgument, "alpha, beta >= 0 and gamma > 0 required");

  std::vector<Eigen::Triplet<double>> entries;
  entries.reserve(5 * n);
  const auto N = static_cast<std::ptrdiff_t>(n);
  for (std::ptrdiff_t i = 0; i < N; ++i) {
    const auto at = [&](std::ptrdiff_t k) { return static_cast<int>(((i + k) % N + N) % N); };
    entries.emplace_back(static_cast<int>(i), at(0), diag_);
    entries.emplace_back(static_cast<int>(i), at(-1), off1_);
    entries.emplace_back(static_cast<int>(i), at(1), off1_);
    entries.emplace_back(static_cast<int>(i), at(-2), off2_);
    entries.emplace_back(static_cast<int>(i), at(2), off2_);
  }
  Eigen::SparseMatrix<double> m(static_cast<int>(n), static_cast<int>(n));
  m.setFromTriplets(entries.begin(), entries.end());
  impl_->ldlt.compute(m);
  // I + gamma*A is symmetric positive definite for gamma > 0, alpha, beta >= 0
  require(impl_->ldlt.info() == Eigen::Success, ErrorCode::SingularOperator, "internal operator factorization failed");
}

InternalSolver::~InternalSolver() = default;
InternalSolver::InternalSolver(InternalSolver&&) noexcept = default;
InternalSolver& InternalSolver::operator=(InternalSolver&&) noexcept = default;

std::vector<double> InternalSolver::solve(const std::vector<double>& rhs) const {
  require(rhs.size() == n_, ErrorCode::DimMismatch, "rhs size does not match the operator");
  const Eigen::Map<const Eigen::VectorXd> b(rhs.data(), static_cast<Eigen::Index>(n_));
  const Eigen::VectorXd x = impl_->ldlt.solve(b);
  require(impl_->ldlt.info() == Eigen::Success, ErrorCode::SingularOperator, "internal solve failed");
  return {x.data(), x.data() + x.size()};
}

std::vector<double> InternalSolver::apply(const std::vector<double>& x) const {
  require(x.size() == n_, ErrorCode::DimMismatch, "vector size does not match the operator");
  std::vector<double> out(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    const auto at = [&](std::size_t k) { return x[(i + k) % n_]; };
    out[i] = diag_ * x[i] + off1_ * (at(n_ - 1) + at(1)) + off2_ * (at(n_ - 2) + at(2));
  }
  return out;
}

Contour resample(const Contour& c, double spacing) {
  require(spacing > 0.0, ErrorCode::InvalidArgument, "resample spacing must be > 0");
  const auto& pts = c.points();
  const std::size_t n = pts.size();
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = pts[i];
    const auto& b = pts[(i + 1) % n];
    cum[i + 1] = cum[i] + std::hypot(b.row - a.row, b.col - a.col);
  }
  const double perimeter = cum[n];
  const auto count = std::max<std::size_t>(8, static_cast<std::size_t>(std::llround(perimeter / spacing)));

  std::vector<PixelPoint> out;
  out.reserve(count);
  std::size_t seg = 0;
  for (std::size_t k = 0; k < count; ++k) {
    const double s = perimeter * static_cast<double>(k) / static_cast<double>(count);
    while (seg + 1 < n && cum[seg + 1] <= s) ++seg;
    const auto& a = pts[seg];
    const auto& b = pts[(seg + 1) % n];
    const double len = cum[seg + 1] - cum[seg];
    const double t = len > 0.0 ? (s - cum[seg]) / len : 0.0;
    out.push_back({a.row + t * (b.row - a.row), a.col + t * (b.col - a.col)});
  }
  return Contour(std::move(out));
}

namespace {

std::vector<PixelPoint> take_points(const std::vector<double>& rows, const std::vector<double>& cols) {
  std::vector<PixelPoint> pts(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) pts[i] = {rows[i], cols[i]};
  return pts;
}

// Drops points that coincide with their predecessor so the polyline stays a valid Contour.
Contour to_contour(std::vector<PixelPoint> pts) {
  std::vector<PixelPoint> kept;
  kept.reserve(pts.size());
  for (const auto& p : pts) {
    if (!kept.empty() && std::hypot(p.row - kept.back().row, p.col - kept.back().col) <= 1e-9) continue;
    kept.push_back(p);
  }
  while (kept.size() > 1 && std::hypot(kept.front().row - kept.back().row, kept.front().col - kept.back().col) <= 1e-9) {
    kept.pop_back();
  }
  require(kept.size() >= 3, ErrorCode::Collapsed, "snake collapsed to fewer than 3 distinct points");
  return Contour(std::move(kept));
}

}  // namespace

EvolveResult evolve(const Contour& init, const VectorField& field, const BinaryMask* mask, const SnakeParams& params) {
  params.validate();
  require(field.u.same_shape(field.v) && !field.u.empty(), ErrorCode::DimMismatch, "external field components must match");
  if (mask != nullptr) require(mask->same_shape(field.u), ErrorCode::DimMismatch, "mask must match the field dims");

  const double rows = static_cast<double>(field.u.rows());
  const double cols = static_cast<double>(field.u.cols());

  EvolveResult result;
  Contour contour = resample(init.counter_clockwise(), params.resample_spacing);
  InternalSolver solver(contour.size(), params.alpha, params.beta, params.gamma);

  for (std::size_t it = 1; it <= params.max_iters; ++it) {
    const std::size_t n = contour.size();
    SnakeState state;

    std::vector<Vec2> balloon;
    if (mask != nullptr) {
      balloon = improved_balloon(contour, *mask, params.kappa, &state.balloon_sign);
    } else if (params.kappa > 0.0) {
      balloon = classic_balloon(contour, params.kappa);
    }

    std::vector<double> rhs_row(n), rhs_col(n);
    for (std::size_t i = 0; i < n; ++i) {
      const auto& p = contour[i];
      double f_row = sample_bilinear(field.v, p.row, p.col);
      double f_col = sample_bilinear(field.u, p.row, p.col);
      if (!balloon.empty()) {
        f_row += balloon[i].row;
        f_col += balloon[i].col;
      }
      rhs_row[i] = p.row + params.gamma * f_row;
      rhs_col[i] = p.col + params.gamma * f_col;
    }
    const auto new_row = solver.solve(rhs_row);
    const auto new_col = solver.solve(rhs_col);

    const auto check_row = solver.apply(new_row);
    const auto check_col = solver.apply(new_col);
    double residual = 0.0;
    double move = 0.0;
    constexpr double kInf = std::numeric_limits<double>::infinity();
    double min_r = kInf, max_r = -kInf, min_c = kInf, max_c = -kInf;
    for (std::size_t i = 0; i < n; ++i) {
      require(std::isfinite(new_row[i]) && std::isfinite(new_col[i]), ErrorCode::NonFinite, "snake point became non-finite");
      residual = std::max({residual, std::abs(check_row[i] - rhs_row[i]), std::abs(check_col[i] - rhs_col[i])});
      move = std::max(move, std::hypot(new_row[i] - contour[i].row, new_col[i] - contour[i].col));
      min_r = std::min(min_r, new_row[i]);
      max_r = std::max(max_r, new_row[i]);
      min_c = std::min(min_c, new_col[i]);
      max_c = std::max(max_c, new_col[i]);
    }
    require(!(max_r < 0.0 || min_r > rows || max_c < 0.0 || min_c > cols), ErrorCode::Diverged,
            "snake left the raster extent");

    contour = to_contour(take_points(new_row, new_col));
    require(contour.area() >= 1.0, ErrorCode::Collapsed, "snake enclosed area fell below 1 px^2");
    if (it % kResamplePeriod == 0) {
      contour = resample(contour.counter_clockwise(), params.resample_spacing);
    }
    if (contour.size() != solver.size()) solver = InternalSolver(contour.size(), params.alpha, params.beta, params.gamma);

    state.contour = contour;
    state.iteration = it;
    state.last_move = move;
    state.solve_residual = residual;
    result.history.push_back(std::move(state));

    if (move < params.convergence_tol) {
      result.converged = true;
      break;
    }
  }
  result.contour = std::move(contour);
  return result;
}

}  // namespace srsm::snake
