#pragma once

#include <cstddef>

#include "srsm/types.hpp"

namespace srsm::energy {

/// Separable Gaussian blur, kernel truncated at ceil(3 sigma) and renormalized, replicate borders.
ScalarField gaussian_smooth(const ScalarField& img, double sigma);

/// Central differences with replicate borders. x runs along columns, y along rows.
ScalarField diff_x(const ScalarField& f);
ScalarField diff_y(const ScalarField& f);

ScalarField e_line(const ScalarField& img, double sigma);
ScalarField e_edge(const ScalarField& img, double sigma);
ScalarField e_term(const ScalarField& img, double sigma);

/// Weighted sum of the three terms, min-max normalized to [0, 1] (all zeros when flat).
ScalarField e_img(const ScalarField& img, const SnakeParams& params);

/// Largest step for which the explicit diffusion scheme stays stable, with a 0.9 margin.
inline double gvf_default_dt(double mu_gvf) { return 0.9 / (4.0 * mu_gvf); }

/// Gradient vector flow of the edge map f, by explicit time stepping from (f_x, f_y).
VectorField gvf(const ScalarField& f, double mu_gvf, std::size_t iters, double dt);

/// -grad(E_img), the classic potential force.
VectorField potential_force(const ScalarField& e_img_field);

/// External force field fed to the snake: GVF of -E_img, or -grad(E_img).
VectorField external_field(const ScalarField& img, const SnakeParams& params);

}  // namespace srsm::energy
