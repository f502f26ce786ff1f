#pragma once

#include <vector>

#include "lovewave/linalg.hpp"
#include "lovewave/operators.hpp"

namespace lovewave {

struct LimitingSpeedOptions {
  int theta_samples = 2048;
  // Golden-section stops once the angle bracket is narrower than this. The
  // speed error is quadratic in the bracket width.
  double refine_tol = 1e-10;
  // Grid covers [-pi/2 + edge_eps, pi/2 - edge_eps].
  double edge_eps = 1e-6;
};

struct LimitingSpeedResult {
  double v_hat = 0.0;
  double argmin_theta = 0.0;
  std::vector<double> branch_speeds_at_argmin;
  int grid_resolution = 0;
  double grid_min = 0.0;  // best speed on the grid before refinement
  int refinement_iterations = 0;
};

// Speeds v_theta = sqrt(lambda_i / (k^2 cos^2 theta)) from the eigenvalues of
// the propagation matrix, ascending. Requires |theta| < pi/2; throws
// NonPositiveEigenvalue if the propagation matrix is not positive definite.
template <int N>
std::vector<double> branch_speeds(const RiccatiSystem<N>& sys, double theta);

// Infimum over theta of the smallest branch speed: grid search followed by
// golden-section refinement around the best sample.
template <int N>
LimitingSpeedResult limiting_speed(const RiccatiSystem<N>& sys,
                                   const LimitingSpeedOptions& options = {});

// Roots r of det[r^2 X + r (Y + Y^T) + Z - k^2 v^2 I] from the companion
// linearization. Throws LinearizationSingular when X is numerically singular.
template <int N>
std::vector<Complex> characteristic_roots(const RiccatiSystem<N>& sys, double v);

// True iff some root has |Im r| <= real_tol (1 + |Re r|).
template <int N>
bool has_real_characteristic_root(const RiccatiSystem<N>& sys, double v,
                                  double real_tol = 1e-8);

}  // namespace lovewave
