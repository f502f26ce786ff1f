#include "lovewave/limiting.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "lovewave/error.hpp"

namespace lovewave {
namespace {

template <int N>
double smallest_branch_speed(const RiccatiSystem<N>& sys, double theta) {
  return branch_speeds(sys, theta).front();
}

}  // namespace

template <int N>
std::vector<double> branch_speeds(const RiccatiSystem<N>& sys, double theta) {
  const double c = std::cos(theta);
  if (!(std::abs(theta) < kPi / 2) || c <= 0.0) {
    throw Error(ErrorCode::DomainViolation,
                "branch speeds need |theta| < pi/2, got " + std::to_string(theta));
  }
  Eigen::SelfAdjointEigenSolver<RealMatrix<N>> eig(propagation_matrix(sys, theta),
                                                   Eigen::EigenvaluesOnly);
  const auto& lambda = eig.eigenvalues();
  if (!(lambda(0) > 0.0)) {
    throw Error(ErrorCode::NonPositiveEigenvalue,
                "propagation matrix eigenvalue " + std::to_string(lambda(0)) +
                    " at theta = " + std::to_string(theta));
  }
  const double denom = sys.k * sys.k * c * c;
  std::vector<double> speeds(static_cast<std::size_t>(lambda.size()));
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    speeds[static_cast<std::size_t>(i)] = std::sqrt(lambda(i) / denom);
  }
  return speeds;
}

template <int N>
LimitingSpeedResult limiting_speed(const RiccatiSystem<N>& sys,
                                   const LimitingSpeedOptions& options) {
  const int n = options.theta_samples;
  if (n < 3) {
    throw Error(ErrorCode::DegenerateGrid,
                "need at least 3 theta samples, got " + std::to_string(n));
  }
  const double lo = -kPi / 2 + options.edge_eps;
  const double hi = kPi / 2 - options.edge_eps;
  const double step = (hi - lo) / (n - 1);

  int best = 0;
  double best_speed = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    const double speed = smallest_branch_speed(sys, lo + i * step);
    if (speed < best_speed) {
      best_speed = speed;
      best = i;
    }
  }

  // Golden-section on the bracket formed by the neighbours of the best sample.
  double a = lo + std::max(best - 1, 0) * step;
  double b = lo + std::min(best + 1, n - 1) * step;
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - inv_phi * (b - a);
  double x2 = a + inv_phi * (b - a);
  double f1 = smallest_branch_speed(sys, x1);
  double f2 = smallest_branch_speed(sys, x2);
  int iterations = 0;
  while (b - a > options.refine_tol && iterations < 200) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = smallest_branch_speed(sys, x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = smallest_branch_speed(sys, x2);
    }
    ++iterations;
  }

  double theta_star = f1 <= f2 ? x1 : x2;
  double v_star = std::min(f1, f2);
  if (best_speed < v_star) {
    theta_star = lo + best * step;
    v_star = best_speed;
  }

  LimitingSpeedResult result;
  result.v_hat = v_star;
  result.argmin_theta = theta_star;
  result.branch_speeds_at_argmin = branch_speeds(sys, theta_star);
  result.grid_resolution = n;
  result.grid_min = best_speed;
  result.refinement_iterations = iterations;
  return result;
}

template <int N>
std::vector<Complex> characteristic_roots(const RiccatiSystem<N>& sys, double v) {
  constexpr int M = N == Eigen::Dynamic ? Eigen::Dynamic : 2 * N;
  using Companion = Eigen::Matrix<double, M, M>;
  const Eigen::Index n = sys.X.rows();

  Eigen::FullPivLU<RealMatrix<N>> lu(sys.X);
  const double x_norm = sys.X.cwiseAbs().maxCoeff();
  lu.setThreshold(1e-13);
  if (!lu.isInvertible() || x_norm == 0.0) {
    throw Error(ErrorCode::LinearizationSingular, "X is numerically singular");
  }
  const RealMatrix<N> z_tilde = sys.Z - sys.k * sys.k * v * v * RealMatrix<N>::Identity();
  const RealMatrix<N> y_sym = sys.Y + sys.Y.transpose();

  Companion companion = Companion::Zero(2 * n, 2 * n);
  companion.topRightCorner(n, n).setIdentity();
  companion.bottomLeftCorner(n, n) = -lu.solve(z_tilde);
  companion.bottomRightCorner(n, n) = -lu.solve(y_sym);

  Eigen::EigenSolver<Companion> eig(companion, false);
  if (eig.info() != Eigen::Success) {
    throw Error(ErrorCode::LinearizationSingular, "companion eigen-solver failed");
  }
  std::vector<Complex> roots(static_cast<std::size_t>(2 * n));
  for (Eigen::Index i = 0; i < 2 * n; ++i) roots[static_cast<std::size_t>(i)] = eig.eigenvalues()(i);
  return roots;
}

template <int N>
bool has_real_characteristic_root(const RiccatiSystem<N>& sys, double v, double real_tol) {
  const auto roots = characteristic_roots(sys, v);
  return std::any_of(roots.begin(), roots.end(), [&](const Complex& r) {
    return std::abs(r.imag()) <= real_tol * (1.0 + std::abs(r.real()));
  });
}

#define LOVEWAVE_INSTANTIATE_LIMITING(N)                                                   \
  template std::vector<double> branch_speeds<N>(const RiccatiSystem<N>&, double);         \
  template LimitingSpeedResult limiting_speed<N>(const RiccatiSystem<N>&,                  \
                                                 const LimitingSpeedOptions&);             \
  template std::vector<Complex> characteristic_roots<N>(const RiccatiSystem<N>&, double); \
  template bool has_real_characteristic_root<N>(const RiccatiSystem<N>&, double, double);

LOVEWAVE_INSTANTIATE_LIMITING(1)
LOVEWAVE_INSTANTIATE_LIMITING(2)
LOVEWAVE_INSTANTIATE_LIMITING(3)

#undef LOVEWAVE_INSTANTIATE_LIMITING

}  // namespace lovewave
