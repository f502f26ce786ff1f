#pragma once

#include <optional>
#include <vector>

#include "lovewave/linalg.hpp"
#include "lovewave/operators.hpp"

namespace lovewave {

struct QuadratureConfig {
  int nodes_per_panel = 64;
  double abs_tol = 1e-12;
  double rel_tol = 1e-12;
  int initial_panels = 4;
  int max_depth = 48;
  // Largest admissible condition number of X_theta at any node.
  double max_condition = 1e12;
};

template <int N>
struct ImpedanceResult {
  ComplexMatrix<N> M;  // Hermitian-symmetrized
  double v = 0.0;
  double k = 0.0;
  double quad_error_estimate = 0.0;  // summed panel disagreement, relative to scale
  double hermitian_deviation = 0.0;  // ||M - M^H|| / (1 + ||M||) before symmetrization
  double riccati_residual = 0.0;     // Frobenius norm, absolute
  double max_condition = 0.0;        // worst X_theta condition number seen
  int panels = 0;
  int evaluations = 0;
};

template <int N>
struct DecayMatrix {
  ComplexMatrix<N> E;
  ComplexVector<N> eigenvalues;
  double min_real_part = 0.0;
};

// Gauss-Legendre nodes and weights on [-1, 1], ascending.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int n);

template <int N>
struct RotationIntegrals {
  RealMatrix<N> inv;    // int_0^pi X_theta^{-1} dtheta
  RealMatrix<N> cross;  // int_0^pi X_theta^{-1} Y_theta^T dtheta
  double error_estimate = 0.0;  // summed panel disagreement, relative to scale
  double max_condition = 0.0;   // worst X_theta condition number seen
  int panels = 0;
  int evaluations = 0;
};

// Adaptive composite Gauss-Legendre on [0, pi]. Same errors as impedance_matrix.
template <int N>
RotationIntegrals<N> rotation_integrals(const RiccatiSystem<N>& sys, double v,
                                        const QuadratureConfig& quad = {});

// M = (int_0^pi X_theta^{-1})^{-1} (pi I - i int_0^pi X_theta^{-1} Y_theta^T).
// Throws SpeedOutOfRange for v < 0, v >= v_hat (when given) or when some X_theta
// is not positive definite, and QuadratureNotConverged when refinement runs out
// or X_theta becomes too ill-conditioned.
template <int N>
ImpedanceResult<N> impedance_matrix(const RiccatiSystem<N>& sys, double v,
                                    const QuadratureConfig& quad = {},
                                    std::optional<double> v_hat = std::nullopt);

// Frobenius norm of (M - iY) X^{-1} (M + iY^T) - Z + k^2 v^2 I.
template <int N>
double riccati_residual(const ComplexMatrix<N>& M, const RiccatiSystem<N>& sys, double v);

// E = X^{-1} (M + i Y^T). Throws NotStabilizing if min Re eig(E) <= 0.
template <int N>
DecayMatrix<N> decay_matrix(const ImpedanceResult<N>& res, const RiccatiSystem<N>& sys);

// Frobenius norm of X E^2 - i (Y + Y^T) E - Z + k^2 v^2 I, divided by the sum
// of the norms of the four terms.
template <int N>
double quadratic_residual(const ComplexMatrix<N>& E, const RiccatiSystem<N>& sys, double v);

// Central difference (M(v+h) - M(v-h)) / (2h), Hermitian-symmetrized.
template <int N>
ComplexMatrix<N> impedance_derivative(const RiccatiSystem<N>& sys, double v, double h,
                                      const QuadratureConfig& quad = {},
                                      std::optional<double> v_hat = std::nullopt);

}  // namespace lovewave
