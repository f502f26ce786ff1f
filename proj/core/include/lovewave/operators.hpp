#pragma once

#include <cmath>

#include "lovewave/linalg.hpp"
#include "lovewave/material.hpp"

namespace lovewave {

// Power of k carried by the two curvature-coupling entries Y(2,3) and Y(3,2).
//
// Quadratic follows the governing equations: Y23 = k^2 a3, Y32 = k^2 (a1 - a2).
// Linear uses k^1 on those two entries, which is the triple the reference
// tables were computed with. Both agree at k = 1.
enum class CurvatureCoupling { Quadratic, Linear };

// The reduced second-order system
//   X y''/k^2 + i (Y + Y^T) y'/k - Z y + k^2 v^2 y = 0,
//   X y'(0)/k^2 + i Y^T y(0)/k = 0,
// in mass-normalized form. All Riccati/limiting machinery is written against
// this type so the same code handles the 3x3 Love system and the decoupled
// 1x1 / 2x2 blocks of the classical limit.
template <int N>
struct RiccatiSystem {
  RealMatrix<N> X;
  RealMatrix<N> Y;
  RealMatrix<N> Z;
  double k = 1.0;
};

struct OperatorTriple {
  Matrix3 X;  // raw, symmetric
  Matrix3 Y;
  Matrix3 Z;  // raw, symmetric
  Matrix3 scaled_X;  // Ihat^{-1/2} X Ihat^{-1/2}
  Matrix3 scaled_Y;
  Matrix3 scaled_Z;
  Matrix3 Ihat;  // diag(rho, rho J, rho J)
  double k = 0.0;
  CurvatureCoupling coupling = CurvatureCoupling::Quadratic;

  RiccatiSystem<3> system() const { return {scaled_X, scaled_Y, scaled_Z, k}; }
};

template <int N>
struct RotatedTriple {
  RealMatrix<N> X_theta;
  RealMatrix<N> Y_theta;
  RealMatrix<N> Z_theta;  // rotated Z - k^2 v^2 I
  RealMatrix<N> Z_tilde;  // Z - k^2 v^2 I
  double theta = 0.0;
  double v = 0.0;
};

// Populates the raw and mass-normalized matrices. Throws InvalidMaterial when
// the wave conditions fail.
OperatorTriple build_raw_triple(const WaveContext& ctx,
                                CurvatureCoupling coupling = CurvatureCoupling::Quadratic);

OperatorTriple build_scaled_triple(const WaveContext& ctx,
                                   CurvatureCoupling coupling = CurvatureCoupling::Quadratic);

// Change of frame by the angle theta at speed v.
template <int N>
RotatedTriple<N> rotate_triple(const RiccatiSystem<N>& sys, double v, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const RealMatrix<N> z_tilde =
      sys.Z - sys.k * sys.k * v * v * RealMatrix<N>::Identity();
  const RealMatrix<N> y_sym = sys.Y + sys.Y.transpose();

  RotatedTriple<N> out;
  out.X_theta = c * c * sys.X - s * c * y_sym + s * s * z_tilde;
  out.Y_theta = c * c * sys.Y + s * c * (sys.X - z_tilde) - s * s * sys.Y.transpose();
  out.Z_theta = c * c * z_tilde + s * c * y_sym + s * s * sys.X;
  out.Z_tilde = z_tilde;
  out.theta = theta;
  out.v = v;
  return out;
}

// sin^2 X + sin cos (Y + Y^T) + cos^2 Z: the plane-wave propagation matrix
// for direction (cos theta, sin theta, 0) at wave number k cos theta, times
// cos^2 theta.
template <int N>
RealMatrix<N> propagation_matrix(const RiccatiSystem<N>& sys, double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  return s * s * sys.X + s * c * (sys.Y + sys.Y.transpose()) + c * c * sys.Z;
}

// Normalized plane-wave acoustic tensor Ihat^{-1/2} Q Ihat^{-1/2} for the
// in-plane unit direction xi = (xi1, xi2, 0). Its eigenvalues are omega^2.
// Throws NonUnitDirection when |xi| deviates from 1 by more than 1e-12.
Matrix3 acoustic_tensor(const WaveContext& ctx, double xi1, double xi2);

// Micro-rotation parameters of the mu_c -> 0 limit: every curvature modulus
// enters as alpha_i * c^2.
struct ClassicalMicroParams {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double alpha3 = 0.0;
  double c = 1.0;

  // alpha_i c^2 = a_i / (rho J) with the reference c = 1.
  static ClassicalMicroParams from_material(const MaterialParams& p);
  ClassicalMicroParams with_c(double c_new) const;
};

// Decoupled blocks of the rotated triple for mu_c -> 0: the 1x1 macro
// (displacement) block and the 2x2 micro-rotation blocks A_theta, B_theta.
struct ClassicalBlocks {
  double macro_X = 0.0;
  double macro_Y = 0.0;
  Matrix2 A;
  Matrix2 B;
};

ClassicalBlocks classical_limit_triple(const WaveContext& ctx, double v, double theta,
                                       CurvatureCoupling coupling = CurvatureCoupling::Quadratic);

ClassicalBlocks classical_limit_triple(const ClassicalMicroParams& micro, double mu_e,
                                       double rho, double k, double v, double theta,
                                       CurvatureCoupling coupling = CurvatureCoupling::Quadratic);

// The mu_c = 0 micro-rotation system (2x2) and the macro system (1x1).
RiccatiSystem<2> classical_micro_system(const ClassicalMicroParams& micro, double k,
                                        CurvatureCoupling coupling = CurvatureCoupling::Quadratic);
RiccatiSystem<1> classical_macro_system(double mu_e, double rho, double k);

}  // namespace lovewave
