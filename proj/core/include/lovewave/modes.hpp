#pragma once

#include <array>
#include <string>
#include <vector>

#include "lovewave/linalg.hpp"
#include "lovewave/material.hpp"
#include "lovewave/operators.hpp"
#include "lovewave/riccati.hpp"

namespace lovewave {

// Null vector of M from its smallest singular direction: unit norm, then
// rescaled so the first component is 1 when |y0_1| > 1e-8. Throws NotSingular
// when sigma_min / sigma_max exceeds singular_tol.
template <int N>
ComplexVector<N> surface_amplitude(const ComplexMatrix<N>& M, double singular_tol = 1e-8);

struct SurfaceWaveSolution {
  double v0 = 0.0;
  double k = 0.0;
  ComplexVector3 y0;
  DecayMatrix<3> E;
  Matrix3 Ihat;
  MaterialParams params;
  RiccatiSystem<3> system;  // mass-normalized triple the solution belongs to
  ComplexMatrix3 M;
};

SurfaceWaveSolution make_solution(const OperatorTriple& triple, const MaterialParams& params,
                                  const ImpedanceResult<3>& impedance,
                                  double singular_tol = 1e-8);

// y(x2) = exp(-k x2 E) y0. Uses the eigen-decomposition of E unless its
// eigenbasis condition number exceeds 1e8, then scaling and squaring.
class DecayPropagator {
 public:
  DecayPropagator(const ComplexMatrix3& E, double k);

  ComplexVector3 apply(double x2, const ComplexVector3& y0) const;
  bool uses_fallback() const { return fallback_; }
  double eigenbasis_condition() const { return condition_; }

 private:
  ComplexMatrix3 E_;
  ComplexMatrix3 V_;
  ComplexMatrix3 V_inv_;
  ComplexVector3 lambda_;
  double k_;
  double condition_ = 1.0;
  bool fallback_ = false;
};

struct DepthProfile {
  std::vector<double> depths;
  std::vector<ComplexVector3> y_values;
  std::vector<ComplexVector3> z_values;  // Ihat^{-1/2} y
  std::array<std::string, 3> physical_rows{"u3", "theta1", "theta2"};
  bool used_fallback = false;
  double eigenbasis_condition = 1.0;
  double beta = 0.0;  // min Re eig(E)
};

DepthProfile depth_profile(const SurfaceWaveSolution& sol, const std::vector<double>& depths);

// True iff ||y(x2)|| <= slack * ||y0|| kappa(V) exp(-k beta x2) at every depth.
bool decay_envelope_holds(const SurfaceWaveSolution& sol, const DepthProfile& profile,
                          double slack = 1.01);

struct FieldSample {
  double x1 = 0.0;
  double x2 = 0.0;
  double t = 0.0;
  double u3 = 0.0;
  double theta1 = 0.0;
  double theta2 = 0.0;
};

// Re[(i z_1, z_2, z_3) exp(i k (x1 - v0 t))] on the grid, x2 varying fastest.
std::vector<FieldSample> physical_fields(const SurfaceWaveSolution& sol,
                                         const std::vector<double>& x1_grid,
                                         const std::vector<double>& x2_grid, double t);

// ||X y'(0) / k^2 + i Y^T y(0) / k|| / (||X|| ||y0||) with y'(0) = -k E y0.
double boundary_residual(const SurfaceWaveSolution& sol);

// Max over depths of the relative ODE residual, derivatives taken through E.
double pde_residual(const SurfaceWaveSolution& sol, const std::vector<double>& depths);

}  // namespace lovewave
