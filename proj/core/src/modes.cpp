#include "lovewave/modes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

#include "lovewave/error.hpp"

namespace lovewave {
namespace {

constexpr double kFallbackCondition = 1e8;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double spectral_norm(const Matrix3& A) {
  return Eigen::JacobiSVD<Matrix3>(A).singularValues()(0);
}

Eigen::Vector3d inv_sqrt_diag(const Matrix3& Ihat) {
  return Ihat.diagonal().cwiseSqrt().cwiseInverse();
}

}  // namespace

template <int N>
ComplexVector<N> surface_amplitude(const ComplexMatrix<N>& M, double singular_tol) {
  Eigen::JacobiSVD<ComplexMatrix<N>> svd(M, Eigen::ComputeFullV);
  const auto& sigma = svd.singularValues();
  const Eigen::Index last = sigma.size() - 1;
  const double ratio = sigma(0) > 0.0 ? sigma(last) / sigma(0) : 0.0;
  if (ratio > singular_tol) {
    throw Error(ErrorCode::NotSingular,
                "sigma_min / sigma_max = " + fmt(ratio) + " exceeds " + fmt(singular_tol));
  }
  ComplexVector<N> y = svd.matrixV().col(last);
  y /= y.norm();
  if (std::abs(y(0)) > 1e-8) y /= y(0);
  return y;
}

SurfaceWaveSolution make_solution(const OperatorTriple& triple, const MaterialParams& params,
                                  const ImpedanceResult<3>& impedance, double singular_tol) {
  SurfaceWaveSolution sol;
  sol.v0 = impedance.v;
  sol.k = impedance.k;
  sol.system = triple.system();
  sol.M = impedance.M;
  sol.y0 = surface_amplitude<3>(impedance.M, singular_tol);
  sol.E = decay_matrix(impedance, sol.system);
  sol.Ihat = triple.Ihat;
  sol.params = params;
  return sol;
}

DecayPropagator::DecayPropagator(const ComplexMatrix3& E, double k) : E_(E), k_(k) {
  Eigen::ComplexEigenSolver<ComplexMatrix3> eig(E);
  V_ = eig.eigenvectors();
  lambda_ = eig.eigenvalues();
  const auto sigma = Eigen::JacobiSVD<ComplexMatrix3>(V_).singularValues();
  condition_ = sigma(2) > 0.0 ? sigma(0) / sigma(2) : std::numeric_limits<double>::infinity();
  fallback_ = !(condition_ <= kFallbackCondition);
  if (!fallback_) V_inv_ = V_.inverse();
}

ComplexVector3 DecayPropagator::apply(double x2, const ComplexVector3& y0) const {
  if (x2 == 0.0) return y0;
  if (fallback_) {
    const ComplexMatrix3 A = Complex(-k_ * x2) * E_;
    return A.exp() * y0;
  }
  ComplexVector3 w = V_inv_ * y0;
  for (int i = 0; i < 3; ++i) w(i) *= std::exp(-k_ * x2 * lambda_(i));
  return V_ * w;
}

DepthProfile depth_profile(const SurfaceWaveSolution& sol, const std::vector<double>& depths) {
  const DecayPropagator prop(sol.E.E, sol.k);
  const Eigen::Vector3d scale = inv_sqrt_diag(sol.Ihat);
  DepthProfile out;
  out.depths = depths;
  out.used_fallback = prop.uses_fallback();
  out.eigenbasis_condition = prop.eigenbasis_condition();
  out.beta = sol.E.min_real_part;
  out.y_values.reserve(depths.size());
  out.z_values.reserve(depths.size());
  for (double x2 : depths) {
    const ComplexVector3 y = prop.apply(x2, sol.y0);
    out.y_values.push_back(y);
    out.z_values.push_back(scale.cast<Complex>().asDiagonal() * y);
  }
  return out;
}

bool decay_envelope_holds(const SurfaceWaveSolution& sol, const DepthProfile& profile,
                          double slack) {
  const double y0 = sol.y0.norm();
  for (std::size_t i = 0; i < profile.depths.size(); ++i) {
    const double bound = slack * y0 * profile.eigenbasis_condition *
                         std::exp(-sol.k * profile.beta * profile.depths[i]);
    if (profile.y_values[i].norm() > bound) return false;
  }
  return true;
}

std::vector<FieldSample> physical_fields(const SurfaceWaveSolution& sol,
                                         const std::vector<double>& x1_grid,
                                         const std::vector<double>& x2_grid, double t) {
  const DepthProfile profile = depth_profile(sol, x2_grid);
  const Complex i(0.0, 1.0);
  std::vector<FieldSample> out;
  out.reserve(x1_grid.size() * x2_grid.size());
  for (double x1 : x1_grid) {
    const Complex phase = std::exp(i * sol.k * (x1 - sol.v0 * t));
    for (std::size_t j = 0; j < x2_grid.size(); ++j) {
      const ComplexVector3& z = profile.z_values[j];
      FieldSample s;
      s.x1 = x1;
      s.x2 = x2_grid[j];
      s.t = t;
      s.u3 = (i * z(0) * phase).real();
      s.theta1 = (z(1) * phase).real();
      s.theta2 = (z(2) * phase).real();
      out.push_back(s);
    }
  }
  return out;
}

double boundary_residual(const SurfaceWaveSolution& sol) {
  const Complex i(0.0, 1.0);
  const double k = sol.k;
  const ComplexMatrix3 X = sol.system.X.cast<Complex>();
  const ComplexVector3 dy = -k * (sol.E.E * sol.y0);
  const ComplexVector3 r =
      X * dy / (k * k) + (i / k) * (sol.system.Y.transpose().cast<Complex>() * sol.y0);
  return r.norm() / (spectral_norm(sol.system.X) * sol.y0.norm());
}

double pde_residual(const SurfaceWaveSolution& sol, const std::vector<double>& depths) {
  const Complex i(0.0, 1.0);
  const double k = sol.k;
  const DecayPropagator prop(sol.E.E, k);
  const ComplexMatrix3 X = sol.system.X.cast<Complex>();
  const ComplexMatrix3 Ysym = (sol.system.Y + sol.system.Y.transpose()).cast<Complex>();
  const ComplexMatrix3 Z = sol.system.Z.cast<Complex>();
  double worst = 0.0;
  for (double x2 : depths) {
    const ComplexVector3 y = prop.apply(x2, sol.y0);
    const ComplexVector3 dy = -k * (sol.E.E * y);
    const ComplexVector3 ddy = -k * (sol.E.E * dy);
    const ComplexVector3 t1 = X * ddy / (k * k);
    const ComplexVector3 t2 = (i / k) * (Ysym * dy);
    const ComplexVector3 t3 = -(Z * y);
    const ComplexVector3 t4 = k * k * sol.v0 * sol.v0 * y;
    const double denom = t1.norm() + t2.norm() + t3.norm() + t4.norm();
    if (denom == 0.0) continue;
    worst = std::max(worst, (t1 + t2 + t3 + t4).norm() / denom);
  }
  return worst;
}

template ComplexVector<2> surface_amplitude<2>(const ComplexMatrix<2>&, double);
template ComplexVector<3> surface_amplitude<3>(const ComplexMatrix<3>&, double);

}  // namespace lovewave
