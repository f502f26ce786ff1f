#include "lovewave/operators.hpp"

#include <cmath>
#include <string>

#include "lovewave/error.hpp"

namespace lovewave {
namespace {

double coupling_power(double k, CurvatureCoupling coupling) {
  return coupling == CurvatureCoupling::Quadratic ? k * k : k;
}

}  // namespace

OperatorTriple build_raw_triple(const WaveContext& ctx, CurvatureCoupling coupling) {
  const auto& p = ctx.params;
  require_wave_conditions(p);
  if (!(ctx.k > 0.0)) throw Error(ErrorCode::DomainViolation, "k must be positive");

  const double k = ctx.k;
  const double k2 = k * k;
  const double kc = coupling_power(k, coupling);

  OperatorTriple t;
  t.k = k;
  t.coupling = coupling;

  t.X.setZero();
  t.X.diagonal() << k2 * (p.mu_e + p.mu_c), k2 * (p.a1 + p.a2), k2 * (2.0 * p.a1 + p.a3);

  t.Y.setZero();
  t.Y(1, 0) = -2.0 * p.mu_c * k;
  t.Y(1, 2) = kc * p.a3;
  t.Y(2, 1) = kc * (p.a1 - p.a2);

  t.Z.setZero();
  t.Z(0, 0) = k2 * (p.mu_e + p.mu_c);
  t.Z(1, 1) = k2 * (2.0 * p.a1 + p.a3) + 4.0 * p.mu_c;
  t.Z(2, 2) = k2 * (p.a1 + p.a2) + 4.0 * p.mu_c;
  t.Z(0, 2) = t.Z(2, 0) = 2.0 * k * p.mu_c;

  t.Ihat.setZero();
  t.Ihat.diagonal() << p.rho, p.rho * p.J, p.rho * p.J;

  const Eigen::Vector3d inv_sqrt = t.Ihat.diagonal().cwiseSqrt().cwiseInverse();
  // s_i s_j is formed first so symmetric inputs stay bitwise symmetric.
  const Matrix3 weights = inv_sqrt * inv_sqrt.transpose();
  const auto scale = [&](const Matrix3& m) -> Matrix3 { return weights.cwiseProduct(m); };
  t.scaled_X = scale(t.X);
  t.scaled_Y = scale(t.Y);
  t.scaled_Z = scale(t.Z);
  return t;
}

OperatorTriple build_scaled_triple(const WaveContext& ctx, CurvatureCoupling coupling) {
  return build_raw_triple(ctx, coupling);
}

Matrix3 acoustic_tensor(const WaveContext& ctx, double xi1, double xi2) {
  const double norm = std::hypot(xi1, xi2);
  if (std::abs(norm - 1.0) > 1e-12) {
    throw Error(ErrorCode::NonUnitDirection, "|xi| = " + std::to_string(norm));
  }
  const auto& p = ctx.params;
  const double k = ctx.k;
  const double k2 = k * k;

  Matrix3 q;
  q(0, 0) = k2 * (p.mu_e + p.mu_c);
  q(0, 1) = q(1, 0) = -2.0 * p.mu_c * k * xi2;
  q(0, 2) = q(2, 0) = 2.0 * p.mu_c * k * xi1;
  q(1, 1) = k2 * ((2.0 * p.a1 + p.a3) * xi1 * xi1 + (p.a1 + p.a2) * xi2 * xi2) + 4.0 * p.mu_c;
  q(2, 2) = k2 * ((p.a1 + p.a2) * xi1 * xi1 + (2.0 * p.a1 + p.a3) * xi2 * xi2) + 4.0 * p.mu_c;
  q(1, 2) = q(2, 1) = k2 * (p.a1 - p.a2 + p.a3) * xi1 * xi2;

  const Eigen::Vector3d inv_sqrt =
      Eigen::Vector3d(p.rho, p.rho * p.J, p.rho * p.J).cwiseSqrt().cwiseInverse();
  return (inv_sqrt * inv_sqrt.transpose()).cwiseProduct(q);
}

ClassicalMicroParams ClassicalMicroParams::from_material(const MaterialParams& p) {
  const double inertia = p.rho * p.J;
  return ClassicalMicroParams{p.a1 / inertia, p.a2 / inertia, p.a3 / inertia, 1.0};
}

ClassicalMicroParams ClassicalMicroParams::with_c(double c_new) const {
  ClassicalMicroParams out = *this;
  out.c = c_new;
  return out;
}

ClassicalBlocks classical_limit_triple(const WaveContext& ctx, double v, double theta,
                                       CurvatureCoupling coupling) {
  return classical_limit_triple(ClassicalMicroParams::from_material(ctx.params),
                                ctx.params.mu_e, ctx.params.rho, ctx.k, v, theta,
                                coupling);
}

ClassicalBlocks classical_limit_triple(const ClassicalMicroParams& m, double mu_e,
                                       double rho, double k, double v, double theta,
                                       CurvatureCoupling coupling) {
  const double s = std::sin(theta);
  const double co = std::cos(theta);
  const double c2 = m.c * m.c;
  const double k2 = k * k;
  const double kc = coupling_power(k, coupling);
  const double v2 = v * v;
  const double mixed = m.alpha1 - m.alpha2 + m.alpha3;

  ClassicalBlocks out;
  out.macro_X = k2 * (mu_e - rho * v2 * s * s) / rho;
  out.macro_Y = k2 * v2 * s * co;

  out.A(0, 0) = k2 * (m.alpha2 * c2 * co * co - 0.5 * m.alpha1 * c2 * (std::cos(2.0 * theta) - 3.0) +
                      s * s * (m.alpha3 * c2 - v2));
  out.A(0, 1) = out.A(1, 0) = -mixed * c2 * kc * s * co;
  out.A(1, 1) = 0.5 * k2 *
                (c2 * (m.alpha1 * (std::cos(2.0 * theta) + 3.0) +
                       2.0 * (m.alpha2 * s * s + m.alpha3 * co * co)) -
                 2.0 * v2 * s * s);

  out.B(0, 0) = k2 * s * co * (v2 - mixed * c2);
  out.B(0, 1) = c2 * kc * ((m.alpha2 - m.alpha1) * s * s + m.alpha3 * co * co);
  out.B(1, 0) = c2 * kc * ((m.alpha1 - m.alpha2) * co * co - m.alpha3 * s * s);
  out.B(1, 1) = k2 * s * co * (mixed * c2 + v2);
  return out;
}

RiccatiSystem<2> classical_micro_system(const ClassicalMicroParams& m, double k,
                                        CurvatureCoupling coupling) {
  const double c2 = m.c * m.c;
  const double k2 = k * k;
  const double kc = coupling_power(k, coupling);
  RiccatiSystem<2> sys;
  sys.k = k;
  sys.X << k2 * c2 * (m.alpha1 + m.alpha2), 0.0, 0.0, k2 * c2 * (2.0 * m.alpha1 + m.alpha3);
  sys.Y << 0.0, kc * c2 * m.alpha3, kc * c2 * (m.alpha1 - m.alpha2), 0.0;
  sys.Z << k2 * c2 * (2.0 * m.alpha1 + m.alpha3), 0.0, 0.0, k2 * c2 * (m.alpha1 + m.alpha2);
  return sys;
}

RiccatiSystem<1> classical_macro_system(double mu_e, double rho, double k) {
  RiccatiSystem<1> sys;
  sys.k = k;
  sys.X(0, 0) = k * k * mu_e / rho;
  sys.Y(0, 0) = 0.0;
  sys.Z(0, 0) = k * k * mu_e / rho;
  return sys;
}

}  // namespace lovewave
