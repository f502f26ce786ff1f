#include "lovewave/classical.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "lovewave/error.hpp"
#include "lovewave/limiting.hpp"

namespace lovewave {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void require_admissible(const ClassicalMicroParams& m, double v) {
  if (!(v >= 0.0) || !classical_admissible(m, v)) {
    throw Error(ErrorCode::DomainViolation,
                "speed " + fmt(v) + " outside the admissible range [0, " +
                    fmt(classical_speed_bound(m)) + ")");
  }
}

// pi (x + y - x y) / (v^2 (1 + sqrt((1-x)(1-y))) sqrt(1-x)) with its v -> 0 limit.
double stable_entry(double A, double B, double c, double v) {
  const double c2 = c * c;
  const double x = v * v / (A * c2);
  const double y = v * v / (B * c2);
  const double root = std::sqrt((1.0 - x) * (1.0 - y));
  // (x + y - x y) / v^2 = (1/A + 1/B - v^2 / (A B c^2)) / c^2
  const double ratio = (1.0 / A + 1.0 / B - v * v / (A * B * c2)) / c2;
  return kPi * ratio / ((1.0 + root) * std::sqrt(1.0 - x));
}

}  // namespace

bool classical_admissible(const ClassicalMicroParams& m, double v) {
  return v < classical_speed_bound(m);
}

double classical_speed_bound(const ClassicalMicroParams& m) {
  const double lo = std::min(2.0 * m.alpha1 + m.alpha3, m.alpha1 + m.alpha2);
  return lo > 0.0 ? m.c * std::sqrt(lo) : 0.0;
}

Matrix2 classical_block_integral(const ClassicalMicroParams& m, double v,
                                 const QuadratureConfig& quad) {
  require_admissible(m, v);
  return rotation_integrals(classical_micro_system(m, 1.0), v, quad).inv;
}

Matrix2 classical_block_integral_closed_form(const ClassicalMicroParams& m, double v) {
  require_admissible(m, v);
  const double A = 2.0 * m.alpha1 + m.alpha3;
  const double B = m.alpha1 + m.alpha2;
  Matrix2 out = Matrix2::Zero();
  out(0, 0) = stable_entry(A, B, m.c, v);
  out(1, 1) = stable_entry(B, A, m.c, v);
  return out;
}

Matrix2 classical_block_integral_textbook(const ClassicalMicroParams& m, double v) {
  require_admissible(m, v);
  if (!(v > 0.0)) throw Error(ErrorCode::DomainViolation, "textbook form is 0/0 at v = 0");
  const double A = 2.0 * m.alpha1 + m.alpha3;
  const double B = m.alpha1 + m.alpha2;
  const double c = m.c;
  const double c2 = c * c;
  const double v2 = v * v;
  Matrix2 out = Matrix2::Zero();
  out(0, 0) = kPi * (c2 * std::sqrt(A / (A * c2 - v2)) - std::sqrt(c2 - v2 / B)) / (c * v2);
  out(1, 1) = (kPi * c2 * std::sqrt(B / (B * c2 - v2)) - kPi * std::sqrt(c2 - v2 / A)) / (c * v2);
  return out;
}

double classical_secular_function(const ClassicalMicroParams& m, double v) {
  require_admissible(m, v);
  if (!(v > 0.0)) throw Error(ErrorCode::DomainViolation, "f_c is 0/0 at v = 0");
  const double A = 2.0 * m.alpha1 + m.alpha3;
  const double B = m.alpha1 + m.alpha2;
  const double a1 = m.alpha1;
  const double c2 = m.c * m.c;
  const double v2 = v * v;
  const double sB = std::sqrt(B / (B * c2 - v2));
  const double sA = std::sqrt(A / (A * c2 - v2));
  const double rA = std::sqrt(c2 - v2 / A);
  const double rB = std::sqrt(c2 - v2 / B);

  const double denom = (c2 * sB - rA) * (rB - c2 * sA);
  const double first = c2 * v2 * v2 * (c2 * sB * sA - 1.0);
  const double inner =
      v2 * (sB * (std::sqrt((B * c2 - v2) * (A * c2 - v2) / (B * A)) - 2.0 * c2) + rA) -
      2.0 * a1 * (c2 * sB - rA) * (std::sqrt((B * c2 - v2) * (c2 - v2 / A) / B) - c2);
  return (first + 2.0 * a1 * c2 * c2 * inner * sA) / denom;
}

ComplexMatrix<2> classical_micro_impedance(const ClassicalMicroParams& m, double v, double k,
                                           CurvatureCoupling coupling,
                                           const QuadratureConfig& quad) {
  require_admissible(m, v);
  return impedance_matrix(classical_micro_system(m, k, coupling), v, quad).M;
}

double classical_macro_impedance(double mu_e, double rho, double k, double v) {
  const double cT2 = mu_e / rho;
  if (!(v >= 0.0) || !(v * v < cT2)) {
    throw Error(ErrorCode::DomainViolation,
                "speed " + fmt(v) + " is not below c_T = " + fmt(std::sqrt(cT2)));
  }
  return k * k * std::sqrt(cT2) * std::sqrt(cT2 - v * v);
}

ClassicalRoot classical_micro_root(const ClassicalMicroParams& m, double k,
                                   CurvatureCoupling coupling, const SecularOptions& options) {
  const auto sys = classical_micro_system(m, k, coupling);
  ClassicalRoot out;
  out.v_hat = limiting_speed(sys).v_hat;
  out.secular = solve_secular(sys, out.v_hat, options);
  out.v0 = out.secular.v0;
  return out;
}

}  // namespace lovewave
