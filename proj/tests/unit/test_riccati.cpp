#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Eigenvalues>

#include "fixtures.hpp"
#include "lovewave/classical.hpp"
#include "lovewave/error.hpp"
#include "lovewave/limiting.hpp"
#include "lovewave/riccati.hpp"

using namespace lovewave;
using lovewave::testing::foam_system;
using lovewave::testing::identity_system;
using lovewave::testing::synthetic_family;

namespace {

constexpr double kV0 = 1.52374204511;

ComplexMatrix3 reference_impedance() {
  const Complex i(0.0, 1.0);
  ComplexMatrix3 M;
  M << 78.92996132702877, 1.571343539151161 * i, 1.971330465220131,
      -1.571343539151161 * i, 8.968058122320638, -9.11569303802329 * i,
      1.971330465220131, 9.11569303802329 * i, 9.267537853294720;
  return M;
}

Eigen::Vector3d hermitian_eigenvalues(const ComplexMatrix3& M) {
  return Eigen::SelfAdjointEigenSolver<ComplexMatrix3>(M).eigenvalues();
}

}  // namespace

TEST(Quadrature, GaussLegendreRule) {
  for (int n : {1, 2, 5, 64}) {
    const auto rule = gauss_legendre(n);
    double sum = 0.0;
    for (double w : rule.weights) sum += w;
    EXPECT_NEAR(sum, 2.0, 1e-14);
    // Exact for polynomials of degree 2n - 1.
    const int d = 2 * n - 2;
    double moment = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) moment += rule.weights[i] * std::pow(rule.nodes[i], d);
    EXPECT_NEAR(moment, 2.0 / (d + 1), 1e-14);
  }
  EXPECT_THROW(gauss_legendre(0), Error);
}

TEST(Riccati, IdentityAtRest) {
  const auto r = impedance_matrix(identity_system<3>(), 0.0);
  EXPECT_LT((r.M - ComplexMatrix3::Identity()).norm(), 1e-13);
  EXPECT_LT(r.riccati_residual, 1e-13);
}

TEST(Riccati, ReproducesReferenceFoamImpedance) {
  const auto r = impedance_matrix(foam_system(), 1.523742045114);
  const auto P = reference_impedance();
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double re = P(i, j).real(), im = P(i, j).imag();
      if (re != 0.0) EXPECT_NEAR(r.M(i, j).real(), re, 1e-5 * std::abs(re)) << i << j;
      else EXPECT_NEAR(r.M(i, j).real(), 0.0, 1e-9);
      if (im != 0.0) EXPECT_NEAR(r.M(i, j).imag(), im, 1e-5 * std::abs(im)) << i << j;
      else EXPECT_NEAR(r.M(i, j).imag(), 0.0, 1e-9);
    }
  }
}

TEST(Riccati, ResidualAtHalfLimitingSpeed) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  const auto r = impedance_matrix(sys, 0.5 * v_hat);
  EXPECT_LE(r.riccati_residual, 1e-8 * sys.Z.norm());
}

TEST(Riccati, ResidualExamples) {
  const auto sys = identity_system<3>();
  EXPECT_EQ(riccati_residual<3>(ComplexMatrix3::Identity(), sys, 0.0), 0.0);
  ComplexMatrix3 M = ComplexMatrix3::Identity();
  M(0, 0) += 0.1;
  EXPECT_NEAR(riccati_residual<3>(M, sys, 0.0), 0.21, 1e-14);
  const auto foam = foam_system();
  EXPECT_LE(riccati_residual<3>(reference_impedance(), foam, kV0), 1e-6 * foam.Z.norm());
}

TEST(Riccati, DecayMatrixIdentity) {
  const auto sys = identity_system<3>();
  const auto d = decay_matrix(impedance_matrix(sys, 0.0), sys);
  EXPECT_LT((d.E - ComplexMatrix3::Identity()).norm(), 1e-13);
  for (int i = 0; i < 3; ++i) EXPECT_NEAR(d.eigenvalues(i).real(), 1.0, 1e-13);
  EXPECT_NEAR(d.min_real_part, 1.0, 1e-13);
}

TEST(Riccati, DecayMatrixFoam) {
  const auto sys = foam_system();
  const auto d = decay_matrix(impedance_matrix(sys, 1.523742045114), sys);
  EXPECT_GT(d.min_real_part, 0.0);
  const auto d1 = decay_matrix(impedance_matrix(sys, 1.0), sys);
  EXPECT_LE(quadratic_residual<3>(d1.E, sys, 1.0), 1e-8);
}

TEST(Riccati, NotStabilizing) {
  const auto sys = identity_system<3>();
  ImpedanceResult<3> fake;
  fake.M = -ComplexMatrix3::Identity();
  try {
    decay_matrix(fake, sys);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotStabilizing);
  }
}

TEST(Riccati, SpeedOutOfRange) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  for (double v : {-1.0, 1.5 * v_hat}) {
    try {
      impedance_matrix(sys, v);
      FAIL() << v;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::SpeedOutOfRange) << v;
    }
  }
  EXPECT_THROW(impedance_matrix(sys, v_hat, {}, v_hat), Error);
  EXPECT_NO_THROW(impedance_matrix(sys, 0.99 * v_hat, {}, v_hat));
}

TEST(Riccati, DerivativeNegativeDefinite) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  const auto D = impedance_derivative(sys, 0.5 * v_hat, 1e-5 * v_hat);
  EXPECT_LT(hermitian_eigenvalues(D).maxCoeff(), 0.0);
  EXPECT_LT((D - D.adjoint()).norm(), 1e-14 * D.norm());
}

TEST(Riccati, DerivativeStencilDomain) {
  const auto sys = foam_system();
  try {
    impedance_derivative(sys, 0.1, 0.2);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SpeedOutOfRange);
  }
}

TEST(Riccati, IdentityImpedanceDecreases) {
  const auto sys = identity_system<3>();
  double prev = 1e300;
  for (int i = 0; i < 10; ++i) {
    const double m = impedance_matrix(sys, 0.1 * i).M(0, 0).real();
    EXPECT_LT(m, prev);
    // Closed form for decoupled unit entries: sqrt(1 - v^2).
    EXPECT_NEAR(m, std::sqrt(1.0 - 0.01 * i * i), 1e-12);
    prev = m;
  }
}

TEST(Riccati, DerivativeIsSecondOrder) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  const double v = 0.5 * v_hat, h = 0.04 * v_hat;
  const auto d1 = impedance_derivative(sys, v, h);
  const auto d2 = impedance_derivative(sys, v, h / 2);
  const auto d3 = impedance_derivative(sys, v, h / 4);
  const double ratio = (d1 - d2).norm() / (d2 - d3).norm();
  EXPECT_GT(ratio, 3.5);
  EXPECT_LT(ratio, 4.5);
}

TEST(Riccati, ScalarBlockClosedForm) {
  const double mu_e = 104, rho = 0.34, k = 0.5;
  const auto sys = classical_macro_system(mu_e, rho, k);
  for (double v : {0.0, 3.0, 10.0, 17.0}) {
    const auto r = impedance_matrix(sys, v);
    EXPECT_NEAR(r.M(0, 0).real(), classical_macro_impedance(mu_e, rho, k, v),
                1e-11 * classical_macro_impedance(mu_e, rho, k, 0.0));
    EXPECT_NEAR(r.M(0, 0).imag(), 0.0, 1e-12);
  }
}

TEST(Riccati, QuadratureConverged) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  for (double f : {0.1, 0.5, 0.9, 0.999}) {
    QuadratureConfig fine;
    fine.nodes_per_panel = 128;
    const auto a = impedance_matrix(sys, f * v_hat);
    const auto b = impedance_matrix(sys, f * v_hat, fine);
    EXPECT_LE((a.M - b.M).norm(), 1e-10 * b.M.norm()) << f;
    EXPECT_LE(a.quad_error_estimate, 1e-10);
  }
}

TEST(Riccati, NearLimitingSpeedStillEvaluates) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  const auto r = impedance_matrix(sys, v_hat * (1 - 1e-9));
  EXPECT_TRUE(r.M.allFinite());
  EXPECT_GT(r.max_condition, 1e8);
}

TEST(Riccati, ConditionCeiling) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  QuadratureConfig q;
  q.max_condition = 1e3;
  try {
    impedance_matrix(sys, 0.9999 * v_hat, q);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::QuadratureNotConverged);
  }
}

TEST(Riccati, PropertiesOnFoamAndSynthetics) {
  std::vector<RiccatiSystem<3>> systems{foam_system()};
  for (const auto& s : synthetic_family(5, 2024)) {
    systems.push_back(build_scaled_triple(make_wave_context(s.params, s.k)).system());
  }
  std::mt19937_64 rng(42);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& sys : systems) {
    const double v_hat = limiting_speed(sys).v_hat;
    for (int i = 0; i < 20; ++i) {
      const double v = u(rng) * v_hat * (1 - 1e-6);
      const auto r = impedance_matrix(sys, v);
      EXPECT_LE(r.hermitian_deviation, 1e-10);
      EXPECT_LE((r.M - r.M.adjoint()).norm(), 1e-10 * (1 + r.M.norm()));
      EXPECT_LE(r.riccati_residual, 1e-8 * (1 + sys.Z.norm()));
      const auto d = decay_matrix(r, sys);
      EXPECT_GT(d.min_real_part, 0.0);
      EXPECT_LE(quadratic_residual<3>(d.E, sys, v), 1e-8);
    }
  }
}
