#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <Eigen/Cholesky>

#include "fixtures.hpp"
#include "lovewave/error.hpp"
#include "lovewave/limiting.hpp"

using namespace lovewave;
using lovewave::testing::cubic_eigenvalues;
using lovewave::testing::foam_system;
using lovewave::testing::identity_system;
using lovewave::testing::synthetic_family;

namespace {

std::vector<RiccatiSystem<3>> material_set() {
  std::vector<RiccatiSystem<3>> out{foam_system()};
  for (const auto& s : synthetic_family(3, 101)) {
    out.push_back(build_scaled_triple(make_wave_context(s.params, s.k)).system());
  }
  return out;
}

// Smallest speed at which the real-root classifier turns true, scanned
// upward from 0.9999 v_hat in steps of 1e-7 v_hat.
double scan_flip(const RiccatiSystem<3>& sys, double v_hat) {
  const double step = 1e-7 * v_hat;
  double v = v_hat * (1.0 - 1e-4);
  while (!has_real_characteristic_root(sys, v)) v += step;
  return v;
}

}  // namespace

TEST(Limiting, BranchSpeedsIdentity) {
  const auto sys = identity_system<3>();
  for (double s : branch_speeds(sys, 0.0)) EXPECT_NEAR(s, 1.0, 1e-15);
  for (double s : branch_speeds(sys, 3.14159265358979323846 / 3)) EXPECT_NEAR(s, 2.0, 1e-14);
}

TEST(Limiting, BranchSpeedsFoamAgainstCubicOracle) {
  const auto sys = foam_system();
  const auto speeds = branch_speeds(sys, 0.0);
  ASSERT_EQ(speeds.size(), 3u);
  EXPECT_LE(speeds[0], speeds[1]);
  EXPECT_LE(speeds[1], speeds[2]);
  const auto lambda = cubic_eigenvalues(sys.Z);
  for (int i = 0; i < 3; ++i) {
    EXPECT_NEAR(speeds[static_cast<std::size_t>(i)], std::sqrt(lambda[static_cast<std::size_t>(i)]) / 0.5,
                1e-10 * speeds[2]);
  }
}

TEST(Limiting, BranchSpeedsErrors) {
  auto sys = identity_system<3>();
  sys.Z(0, 0) = -1.0;
  try {
    branch_speeds(sys, 0.0);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NonPositiveEigenvalue);
  }
  EXPECT_THROW(branch_speeds(identity_system<3>(), 1.6), Error);
}

TEST(Limiting, ScaledIdentity) {
  for (double a : {0.5, 4.0, 9.0}) {
    for (double k : {0.5, 1.0, 3.0}) {
      const auto r = limiting_speed(identity_system<3>(a, k));
      EXPECT_NEAR(r.v_hat, std::sqrt(a) / k, 1e-12 * std::sqrt(a) / k);
      EXPECT_NEAR(r.argmin_theta, 0.0, 1e-5);
    }
  }
}

TEST(Limiting, FoamValue) {
  const auto r = limiting_speed(foam_system());
  // Attained at normal incidence, where it is sqrt(lambda_min(Z)) / k.
  EXPECT_NEAR(r.argmin_theta, 0.0, 1e-5);
  EXPECT_NEAR(r.v_hat, std::sqrt(cubic_eigenvalues(foam_system().Z)[0]) / 0.5, 1e-12 * r.v_hat);
  EXPECT_NEAR(r.v_hat, 6.788667992209623, 1e-10);
  EXPECT_EQ(r.branch_speeds_at_argmin.size(), 3u);
  EXPECT_NEAR(r.branch_speeds_at_argmin[0], r.v_hat, 1e-12 * r.v_hat);
  EXPECT_EQ(r.grid_resolution, 2048);
  EXPECT_LE(r.v_hat, r.grid_min);
}

TEST(Limiting, DegenerateGrid) {
  LimitingSpeedOptions o;
  o.theta_samples = 2;
  try {
    limiting_speed(foam_system(), o);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DegenerateGrid);
  }
  o.theta_samples = 3;
  EXPECT_NO_THROW(limiting_speed(foam_system(), o));
}

TEST(Limiting, LowerDimensionalSystems) {
  EXPECT_NEAR(limiting_speed(identity_system<1>(4.0)).v_hat, 2.0, 1e-12);
  EXPECT_NEAR(limiting_speed(identity_system<2>(4.0, 2.0)).v_hat, 1.0, 1e-12);
}

TEST(Limiting, RealRootClassifierExamples) {
  const auto sys = foam_system();
  const double v_hat = limiting_speed(sys).v_hat;
  EXPECT_FALSE(has_real_characteristic_root(sys, 0.0));
  EXPECT_TRUE(has_real_characteristic_root(sys, 2.0 * v_hat));
  EXPECT_TRUE(has_real_characteristic_root(identity_system<3>(), 1.0));
  EXPECT_FALSE(has_real_characteristic_root(identity_system<3>(), 0.999));
}

TEST(Limiting, ClassifierNeedsInvertibleX) {
  auto sys = identity_system<3>();
  sys.X(2, 2) = 0.0;
  try {
    has_real_characteristic_root(sys, 0.5);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LinearizationSingular);
  }
}

TEST(Limiting, SexticRootsSolveTheCharacteristicEquation) {
  const auto sys = foam_system();
  const double v = 3.0;
  for (const Complex& r : characteristic_roots(sys, v)) {
    const ComplexMatrix3 P = r * r * sys.X.cast<Complex>() +
                             r * (sys.Y + sys.Y.transpose()).cast<Complex>() +
                             (sys.Z - sys.k * sys.k * v * v * Matrix3::Identity()).cast<Complex>();
    Eigen::JacobiSVD<ComplexMatrix3> svd(P);
    EXPECT_LT(svd.singularValues()(2), 1e-8 * svd.singularValues()(0));
  }
}

TEST(Limiting, SubsonicIffNoRealRoot) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& sys : material_set()) {
    const double v_hat = limiting_speed(sys).v_hat;
    for (int i = 0; i < 20; ++i) {
      EXPECT_FALSE(has_real_characteristic_root(sys, u(rng) * v_hat * (1 - 1e-6)));
    }
    for (int i = 0; i < 10; ++i) {
      EXPECT_TRUE(has_real_characteristic_root(sys, v_hat * (1 + 1e-6 + u(rng) * (1 - 1e-6))));
    }
  }
}

TEST(Limiting, AgreesWithSexticScan) {
  for (const auto& sys : material_set()) {
    const double v_hat = limiting_speed(sys).v_hat;
    EXPECT_NEAR(scan_flip(sys, v_hat), v_hat, 1e-6 * v_hat);
  }
}

TEST(Limiting, BranchSpeedsAreContinuous) {
  for (const auto& sys : material_set()) {
    const int n = 2048;
    const double lo = -1.4, hi = 1.4, step = (hi - lo) / (n - 1);
    auto prev = branch_speeds(sys, lo);
    double scale = prev[2];
    for (int i = 1; i < n; ++i) {
      const auto cur = branch_speeds(sys, lo + i * step);
      scale = std::max(scale, cur[2]);
      for (int j = 0; j < 3; ++j) {
        EXPECT_LT(std::abs(cur[static_cast<std::size_t>(j)] - prev[static_cast<std::size_t>(j)]),
                  100.0 * step * scale);
      }
      prev = cur;
    }
  }
}

TEST(Limiting, PropagationMatrixPositiveDefinite) {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> th(-1.5707963, 1.5707963);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (const auto& sys : material_set()) {
    for (int i = 0; i < 2048; ++i) {
      const double t = -1.5707953 + i * (2 * 1.5707953) / 2047;
      EXPECT_EQ(Eigen::LLT<Matrix3>(propagation_matrix(sys, t)).info(), Eigen::Success);
    }
    const double v_hat = limiting_speed(sys).v_hat;
    for (int i = 0; i < 30; ++i) {
      const double t = th(rng);
      const double v = u(rng) * v_hat * (1 - 1e-9);
      const double c = std::cos(t);
      const Matrix3 z = propagation_matrix(sys, t) - sys.k * sys.k * v * v * c * c * Matrix3::Identity();
      EXPECT_GT(cubic_eigenvalues(z)[0], 0.0);
    }
  }
}
