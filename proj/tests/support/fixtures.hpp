#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "lovewave/material.hpp"
#include "lovewave/operators.hpp"

namespace lovewave::testing {

// Foam parameters as listed, density in the listed scale.
inline MaterialParams foam() {
  MaterialParams p;
  p.mu_e = 104;
  p.mu_c = 4.3331;
  p.lambda_e = 0;
  p.a1 = 79.9552;
  p.a2 = 10.6496;
  p.a3 = -53.3035;
  p.J = 10;
  p.rho = 340e-6;
  return p;
}

// Density scale under which the reference speeds were computed.
inline MaterialParams foam_tables(double J = 10.0) {
  MaterialParams p = foam();
  p.rho = 0.34;
  p.J = J;
  return p;
}

inline RiccatiSystem<3> foam_system(double J = 10.0, double k = 0.5,
                                    CurvatureCoupling c = CurvatureCoupling::Linear) {
  return build_scaled_triple(make_wave_context(foam_tables(J), k), c).system();
}

template <int N>
RiccatiSystem<N> identity_system(double a = 1.0, double k = 1.0) {
  RiccatiSystem<N> s;
  s.X = a * RealMatrix<N>::Identity();
  s.Y = RealMatrix<N>::Zero();
  s.Z = a * RealMatrix<N>::Identity();
  s.k = k;
  return s;
}

struct Synthetic {
  MaterialParams params;
  double k = 1.0;
};

// Foam-like materials: each modulus scaled by U[0.7, 1.3], J log-uniform on
// [0.1, 10], k log-uniform on [0.3, 3]. The ranges keep 2 a1 + a3 > 0.
inline std::vector<Synthetic> synthetic_family(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> scale(0.7, 1.3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::vector<Synthetic> out;
  for (int i = 0; i < count; ++i) {
    Synthetic s;
    s.params = foam_tables();
    s.params.mu_e *= scale(rng);
    s.params.mu_c *= scale(rng);
    s.params.a1 *= scale(rng);
    s.params.a2 *= scale(rng);
    s.params.a3 *= scale(rng);
    s.params.J = std::pow(10.0, -1.0 + 2.0 * unit(rng));
    s.k = 0.3 * std::pow(10.0, unit(rng));
    out.push_back(s);
  }
  return out;
}

// Eigenvalues of a real symmetric 3x3 matrix from the trigonometric solution
// of its characteristic cubic, ascending.
inline std::array<double, 3> cubic_eigenvalues(const Matrix3& A) {
  const double p1 = A(0, 1) * A(0, 1) + A(0, 2) * A(0, 2) + A(1, 2) * A(1, 2);
  const double q = A.trace() / 3.0;
  const double p2 = (A(0, 0) - q) * (A(0, 0) - q) + (A(1, 1) - q) * (A(1, 1) - q) +
                    (A(2, 2) - q) * (A(2, 2) - q) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  if (p == 0.0) return {q, q, q};
  const Matrix3 B = (A - q * Matrix3::Identity()) / p;
  const double r = std::clamp(B.determinant() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double pi = 3.14159265358979323846;
  std::array<double, 3> e{q + 2.0 * p * std::cos(phi + 2.0 * pi / 3.0), 0.0,
                          q + 2.0 * p * std::cos(phi)};
  e[1] = 3.0 * q - e[0] - e[2];
  std::sort(e.begin(), e.end());
  return e;
}

inline double rel_diff(double a, double b) {
  return std::abs(a - b) / std::max(std::abs(b), 1e-300);
}

}  // namespace lovewave::testing
