#pragma once

#include "lovewave/linalg.hpp"
#include "lovewave/operators.hpp"
#include "lovewave/riccati.hpp"
#include "lovewave/secular.hpp"

namespace lovewave {

// Admissibility of v for the decoupled micro-rotation block:
// (2 a1 + a3) c^2 - v^2 > 0 and (a1 + a2) c^2 - v^2 > 0.
bool classical_admissible(const ClassicalMicroParams& micro, double v);

// Upper end of the admissible range, c * sqrt(min(2 a1 + a3, a1 + a2)).
double classical_speed_bound(const ClassicalMicroParams& micro);

// int_0^pi A_theta^{-1} dtheta for the micro block at k = 1, by quadrature.
// Throws DomainViolation when v is not admissible.
Matrix2 classical_block_integral(const ClassicalMicroParams& micro, double v,
                                 const QuadratureConfig& quad = {});

// Closed form of the same integral. Each diagonal entry is written as
// pi (x + y - x y) / (v^2 (1 + sqrt((1-x)(1-y))) sqrt(1-x)) with
// x = v^2 / (A c^2), y = v^2 / (B c^2), which stays finite at v = 0.
Matrix2 classical_block_integral_closed_form(const ClassicalMicroParams& micro, double v);

// The textbook form pi (c^2 sqrt(A / (A c^2 - v^2)) - sqrt(c^2 - v^2 / B)) / (c v^2),
// evaluated literally. 0/0 at v = 0, so v > 0 is required.
Matrix2 classical_block_integral_textbook(const ClassicalMicroParams& micro, double v);

// Closed-form secular function f_c(v) = det N of the micro block at k = 1.
// Throws DomainViolation when v is not admissible or v = 0 (the expression is
// 0/0 there).
double classical_secular_function(const ClassicalMicroParams& micro, double v);

// N from the generic Riccati machinery on the micro block.
ComplexMatrix<2> classical_micro_impedance(const ClassicalMicroParams& micro, double v, double k = 1.0,
                                           CurvatureCoupling coupling = CurvatureCoupling::Quadratic,
                                           const QuadratureConfig& quad = {});

// Impedance of the decoupled displacement block, k^2 c_T sqrt(c_T^2 - v^2)
// with c_T^2 = mu_e / rho. Positive for 0 <= v < c_T.
double classical_macro_impedance(double mu_e, double rho, double k, double v);

struct ClassicalRoot {
  double v0 = 0.0;
  double v_hat = 0.0;  // limiting speed of the micro block
  SecularSolveResult secular;
};

// Root of det N on the micro block via the generic limiting-speed and secular
// solvers. Throws NoSignChange when the block has no surface wave.
ClassicalRoot classical_micro_root(const ClassicalMicroParams& micro, double k = 1.0,
                                   CurvatureCoupling coupling = CurvatureCoupling::Quadratic,
                                   const SecularOptions& options = {});

}  // namespace lovewave
