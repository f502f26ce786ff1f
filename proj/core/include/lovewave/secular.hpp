#pragma once

#include <utility>
#include <vector>

#include "lovewave/operators.hpp"
#include "lovewave/riccati.hpp"

namespace lovewave {

struct SecularOptions {
  int coarse_samples = 100;       // uniform on [0, coarse_fraction * v_hat]
  double coarse_fraction = 0.9;
  int dense_samples = 60;         // geometric toward (1 - exclusion) * v_hat
  double exclusion = 1e-9;
  double tol_v = 1e-12;           // bracket width relative to v_hat
  double tol_det = 1e-10;         // |det M_v0| relative to |det M_0|
  int max_iterations = 200;
  int workers = 0;                // grid evaluation threads, 0 = hardware
  QuadratureConfig quad;
};

struct DetSample {
  double v = 0.0;
  double det = 0.0;  // NaN when the impedance could not be evaluated
};

struct SecularSolveResult {
  double v0 = 0.0;
  double det_at_v0 = 0.0;
  double det_at_rest = 0.0;  // det M_0, the scale for tol_det
  double v_lo = 0.0;
  double v_hi = 0.0;
  int iterations = 0;
  std::vector<DetSample> det_samples;
  int sign_changes = 0;
  bool strictly_decreasing = false;
  bool det_within_tol = false;
};

// det M_v of the Hermitian impedance. Returns the real part; the imaginary
// part is rounding noise on the order of eps * ||M||^N.
template <int N>
double secular_function(const RiccatiSystem<N>& sys, double v, const QuadratureConfig& quad = {});

// Speeds probed by solve_secular before bracketing, ascending.
std::vector<double> secular_grid(double v_hat, const SecularOptions& options);

// Locates the sign change of det M_v below (1 - exclusion) v_hat and refines
// it with Brent's method. Throws NoSignChange (detail names the sample with
// the smallest |det|) when the sampled determinant never changes sign.
template <int N>
SecularSolveResult solve_secular(const RiccatiSystem<N>& sys, double v_hat,
                                 const SecularOptions& options = {});

// Evaluates det M_v at each speed on a worker pool; output follows input order.
template <int N>
std::vector<DetSample> sample_secular(const RiccatiSystem<N>& sys,
                                      const std::vector<double>& speeds,
                                      const QuadratureConfig& quad, int workers = 0);

}  // namespace lovewave
