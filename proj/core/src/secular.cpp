#include "lovewave/secular.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <string>
#include <thread>

#include <Eigen/LU>

#include "lovewave/error.hpp"

namespace lovewave {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

int resolve_workers(int requested, std::size_t jobs) {
  int n = requested > 0 ? requested : static_cast<int>(std::thread::hardware_concurrency());
  n = std::max(n, 1);
  return static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(n), std::max<std::size_t>(jobs, 1)));
}

// Brent's method on [a, b] with f(a), f(b) of opposite sign.
template <class F>
double brent(F&& f, double a, double b, double fa, double fb, double xtol, int max_iter,
             int& iterations, double& fbest, double& partner) {
  double c = a, fc = fa, d = b - a, e = d;
  iterations = 0;
  for (; iterations < max_iter; ++iterations) {
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = e = b - a;
    }
    if (std::abs(fc) < std::abs(fb)) {
      a = b;
      b = c;
      c = a;
      fa = fb;
      fb = fc;
      fc = fa;
    }
    const double tol = 2.0 * std::numeric_limits<double>::epsilon() * std::abs(b) + 0.5 * xtol;
    const double m = 0.5 * (c - b);
    if (std::abs(m) <= tol || fb == 0.0) break;
    if (std::abs(e) >= tol && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * m * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * m * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0) q = -q;
      else p = -p;
      if (2.0 * p < std::min(3.0 * m * q - std::abs(tol * q), std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = m;
        e = d;
      }
    } else {
      d = m;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol ? d : (m > 0 ? tol : -tol);
    fb = f(b);
  }
  fbest = fb;
  partner = c;
  return b;
}

}  // namespace

template <int N>
double secular_function(const RiccatiSystem<N>& sys, double v, const QuadratureConfig& quad) {
  return impedance_matrix(sys, v, quad).M.determinant().real();
}

std::vector<double> secular_grid(double v_hat, const SecularOptions& options) {
  if (options.coarse_samples < 2) {
    throw Error(ErrorCode::DegenerateGrid, "need at least 2 coarse secular samples");
  }
  std::vector<double> speeds;
  const double top = options.coarse_fraction * v_hat;
  for (int i = 0; i < options.coarse_samples; ++i) {
    speeds.push_back(top * i / (options.coarse_samples - 1));
  }
  // Gaps 1 - v / v_hat shrink geometrically from 1 - coarse_fraction to exclusion.
  const double gap0 = 1.0 - options.coarse_fraction;
  const double ratio = options.exclusion / gap0;
  for (int j = 1; j <= options.dense_samples; ++j) {
    const double gap = gap0 * std::pow(ratio, static_cast<double>(j) / options.dense_samples);
    speeds.push_back(v_hat * (1.0 - gap));
  }
  return speeds;
}

template <int N>
std::vector<DetSample> sample_secular(const RiccatiSystem<N>& sys,
                                      const std::vector<double>& speeds,
                                      const QuadratureConfig& quad, int workers) {
  std::vector<DetSample> out(speeds.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < speeds.size();) {
      out[i].v = speeds[i];
      try {
        out[i].det = secular_function(sys, speeds[i], quad);
      } catch (const Error&) {
        out[i].det = std::numeric_limits<double>::quiet_NaN();
      }
    }
  };
  const int n = resolve_workers(workers, speeds.size());
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();
  return out;
}

template <int N>
SecularSolveResult solve_secular(const RiccatiSystem<N>& sys, double v_hat,
                                 const SecularOptions& options) {
  if (!(v_hat > 0.0) || !std::isfinite(v_hat)) {
    throw Error(ErrorCode::SpeedOutOfRange, "limiting speed must be positive, got " + fmt(v_hat));
  }
  SecularSolveResult result;
  result.det_samples = sample_secular(sys, secular_grid(v_hat, options), options.quad,
                                      options.workers);
  const auto& samples = result.det_samples;

  // Sign changes and monotonicity over consecutive finite samples.
  int bracket = -1;
  int prev = -1;
  bool decreasing = true;
  for (int i = 0; i < static_cast<int>(samples.size()); ++i) {
    if (!std::isfinite(samples[static_cast<std::size_t>(i)].det)) continue;
    if (prev >= 0) {
      const double a = samples[static_cast<std::size_t>(prev)].det;
      const double b = samples[static_cast<std::size_t>(i)].det;
      if (!(b < a)) decreasing = false;
      if ((a > 0.0) != (b > 0.0)) {
        ++result.sign_changes;
        if (bracket < 0) bracket = prev;
      }
    }
    prev = i;
  }
  result.strictly_decreasing = decreasing;
  result.det_at_rest = samples.front().det;

  if (bracket < 0) {
    auto best = std::min_element(samples.begin(), samples.end(), [](const auto& x, const auto& y) {
      const double ax = std::isfinite(x.det) ? std::abs(x.det) : std::numeric_limits<double>::infinity();
      const double ay = std::isfinite(y.det) ? std::abs(y.det) : std::numeric_limits<double>::infinity();
      return ax < ay;
    });
    throw Error(ErrorCode::NoSignChange,
                "det M_v keeps its sign on [0, " + fmt((1.0 - options.exclusion) * v_hat) +
                    "]; closest sample v = " + fmt(best->v) + ", det = " + fmt(best->det));
  }

  int hi = bracket + 1;
  while (!std::isfinite(samples[static_cast<std::size_t>(hi)].det)) ++hi;
  double a = samples[static_cast<std::size_t>(bracket)].v;
  double b = samples[static_cast<std::size_t>(hi)].v;
  const double fa = samples[static_cast<std::size_t>(bracket)].det;
  const double fb = samples[static_cast<std::size_t>(hi)].det;

  auto f = [&](double v) { return secular_function(sys, v, options.quad); };
  double fbest = 0.0;
  double partner = 0.0;
  int iterations = 0;
  const double v0 = brent(f, a, b, fa, fb, options.tol_v * v_hat, options.max_iterations,
                          iterations, fbest, partner);
  result.v0 = v0;
  result.det_at_v0 = fbest;
  result.v_lo = std::min(v0, partner);
  result.v_hi = std::max(v0, partner);
  result.iterations = iterations;
  result.det_within_tol =
      std::abs(fbest) <= options.tol_det * std::max(std::abs(result.det_at_rest), 1e-300);
  return result;
}

#define LOVEWAVE_INSTANTIATE_SECULAR(N)                                                       \
  template double secular_function<N>(const RiccatiSystem<N>&, double,                       \
                                      const QuadratureConfig&);                              \
  template SecularSolveResult solve_secular<N>(const RiccatiSystem<N>&, double,               \
                                               const SecularOptions&);                        \
  template std::vector<DetSample> sample_secular<N>(const RiccatiSystem<N>&,                  \
                                                    const std::vector<double>&,               \
                                                    const QuadratureConfig&, int);

LOVEWAVE_INSTANTIATE_SECULAR(1)
LOVEWAVE_INSTANTIATE_SECULAR(2)
LOVEWAVE_INSTANTIATE_SECULAR(3)

#undef LOVEWAVE_INSTANTIATE_SECULAR

}  // namespace lovewave
