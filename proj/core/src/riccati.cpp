#include "lovewave/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <mutex>
#include <string>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include "lovewave/error.hpp"

namespace lovewave {
namespace {

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

template <int N>
struct PanelSum {
  RealMatrix<N> inv;   // sum of X_theta^{-1}
  RealMatrix<N> cross; // sum of X_theta^{-1} Y_theta^T
  double condition = 1.0;  // worst X_theta condition number on the panel
};

template <int N>
class RotationIntegrator {
 public:
  RotationIntegrator(const RiccatiSystem<N>& sys, double v, const QuadratureConfig& quad)
      : sys_(sys), v_(v), quad_(quad), rule_(gauss_legendre(quad.nodes_per_panel)) {}

  PanelSum<N> panel(double a, double b) {
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    const Eigen::Index n = sys_.X.rows();
    PanelSum<N> s{RealMatrix<N>::Zero(n, n), RealMatrix<N>::Zero(n, n), 1.0};
    for (std::size_t i = 0; i < rule_.nodes.size(); ++i) {
      const double theta = mid + half * rule_.nodes[i];
      const auto rot = rotate_triple(sys_, v_, theta);
      Eigen::SelfAdjointEigenSolver<RealMatrix<N>> eig(rot.X_theta);
      const auto& lambda = eig.eigenvalues();
      const double lmin = lambda(0);
      const double lmax = lambda(lambda.size() - 1);
      if (!(lmin > 0.0)) {
        throw Error(ErrorCode::SpeedOutOfRange,
                    "X_theta is not positive definite at theta = " + fmt(theta) +
                        ", v = " + fmt(v_));
      }
      const double cond = lmax / lmin;
      max_condition_ = std::max(max_condition_, cond);
      s.condition = std::max(s.condition, cond);
      if (cond > quad_.max_condition) {
        throw Error(ErrorCode::QuadratureNotConverged,
                    "X_theta condition " + fmt(cond) + " at theta = " + fmt(theta));
      }
      const auto& V = eig.eigenvectors();
      const RealMatrix<N> inv = V * lambda.cwiseInverse().asDiagonal() * V.transpose();
      const double w = half * rule_.weights[i];
      s.inv += w * inv;
      s.cross += w * (inv * rot.Y_theta.transpose());
    }
    evaluations_ += static_cast<int>(rule_.nodes.size());
    return s;
  }

  static double disagreement(const PanelSum<N>& a, const PanelSum<N>& b) {
    return std::max((a.inv - b.inv).cwiseAbs().maxCoeff(),
                    (a.cross - b.cross).cwiseAbs().maxCoeff());
  }

  void refine(double a, double b, const PanelSum<N>& whole, int depth, double scale,
              PanelSum<N>& total, double& error) {
    const double m = 0.5 * (a + b);
    const PanelSum<N> left = panel(a, m);
    const PanelSum<N> right = panel(m, b);
    const PanelSum<N> both{left.inv + right.inv, left.cross + right.cross,
                           std::max(left.condition, right.condition)};
    const double err = disagreement(whole, both);
    // The last term is the rounding floor of the panel itself. Forming
    // Z - k^2 v^2 I near the limiting speed costs relative accuracy of order
    // eps * cond(X_theta); without the floor such a panel is bisected forever.
    const double magnitude =
        std::max(both.inv.cwiseAbs().maxCoeff(), both.cross.cwiseAbs().maxCoeff());
    const double allowed =
        std::max({quad_.abs_tol * (b - a) / kPi, quad_.rel_tol * scale * (b - a) / kPi,
                  64.0 * std::numeric_limits<double>::epsilon() * both.condition * magnitude});
    if (err <= allowed) {
      total.inv += both.inv;
      total.cross += both.cross;
      error += err;
      panels_ += 2;
      return;
    }
    if (depth >= quad_.max_depth) {
      throw Error(ErrorCode::QuadratureNotConverged,
                  "panel [" + fmt(a) + ", " + fmt(b) + "] disagreement " + fmt(err) +
                      " after " + std::to_string(depth) + " bisections");
    }
    refine(a, m, left, depth + 1, scale, total, error);
    refine(m, b, right, depth + 1, scale, total, error);
  }

  int panels_ = 0;
  int evaluations_ = 0;
  double max_condition_ = 0.0;

 private:
  const RiccatiSystem<N>& sys_;
  double v_;
  const QuadratureConfig& quad_;
  GaussLegendreRule rule_;
};

}  // namespace

GaussLegendreRule gauss_legendre(int n) {
  if (n < 1) throw Error(ErrorCode::DegenerateGrid, "Gauss-Legendre order must be positive");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard<std::mutex> lock(mutex);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    // Newton on P_n from the Tricomi initial guess.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= n; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = w;
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(n / 2)] = 0.0;
  cache.emplace(n, rule);
  return rule;
}

template <int N>
RotationIntegrals<N> rotation_integrals(const RiccatiSystem<N>& sys, double v,
                                        const QuadratureConfig& quad) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw Error(ErrorCode::SpeedOutOfRange, "speed must be finite and >= 0, got " + fmt(v));
  }
  const Eigen::Index n = sys.X.rows();
  RotationIntegrator<N> integrator(sys, v, quad);

  const int p = std::max(1, quad.initial_panels);
  const double step = kPi / p;
  std::vector<PanelSum<N>> coarse;
  coarse.reserve(static_cast<std::size_t>(p));
  RealMatrix<N> inv = RealMatrix<N>::Zero(n, n), cross = RealMatrix<N>::Zero(n, n);
  for (int i = 0; i < p; ++i) {
    coarse.push_back(integrator.panel(i * step, (i + 1) * step));
    inv += coarse.back().inv;
    cross += coarse.back().cross;
  }
  const double scale = std::max(inv.cwiseAbs().maxCoeff(), cross.cwiseAbs().maxCoeff());

  PanelSum<N> total{RealMatrix<N>::Zero(n, n), RealMatrix<N>::Zero(n, n), 1.0};
  double error = 0.0;
  for (int i = 0; i < p; ++i) {
    integrator.refine(i * step, (i + 1) * step, coarse[static_cast<std::size_t>(i)], 0, scale,
                      total, error);
  }

  RotationIntegrals<N> out;
  out.inv = total.inv;
  out.cross = total.cross;
  out.error_estimate = scale > 0.0 ? error / scale : error;
  out.max_condition = integrator.max_condition_;
  out.panels = integrator.panels_;
  out.evaluations = integrator.evaluations_;
  return out;
}

template <int N>
ImpedanceResult<N> impedance_matrix(const RiccatiSystem<N>& sys, double v,
                                    const QuadratureConfig& quad,
                                    std::optional<double> v_hat) {
  if (v_hat && v >= *v_hat) {
    throw Error(ErrorCode::SpeedOutOfRange,
                "speed " + fmt(v) + " is not below the limiting speed " + fmt(*v_hat));
  }
  const auto integrals = rotation_integrals(sys, v, quad);
  const Eigen::Index n = sys.X.rows();

  Eigen::PartialPivLU<RealMatrix<N>> lu(integrals.inv);
  const ComplexMatrix<N> rhs = kPi * ComplexMatrix<N>::Identity(n, n) -
                               Complex(0.0, 1.0) * integrals.cross.template cast<Complex>();
  const ComplexMatrix<N> raw = lu.inverse().template cast<Complex>() * rhs;

  ImpedanceResult<N> out;
  out.hermitian_deviation = (raw - raw.adjoint()).norm() / (1.0 + raw.norm());
  out.M = 0.5 * (raw + raw.adjoint());
  out.v = v;
  out.k = sys.k;
  out.quad_error_estimate = integrals.error_estimate;
  out.riccati_residual = riccati_residual<N>(out.M, sys, v);
  out.max_condition = integrals.max_condition;
  out.panels = integrals.panels;
  out.evaluations = integrals.evaluations;
  return out;
}

template <int N>
double riccati_residual(const ComplexMatrix<N>& M, const RiccatiSystem<N>& sys, double v) {
  const Eigen::Index n = sys.X.rows();
  const Complex i(0.0, 1.0);
  const ComplexMatrix<N> Yc = sys.Y.template cast<Complex>();
  const ComplexMatrix<N> Xinv = sys.X.inverse().template cast<Complex>();
  const ComplexMatrix<N> lhs = (M - i * Yc) * Xinv * (M + i * Yc.transpose()) -
                               sys.Z.template cast<Complex>() +
                               Complex(sys.k * sys.k * v * v) * ComplexMatrix<N>::Identity(n, n);
  return lhs.norm();
}

template <int N>
DecayMatrix<N> decay_matrix(const ImpedanceResult<N>& res, const RiccatiSystem<N>& sys) {
  const Complex i(0.0, 1.0);
  DecayMatrix<N> d;
  d.E = sys.X.inverse().template cast<Complex>() *
        (res.M + i * sys.Y.transpose().template cast<Complex>());
  Eigen::ComplexEigenSolver<ComplexMatrix<N>> eig(d.E, false);
  d.eigenvalues = eig.eigenvalues();
  d.min_real_part = d.eigenvalues.real().minCoeff();
  if (!(d.min_real_part > 0.0)) {
    throw Error(ErrorCode::NotStabilizing,
                "min Re eig(E) = " + fmt(d.min_real_part) + " at v = " + fmt(res.v));
  }
  return d;
}

template <int N>
double quadratic_residual(const ComplexMatrix<N>& E, const RiccatiSystem<N>& sys, double v) {
  const Eigen::Index n = sys.X.rows();
  const Complex i(0.0, 1.0);
  const ComplexMatrix<N> t1 = sys.X.template cast<Complex>() * E * E;
  const ComplexMatrix<N> t2 = -i * (sys.Y + sys.Y.transpose()).template cast<Complex>() * E;
  const ComplexMatrix<N> t3 = -sys.Z.template cast<Complex>();
  const ComplexMatrix<N> t4 = Complex(sys.k * sys.k * v * v) * ComplexMatrix<N>::Identity(n, n);
  const double denom = t1.norm() + t2.norm() + t3.norm() + t4.norm();
  const double num = (t1 + t2 + t3 + t4).norm();
  return denom > 0.0 ? num / denom : num;
}

template <int N>
ComplexMatrix<N> impedance_derivative(const RiccatiSystem<N>& sys, double v, double h,
                                      const QuadratureConfig& quad,
                                      std::optional<double> v_hat) {
  if (!(h > 0.0) || !(v - h > 0.0)) {
    throw Error(ErrorCode::SpeedOutOfRange,
                "derivative stencil needs 0 < v - h, got v = " + fmt(v) + ", h = " + fmt(h));
  }
  const auto plus = impedance_matrix(sys, v + h, quad, v_hat);
  const auto minus = impedance_matrix(sys, v - h, quad, v_hat);
  const ComplexMatrix<N> d = (plus.M - minus.M) / (2.0 * h);
  return 0.5 * (d + d.adjoint());
}

#define LOVEWAVE_INSTANTIATE_RICCATI(N)                                                       \
  template RotationIntegrals<N> rotation_integrals<N>(const RiccatiSystem<N>&, double,        \
                                                      const QuadratureConfig&);               \
  template ImpedanceResult<N> impedance_matrix<N>(const RiccatiSystem<N>&, double,            \
                                                  const QuadratureConfig&,                    \
                                                  std::optional<double>);                     \
  template double riccati_residual<N>(const ComplexMatrix<N>&, const RiccatiSystem<N>&,       \
                                      double);                                                \
  template DecayMatrix<N> decay_matrix<N>(const ImpedanceResult<N>&, const RiccatiSystem<N>&); \
  template double quadratic_residual<N>(const ComplexMatrix<N>&, const RiccatiSystem<N>&,     \
                                        double);                                              \
  template ComplexMatrix<N> impedance_derivative<N>(const RiccatiSystem<N>&, double, double,  \
                                                    const QuadratureConfig&,                  \
                                                    std::optional<double>);

LOVEWAVE_INSTANTIATE_RICCATI(1)
LOVEWAVE_INSTANTIATE_RICCATI(2)
LOVEWAVE_INSTANTIATE_RICCATI(3)

#undef LOVEWAVE_INSTANTIATE_RICCATI

}  // namespace lovewave
