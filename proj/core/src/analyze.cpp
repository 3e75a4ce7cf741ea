#include "cvnn/analyze.hpp"

#include <cmath>
#include <deque>
#include <limits>
#include <stdexcept>

namespace cvnn {

double weighted_norm(const Vec& v, const Vec& xi, NormKind kind) {
  if (v.size() != xi.size()) throw std::invalid_argument("weighted_norm: dimension mismatch");
  if ((xi.array() <= 0.0).any()) throw std::domain_error("weighted_norm: weights must be positive");
  switch (kind) {
    case NormKind::Inf: return (v.array().abs() / xi.array()).maxCoeff();
    case NormKind::One: return (xi.array() * v.array().abs()).sum();
    case NormKind::Two: return std::sqrt((xi.array() * v.array().square()).sum());
  }
  throw std::logic_error("weighted_norm: unknown kind");
}

EquilibriumResult estimate_equilibrium(const Trajectory& traj, const RealSystem& sys) {
  const int ns = traj.samples();
  if (ns < 2) throw std::invalid_argument("estimate_equilibrium: trajectory too short");
  const int window = std::max(2, ns / 20);
  const int start = ns - window;

  EquilibriumResult out;
  out.window_start = traj.t[start];
  Vec mean = Vec::Zero(traj.dim());
  for (int i = start; i < ns; ++i) mean += traj.z[i];
  mean /= static_cast<double>(window);
  out.z_bar = mean;

  double dev = 0.0;
  for (int i = start; i < ns; ++i) dev = std::max(dev, (traj.z[i] - mean).cwiseAbs().maxCoeff());
  out.window_deviation = dev;
  out.residual = sys.rhs_at_constant(mean).cwiseAbs().maxCoeff();
  out.settled = dev < 1e-6 && out.residual < 1e-5;
  return out;
}

RateEstimate estimate_rate(const Trajectory& traj, const Vec& z_bar, const Vec& xi) {
  RateEstimate out;
  out.z_bar = z_bar;
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int m = 0;
  double t0 = 0, t1 = 0;
  std::vector<std::pair<double, double>> pts;
  for (int i = 0; i < traj.samples(); ++i) {
    const double dev = weighted_norm(traj.z[i] - z_bar, xi, NormKind::Inf);
    if (dev < 1e-8 || dev > 1e-2) continue;
    const double x = traj.t[i], y = std::log(dev);
    if (m == 0) t0 = x;
    t1 = x;
    sx += x; sy += y; sxx += x * x; sxy += x * y;
    pts.emplace_back(x, y);
    ++m;
  }
  if (m < 2)
    throw std::runtime_error(
        "estimate_rate: no samples with deviation in [1e-8, 1e-2]; trajectory too short or "
        "not converging");
  const double denom = m * sxx - sx * sx;
  const double slope = (m * sxy - sx * sy) / denom;
  const double intercept = (sy - slope * sx) / m;
  double rss = 0.0;
  for (const auto& [x, y] : pts) {
    const double r = y - (slope * x + intercept);
    rss += r * r;
  }
  out.rate = -slope;
  out.t0 = t0;
  out.t1 = t1;
  out.points = m;
  out.fit_residual = std::sqrt(rss / m);
  return out;
}

DiagnosticSeries appendix_diagnostics(const Trajectory& traj, const RealSystem& sys,
                                      const ActivationBounds& bounds, const Vec& xi, double epsilon,
                                      const TwoNormParams* params) {
  const int n = sys.n;
  const int dim = 2 * n;
  const int ns = traj.samples();
  if (traj.dim() != dim) throw std::invalid_argument("appendix_diagnostics: dimension mismatch");
  if (xi.size() != dim || (xi.array() <= 0.0).any())
    throw std::domain_error("appendix_diagnostics: weights must be a positive 2n-vector");

  const NetworkSpec& net = *sys.net;
  const TwoNormParams pr = params ? *params : TwoNormParams::ones(n);
  pr.validate(n);

  // alpha/beta coefficients of the delay integrals
  Mat alpha(n, n), beta(n, n), alpha2(n, n), beta2(n, n), tau(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      const double bR = std::abs(net.B(j, k).real());
      const double bI = std::abs(net.B(j, k).imag());
      alpha(j, k) = xi[j] * (bR * bounds.muRR[k] + bI * bounds.muIR[k]) +
                    xi[n + j] * (bR * bounds.muIR[k] + bI * bounds.muRR[k]);
      beta(j, k) = xi[j] * (bR * bounds.muRI[k] + bI * bounds.muII[k]) +
                   xi[n + j] * (bR * bounds.muII[k] + bI * bounds.muRI[k]);
      alpha2(j, k) = xi[j] * (bR * bounds.muRR[k] + bI * bounds.muIR[k]) / pr.pi3(j, k) +
                     xi[n + j] * (bR * bounds.muIR[k] + bI * bounds.muRR[k]) / pr.om3(j, k);
      beta2(j, k) = xi[j] * (bR * bounds.muRI[k] + bI * bounds.muII[k]) / pr.pi4(j, k) +
                    xi[n + j] * (bR * bounds.muII[k] + bI * bounds.muRI[k]) / pr.om4(j, k);
      tau(j, k) = net.delays.at(j, k).upper();
    }
  const double tau_max = net.delays.max_upper();

  // X(t) = e^{eps t} dZ/dt sampled on the grid, plus cumulative trapezoids of
  // |X_c| and X_c^2 (integrals from 0; the constant initial segment
  // contributes nothing below 0)
  std::vector<Vec> X(ns);
  Mat cum_abs(dim, ns), cum_sq(dim, ns);
  for (int i = 0; i < ns; ++i) X[i] = std::exp(epsilon * traj.t[i]) * traj.dz[i];
  cum_abs.col(0).setZero();
  cum_sq.col(0).setZero();
  for (int i = 1; i < ns; ++i) {
    for (int c = 0; c < dim; ++c) {
      const double a = std::abs(X[i - 1][c]), b = std::abs(X[i][c]);
      cum_abs(c, i) = cum_abs(c, i - 1) + 0.5 * traj.h * (a + b);
      cum_sq(c, i) = cum_sq(c, i - 1) + 0.5 * traj.h * (a * a + b * b);
    }
  }
  auto cum_at = [&](const Mat& cum, int c, double s) -> double {
    if (s <= 0.0) return 0.0;
    const int k = std::min(static_cast<int>(s / traj.h), ns - 2);
    const double frac = (s - traj.t[k]) / traj.h;
    return cum(c, k) + frac * (cum(c, k + 1) - cum(c, k));
  };

  DiagnosticSeries out;
  out.t = traj.t;
  out.M.resize(ns);
  out.L1.resize(ns);
  out.L2.resize(ns);

  // sliding-window maximum of ||X||_{xi,inf} via a monotone deque
  std::vector<double> nx(ns);
  for (int i = 0; i < ns; ++i) nx[i] = weighted_norm(X[i], xi, NormKind::Inf);
  std::deque<int> dq;
  int left = 0;
  for (int i = 0; i < ns; ++i) {
    while (!dq.empty() && nx[dq.back()] <= nx[i]) dq.pop_back();
    dq.push_back(i);
    while (traj.t[left] < traj.t[i] - tau_max) {
      if (dq.front() == left) dq.pop_front();
      ++left;
    }
    out.M[i] = nx[dq.front()];
  }

  for (int i = 0; i < ns; ++i) {
    double l1 = 0.0, l2 = 0.0;
    for (int c = 0; c < dim; ++c) {
      l1 += xi[c] * std::abs(X[i][c]);
      l2 += xi[c] * X[i][c] * X[i][c];
    }
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        const double a1 = cum_abs(k, i) - cum_at(cum_abs, k, traj.t[i] - tau(j, k));
        const double b1 = cum_abs(n + k, i) - cum_at(cum_abs, n + k, traj.t[i] - tau(j, k));
        l1 += alpha(j, k) * std::exp(epsilon * tau(j, k)) * a1 +
              beta(j, k) * std::exp(epsilon * tau(j, k)) * b1;
        const double a2 = cum_sq(k, i) - cum_at(cum_sq, k, traj.t[i] - tau(j, k));
        const double b2 = cum_sq(n + k, i) - cum_at(cum_sq, n + k, traj.t[i] - tau(j, k));
        l2 += alpha2(j, k) * std::exp(2.0 * epsilon * tau(j, k)) * a2 +
              beta2(j, k) * std::exp(2.0 * epsilon * tau(j, k)) * b2;
      }
    out.L1[i] = l1;
    out.L2[i] = l2;
  }
  return out;
}

std::optional<double> first_violation(const std::vector<double>& t,
                                      const std::vector<double>& series, double slack) {
  if (t.size() != series.size()) throw std::invalid_argument("first_violation: length mismatch");
  double running_min = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < series.size(); ++i) {
    if (series[i] > running_min + slack) return t[i];
    running_min = std::min(running_min, series[i]);
  }
  return std::nullopt;
}

}  // namespace cvnn
