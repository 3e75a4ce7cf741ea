#pragma once

#include <optional>
#include <vector>

#include "cvnn/criteria.hpp"
#include "cvnn/dde_sim.hpp"

namespace cvnn {

/// Generalized weighted norms. Note the asymmetry: the inf-norm divides by
/// the weights, the 1- and 2-norms multiply by them.
double weighted_norm(const Vec& v, const Vec& xi, NormKind kind);

struct EquilibriumResult {
  bool settled = false;
  Vec z_bar;
  double window_deviation = 0.0;  // max inf-norm deviation over the tail window
  double residual = 0.0;          // inf-norm of the frozen right-hand side at z_bar
  double window_start = 0.0;
};

/// Mean of the final 5% of samples; settled iff the tail is flat (< 1e-6) and
/// z_bar is a fixed point of the right-hand side to 1e-5.
EquilibriumResult estimate_equilibrium(const Trajectory& traj, const RealSystem& sys);

struct RateEstimate {
  Vec z_bar;
  double rate = 0.0;       // fitted decay exponent (1/time)
  double t0 = 0.0, t1 = 0.0;
  double fit_residual = 0.0;  // rms residual of the log-linear fit
  int points = 0;
};

/// Least-squares slope of ln ||Z(t) - z_bar||_{xi,inf} over the window where
/// that norm lies in [1e-8, 1e-2]. Throws std::runtime_error when the window
/// holds fewer than two samples.
RateEstimate estimate_rate(const Trajectory& traj, const Vec& z_bar, const Vec& xi);

/// X(t) = e^{eps t} dZ/dt and the three certificate functionals evaluated on
/// the sample grid: M(t) the sliding-window supremum of ||X||_{xi,inf} over
/// [t - tau_max, t], L1(t) the weighted-1-norm functional with its delay
/// integrals, L2(t) the squared-norm functional. Integrals use trapezoidal
/// quadrature on the grid; time-varying delays enter through their upper
/// bounds. All three are nonincreasing when (xi, epsilon) certifies the
/// matching family.
struct DiagnosticSeries {
  std::vector<double> t;
  std::vector<double> M;
  std::vector<double> L1;
  std::vector<double> L2;
};

DiagnosticSeries appendix_diagnostics(const Trajectory& traj, const RealSystem& sys,
                                      const ActivationBounds& bounds, const Vec& xi, double epsilon,
                                      const TwoNormParams* params = nullptr);

/// First time the series exceeds its running minimum by more than slack.
std::optional<double> first_violation(const std::vector<double>& t,
                                      const std::vector<double>& series, double slack);

}  // namespace cvnn
