#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "cvnn/decompose.hpp"
#include "cvnn/model.hpp"

namespace cvnn {

/// Initial data on [t_min, 0]: one polynomial in t per component, ascending
/// coefficients. Constant histories are degree-0 polynomials.
struct InitialHistory {
  std::vector<std::vector<double>> poly;

  static InitialHistory constant(const Vec& z0);
  /// Complex initial vector laid out as (z_1^R..z_n^R, z_1^I..z_n^I).
  static InitialHistory constant_complex(const VecC& z0);

  int dim() const { return static_cast<int>(poly.size()); }
  double eval(int comp, double t) const;
  double eval_deriv(int comp, double t) const;
  Vec eval_all(double t) const;
};

struct SimulationDiverged : std::runtime_error {
  double time;
  explicit SimulationDiverged(double t);
};

/// Dense-output solution: states and right-hand-side derivatives on the
/// uniform step grid, cubic Hermite interpolation inside steps, the initial
/// polynomial segment for t <= 0.
struct Trajectory {
  double h = 0.0;
  double t_min = 0.0;  // left end of the initial segment
  std::vector<double> t;
  std::vector<Vec> z;
  std::vector<Vec> dz;
  InitialHistory init;
  long delay_evaluations = 0;

  int dim() const { return t.empty() ? init.dim() : static_cast<int>(z.front().size()); }
  int samples() const { return static_cast<int>(t.size()); }
  double t_end() const { return t.back(); }
  const Vec& final_state() const { return z.back(); }
  /// Interpolated state at s in [t_min, t_end()].
  Vec at(double s) const;
};

/// Read access to the committed part of the solution during integration.
/// Times past the last committed point fall back to linear extrapolation,
/// which is what delayed arguments inside the current step (delays near zero)
/// resolve to.
class HistoryView {
 public:
  std::pair<double, double> pair(double s, int c0, int c1) const;
  double component(double s, int c) const;
  Vec state(double s) const;

 private:
  friend Trajectory integrate_dde(int, const std::function<void(double, const Vec&, const HistoryView&, Vec&)>&,
                                  const InitialHistory&, double, double, double, double);
  HistoryView(const Trajectory& traj, long& counter) : traj_(traj), counter_(counter) {}
  const Trajectory& traj_;
  long& counter_;
  int committed_ = 0;  // z[0..committed_] and dz[0..committed_] are valid
};

using DelayedRhs = std::function<void(double t, const Vec& z, const HistoryView&, Vec& out)>;

/// Classic fixed-step 4-stage Runge-Kutta by the method of steps. Every stage
/// resolves delayed arguments through the HistoryView. Throws
/// SimulationDiverged when the state inf-norm exceeds divergence_limit.
Trajectory integrate_dde(int dim, const DelayedRhs& rhs, const InitialHistory& init, double t_min,
                         double t_end, double h, double divergence_limit = 1e9);

/// Integrate the real form of a network. Enforces h <= 1e-2 when any delay
/// can reach zero.
Trajectory simulate(const RealSystem& sys, const InitialHistory& init, double t_end, double h);

/// Convenience wrapper: decompose and integrate from a constant complex
/// initial vector. Output ordering is (z^R block, z^I block).
Trajectory simulate_complex(const NetworkSpec& net, const VecC& z0, double t_end, double h);

}  // namespace cvnn
