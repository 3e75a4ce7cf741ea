#pragma once

#include <functional>
#include <memory>

#include "cvnn/model.hpp"

namespace cvnn {

/// Block comparison matrices assembled from decay rates, absolute weights and
/// activation bounds. All 2n x 2n; Dbar is diagonal (stored as its diagonal).
struct ComparisonMatrices {
  Vec Dbar;
  Mat Abar, Fbar, Bbar, Gbar;
};

/// Diagonal sharpening credit earned by inhibitory diagonal weights.
/// P1/P2/P3 are the n-dim diagonals; Delta is the assembled 2n diagonal.
struct DeltaCorrection {
  Vec Delta;
  Vec P1, P2, P3;
};

/// The 2n-dimensional real form of a complex network. State ordering is
/// (z_1^R, ..., z_n^R, z_1^I, ..., z_n^I). Keeps a handle to the NetworkSpec
/// so the exact nonlinear right-hand side is evaluated from one place.
struct RealSystem {
  int n = 0;
  Vec Dbar;                 // 2n decay diagonal
  Mat Abar, Bbar;           // 2n x 2n nonnegative weight blocks
  Mat Fbar, Gbar;           // 2n x 2n bound blocks
  Vec Delta;                // 2n diagonal correction
  Vec P1, P2, P3;           // n diagonals
  Mat tau_upper;            // 2n x 2n per-edge delay upper bounds (block replicated)
  std::shared_ptr<const NetworkSpec> net;

  int dim() const { return 2 * n; }

  /// Per-edge delayed state: (z_k^R, z_k^I) evaluated at t - tau_jk(t).
  using DelayedState = std::function<std::pair<double, double>(int j, int k)>;

  /// Right-hand side of the real system; delayed arguments supplied per edge.
  void rhs(double t, const Vec& z, const DelayedState& delayed, Vec& out) const;

  /// Right-hand side with every delayed argument frozen at z itself.
  /// Zero iff z is an equilibrium.
  Vec rhs_at_constant(const Vec& z) const;

  /// D - A F - B G, the comparison matrix the stability tests act on.
  Mat comparison_matrix() const;
};

ComparisonMatrices comparison_matrices(const NetworkSpec& net, const ActivationBounds& bounds);
DeltaCorrection delta_correction(const NetworkSpec& net, const ActivationBounds& bounds);
RealSystem decompose(const NetworkSpec& net, const ActivationBounds& bounds);

}  // namespace cvnn
