#pragma once

#include <vector>

#include "cvnn/criteria.hpp"

namespace cvnn {

/// A stability certificate: positive weights and the largest exponential rate
/// they support. For rate-free families epsilon is 0 and `rate` reports the
/// rate the weights support under the rate-bearing counterpart.
struct Certificate {
  Family family = Family::MMatrix;
  bool feasible = false;
  Vec xi;                       // 2n weights in [delta, 1]
  double epsilon = 0.0;         // rate at which `margins` was evaluated
  double rate = 0.0;            // largest admissible rate found by bisection
  double slack = 0.0;           // objective of the max-slack feasibility program
  Margins margins;
  std::vector<int> binding_rows;  // rows limiting the slack at the optimum
};

struct CertifyOptions {
  bool lambda_consistent = false;      // 2-norm symbol variant
  bool refine_two_norm_params = false; // coordinate descent over pi/omega
  double rate_tol = 1e-6;              // bisection interval width
  int refine_max_sweeps = 40;
};

/// Box constraint for the weights; normalizes the homogeneous system.
constexpr double kWeightFloor = 1e-9;
/// A certificate counts as feasible when the max slack clears this.
constexpr double kFeasibleSlack = 1e-9;

/// Solve the max-slack feasibility program for a rate-free family (or
/// MMatrix) at epsilon = 0. The conditions are linear in the weights; for the
/// one-norm sign-aware family the {.}^+ terms are handled exactly with
/// epigraph variables. Throws std::invalid_argument for rate-bearing families.
Certificate find_weights(Family family, const RealSystem& sys, const ActivationBounds& bounds,
                         const CertifyOptions& opts = {});

/// Largest epsilon in [0, max_j d_j] keeping all margins of the rate-bearing
/// counterpart <= 0, found by bisection (margins are nondecreasing in
/// epsilon). Requires strictly negative margins at epsilon = 0.
double max_rate(Family family, const RealSystem& sys, const ActivationBounds& bounds, const Vec& xi,
                const CertifyOptions& opts = {});
double max_rate(Family family, const RealSystem& sys, const ActivationBounds& bounds, const Vec& xi,
                const TwoNormParams* params, const CertifyOptions& opts = {});

/// One certificate per applicable family in declaration order. Families that
/// require the strict activation class are skipped when the bounds lack it;
/// rate-bearing families reuse the weights of their rate-free counterpart.
std::vector<Certificate> certify_all(const RealSystem& sys, const ActivationBounds& bounds,
                                     const CertifyOptions& opts = {});

}  // namespace cvnn
