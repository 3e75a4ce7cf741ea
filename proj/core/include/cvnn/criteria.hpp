#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>

#include <Eigen/Core>

#include "cvnn/decompose.hpp"
#include "cvnn/model.hpp"

namespace cvnn {

/// Stability criterion families. The *_T1T2 / *_T7T8 / *_T13T14 families carry
/// an exponential-rate term; the others are their rate-free counterparts.
/// Sign-aware families exploit inhibitory diagonal weights and require the
/// stricter activation class for f (strictly positive partials).
enum class Family {
  InfT1T2,
  InfT3T4,
  InfT5T6,
  OneT7T8,
  OneT9T10,
  OneT11T12,
  TwoT13T14,
  TwoT15T16,
  TwoT17T18,
  MMatrix,
};

constexpr int kFamilyCount = 10;
Family family_at(int index);
bool requires_h1(Family f);
bool has_rate_term(Family f);
/// Rate-bearing counterpart whose margins max_rate bisects on.
Family rate_family(Family f);
const char* family_name(Family f);
std::optional<Family> family_from_string(const std::string& name);

/// Free positive parameters of the 2-norm families (per ordered node pair).
struct TwoNormParams {
  Mat pi1, pi2, pi3, pi4;
  Mat om1, om2, om3, om4;
  static TwoNormParams ones(int n);
  void validate(int n) const;
};

/// Per-row criterion values. The criterion holds iff all rows are <= 0
/// (strictly < 0 for the rate-free families). Rows 0..n-1 come from the first
/// family member, rows n..2n-1 from the second.
struct Margins {
  Family family = Family::MMatrix;
  Vec rows;
  Vec xi;
  double epsilon = 0.0;
  bool lambda_consistent = false;
  std::shared_ptr<const TwoNormParams> params;  // 2-norm families only

  bool satisfied(bool strict) const;
  double worst() const { return rows.maxCoeff(); }
};

/// Thrown when a sign-aware family is evaluated with bounds that only certify
/// the magnitude class for f.
struct ClassMismatchError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EvalOptions {
  /// Evaluate the 2-norm families with the mu->lambda substitution in the
  /// slots where the printed expressions deviate from the functional
  /// derivation pattern. Off by default: printed expressions verbatim.
  bool lambda_consistent = false;
};

/// Evaluate one criterion family at weights xi=(xi_1..n, phi_1..n) and rate
/// epsilon. epsilon must be 0 for the rate-free families. params (2-norm
/// families) default to all ones.
Margins eval_criterion(Family family, const RealSystem& sys, const ActivationBounds& bounds,
                       const Vec& xi, double epsilon, const TwoNormParams* params = nullptr,
                       const EvalOptions& opts = {});

namespace detail {
/// Margin rows with the rate extension applied uniformly, usable at any
/// epsilon >= 0 for every family (rate-free families reduce to their printed
/// expressions at epsilon = 0). params may be null (all ones).
Vec margin_rows(Family family, const RealSystem& sys, const ActivationBounds& bounds, const Vec& xi,
                double epsilon, const TwoNormParams* params, bool lambda_consistent);
}  // namespace detail

struct MMatrixResult {
  bool is_m = false;
  Vec xi;                      // positive witness with C xi > 0 (when is_m)
  double slack = 0.0;          // optimum of the feasibility program
  Eigen::VectorXcd eigenvalues;
  bool eig_agrees = false;     // eigenvalue test reached the same verdict
  std::optional<bool> minors_agree;  // leading principal minors (dim <= 6)
};

/// Decide whether a Z-matrix is a nonsingular M-matrix via the positive-vector
/// feasibility program, cross-checked against eigenvalue real parts and (for
/// dim <= 6) leading principal minors. Throws std::invalid_argument when C has
/// a positive off-diagonal entry.
MMatrixResult is_m_matrix(const Mat& C);

enum class NormKind { Inf, One, Two };

/// Weighted matrix measure: the exact growth bound of the weighted norm along
/// dw/dt = A w. Inf and One return the bound on d/dt ln ||w||; Two returns the
/// bound on d/dt ln ||w||^2 (largest eigenvalue of the symmetric pencil
/// (Xi A + A^T Xi, Xi), which reduces to Xi = I's plain matrix form).
double matrix_measure(const Mat& A, const Vec& xi, NormKind kind);

}  // namespace cvnn
