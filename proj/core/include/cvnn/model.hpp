#pragma once

#include <complex>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

namespace cvnn {

using Complex = std::complex<double>;
using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using VecC = Eigen::VectorXcd;
using MatC = Eigen::MatrixXcd;

/// Scalar sigmoid kinds supported by the activation family.
/// Logistic maps into (0,1) with slope at most 1/4; Bipolar maps into (-1,1)
/// with slope at most 1/2.
enum class Sigma { Logistic, Bipolar };

/// Saturating evaluation: arguments beyond +/-30 return the asymptote so long
/// simulations never produce NaN from the exponentials.
double sigma_eval(Sigma kind, double x);
double sigma_deriv(Sigma kind, double x);
double sigma_slope_max(Sigma kind);

/// One scalar component sigma(c1*zR + c2*zI).
struct ActivationComponent {
  Sigma kind = Sigma::Logistic;
  double c1 = 0.0;
  double c2 = 0.0;

  double eval(double zR, double zI) const { return sigma_eval(kind, c1 * zR + c2 * zI); }
  double d_dzR(double zR, double zI) const { return c1 * sigma_deriv(kind, c1 * zR + c2 * zI); }
  double d_dzI(double zR, double zI) const { return c2 * sigma_deriv(kind, c1 * zR + c2 * zI); }
};

/// Per-node activation pair: f (instantaneous path) and g (delayed path),
/// each split into real and imaginary components.
struct NodeActivation {
  ActivationComponent fR, fI, gR, gI;
};

struct ActivationSpec {
  std::vector<NodeActivation> nodes;
  int size() const { return static_cast<int>(nodes.size()); }
};

/// Partial-derivative bounds per node: lambda_* bound the components of f,
/// mu_* bound the components of g. f_is_h1 is set only when every partial of
/// every f component is provably positive (all coefficients > 0), matching
/// the stricter activation class; otherwise only the magnitude bounds hold.
struct ActivationBounds {
  int n = 0;
  Vec lamRR, lamRI, lamIR, lamII;
  Vec muRR, muRI, muIR, muII;
  bool f_is_h1 = false;
  bool g_is_h1 = false;
};

/// Per-edge delay: a constant, or base + amp*sin(t + phase) / base + amp*cos(t + phase).
/// The envelope [base - |amp|, base + |amp|] must stay nonnegative.
struct DelayEntry {
  enum class Kind { Constant, Sin, Cos };
  Kind kind = Kind::Constant;
  double base = 0.0;
  double amp = 0.0;
  double phase = 0.0;

  double eval(double t) const;
  double upper() const;
  double lower() const;
  bool constant() const { return kind == Kind::Constant || amp == 0.0; }
};

/// n x n edge delays; entry (j, k) is the delay on the edge from node k into node j.
struct DelaySpec {
  int n = 0;
  std::vector<DelayEntry> entries;  // row-major

  static DelaySpec constant(const Mat& tau);
  const DelayEntry& at(int j, int k) const { return entries[static_cast<size_t>(j) * n + k]; }
  DelayEntry& at(int j, int k) { return entries[static_cast<size_t>(j) * n + k]; }
  Mat upper_matrix() const;
  double max_upper() const;
  double min_lower() const;
  bool all_constant() const;
};

/// Complex n-node recurrent network
///   dz_j/dt = -d_j z_j + sum_k a_jk f_k(z_k(t)) + sum_k b_jk g_k(z_k(t - tau_jk(t))) + u_j.
struct NetworkSpec {
  int n = 0;
  Vec d;     // positive per-node decay rates
  MatC A;    // instantaneous connection weights
  MatC B;    // delayed connection weights
  VecC u;    // external input
  DelaySpec delays;
  ActivationSpec activations;

  /// Throws std::invalid_argument on dimension mismatch, nonpositive decay,
  /// nonfinite entries, or delays that can go negative.
  void validate() const;
};

enum class Which { F, G };

/// Bounds for the supported family: the bound on |d sigma(c1 x + c2 y)/dx| is
/// |c1| * slope_max(sigma), and similarly for y. Rejects components whose
/// derived bound would be zero (the bound constants must be positive).
ActivationBounds derive_bounds(const ActivationSpec& spec);

/// Value of f_node or g_node at zR + i zI, returned as (real part, imag part).
std::pair<double, double> eval_activation(const ActivationSpec& spec, int node, Which which,
                                          double zR, double zI);

}  // namespace cvnn
