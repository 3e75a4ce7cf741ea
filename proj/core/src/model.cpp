#include "cvnn/model.hpp"

#include <cmath>
#include <stdexcept>

namespace cvnn {

namespace {
constexpr double kSaturation = 30.0;
}

double sigma_eval(Sigma kind, double x) {
  if (kind == Sigma::Logistic) {
    if (x > kSaturation) return 1.0;
    if (x < -kSaturation) return 0.0;
    // evaluate the branch whose exponential argument is negative
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
  }
  // bipolar: (1 - e^{-x}) / (1 + e^{-x}) = tanh(x/2)
  if (x > kSaturation) return 1.0;
  if (x < -kSaturation) return -1.0;
  return std::tanh(0.5 * x);
}

double sigma_deriv(Sigma kind, double x) {
  if (kind == Sigma::Logistic) {
    const double s = sigma_eval(Sigma::Logistic, x);
    return s * (1.0 - s);
  }
  const double s = sigma_eval(Sigma::Bipolar, x);
  return 0.5 * (1.0 - s * s);
}

double sigma_slope_max(Sigma kind) { return kind == Sigma::Logistic ? 0.25 : 0.5; }

double DelayEntry::eval(double t) const {
  switch (kind) {
    case Kind::Constant: return base;
    case Kind::Sin: return base + amp * std::sin(t + phase);
    case Kind::Cos: return base + amp * std::cos(t + phase);
  }
  return base;
}

double DelayEntry::upper() const { return kind == Kind::Constant ? base : base + std::abs(amp); }

double DelayEntry::lower() const { return kind == Kind::Constant ? base : base - std::abs(amp); }

DelaySpec DelaySpec::constant(const Mat& tau) {
  DelaySpec out;
  out.n = static_cast<int>(tau.rows());
  out.entries.resize(static_cast<size_t>(out.n) * out.n);
  for (int j = 0; j < out.n; ++j)
    for (int k = 0; k < out.n; ++k) out.at(j, k) = DelayEntry{DelayEntry::Kind::Constant, tau(j, k), 0.0, 0.0};
  return out;
}

Mat DelaySpec::upper_matrix() const {
  Mat out(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) out(j, k) = at(j, k).upper();
  return out;
}

double DelaySpec::max_upper() const {
  double m = 0.0;
  for (const auto& e : entries) m = std::max(m, e.upper());
  return m;
}

double DelaySpec::min_lower() const {
  double m = entries.empty() ? 0.0 : entries.front().lower();
  for (const auto& e : entries) m = std::min(m, e.lower());
  return m;
}

bool DelaySpec::all_constant() const {
  for (const auto& e : entries)
    if (!e.constant()) return false;
  return true;
}

void NetworkSpec::validate() const {
  if (n <= 0) throw std::invalid_argument("network: node count must be positive");
  if (d.size() != n) throw std::invalid_argument("network: d has wrong length");
  if (A.rows() != n || A.cols() != n) throw std::invalid_argument("network: A must be n x n");
  if (B.rows() != n || B.cols() != n) throw std::invalid_argument("network: B must be n x n");
  if (u.size() != n) throw std::invalid_argument("network: u has wrong length");
  if (delays.n != n || delays.entries.size() != static_cast<size_t>(n) * n)
    throw std::invalid_argument("network: delays must be n x n");
  if (activations.size() != n) throw std::invalid_argument("network: activations must list n nodes");
  for (int j = 0; j < n; ++j) {
    if (!(d[j] > 0.0) || !std::isfinite(d[j]))
      throw std::invalid_argument("network: decay rates must be positive and finite");
  }
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      if (!std::isfinite(A(j, k).real()) || !std::isfinite(A(j, k).imag()) ||
          !std::isfinite(B(j, k).real()) || !std::isfinite(B(j, k).imag()))
        throw std::invalid_argument("network: weight matrices must be finite");
      const DelayEntry& e = delays.at(j, k);
      if (!std::isfinite(e.base) || !std::isfinite(e.amp) || !std::isfinite(e.phase))
        throw std::invalid_argument("network: delay parameters must be finite");
      if (e.lower() < 0.0) throw std::invalid_argument("network: delays must be nonnegative for all t");
    }
  for (int j = 0; j < n; ++j) {
    if (!std::isfinite(u[j].real()) || !std::isfinite(u[j].imag()))
      throw std::invalid_argument("network: input vector must be finite");
  }
  derive_bounds(activations);  // throws when a component has a degenerate bound
}

namespace {

void accumulate_component(const ActivationComponent& c, double& bx, double& by, bool& all_positive) {
  const double s = sigma_slope_max(c.kind);
  bx = std::abs(c.c1) * s;
  by = std::abs(c.c2) * s;
  if (!(c.c1 > 0.0 && c.c2 > 0.0)) all_positive = false;
  if (!std::isfinite(c.c1) || !std::isfinite(c.c2))
    throw std::invalid_argument("activation: coefficients must be finite");
  if (bx == 0.0 || by == 0.0)
    throw std::invalid_argument("activation: zero coefficient gives a zero derivative bound; bounds must be positive");
}

}  // namespace

ActivationBounds derive_bounds(const ActivationSpec& spec) {
  const int n = spec.size();
  if (n == 0) throw std::invalid_argument("activation: empty spec");
  ActivationBounds out;
  out.n = n;
  out.lamRR.resize(n); out.lamRI.resize(n); out.lamIR.resize(n); out.lamII.resize(n);
  out.muRR.resize(n);  out.muRI.resize(n);  out.muIR.resize(n);  out.muII.resize(n);
  out.f_is_h1 = true;
  out.g_is_h1 = true;
  for (int j = 0; j < n; ++j) {
    const NodeActivation& a = spec.nodes[j];
    accumulate_component(a.fR, out.lamRR[j], out.lamRI[j], out.f_is_h1);
    accumulate_component(a.fI, out.lamIR[j], out.lamII[j], out.f_is_h1);
    accumulate_component(a.gR, out.muRR[j], out.muRI[j], out.g_is_h1);
    accumulate_component(a.gI, out.muIR[j], out.muII[j], out.g_is_h1);
  }
  return out;
}

std::pair<double, double> eval_activation(const ActivationSpec& spec, int node, Which which,
                                          double zR, double zI) {
  if (node < 0 || node >= spec.size()) throw std::invalid_argument("eval_activation: node out of range");
  const NodeActivation& a = spec.nodes[node];
  if (which == Which::F) return {a.fR.eval(zR, zI), a.fI.eval(zR, zI)};
  return {a.gR.eval(zR, zI), a.gI.eval(zR, zI)};
}

}  // namespace cvnn
