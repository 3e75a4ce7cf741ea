#include "cvnn/decompose.hpp"

#include <cmath>
#include <stdexcept>

namespace cvnn {

namespace {

Mat abs_part(const MatC& m, bool real_part) {
  Mat out(m.rows(), m.cols());
  for (int j = 0; j < m.rows(); ++j)
    for (int k = 0; k < m.cols(); ++k) out(j, k) = std::abs(real_part ? m(j, k).real() : m(j, k).imag());
  return out;
}

Mat block2(const Mat& tl, const Mat& tr, const Mat& bl, const Mat& br) {
  const int n = static_cast<int>(tl.rows());
  Mat out(2 * n, 2 * n);
  out.topLeftCorner(n, n) = tl;
  out.topRightCorner(n, n) = tr;
  out.bottomLeftCorner(n, n) = bl;
  out.bottomRightCorner(n, n) = br;
  return out;
}

Mat diag_blocks(const Vec& tl, const Vec& tr, const Vec& bl, const Vec& br) {
  const int n = static_cast<int>(tl.size());
  Mat out = Mat::Zero(2 * n, 2 * n);
  for (int j = 0; j < n; ++j) {
    out(j, j) = tl[j];
    out(j, n + j) = tr[j];
    out(n + j, j) = bl[j];
    out(n + j, n + j) = br[j];
  }
  return out;
}

}  // namespace

ComparisonMatrices comparison_matrices(const NetworkSpec& net, const ActivationBounds& bounds) {
  if (bounds.n != net.n) throw std::invalid_argument("comparison_matrices: dimension mismatch");
  const int n = net.n;
  ComparisonMatrices out;
  out.Dbar.resize(2 * n);
  out.Dbar.head(n) = net.d;
  out.Dbar.tail(n) = net.d;
  const Mat aR = abs_part(net.A, true), aI = abs_part(net.A, false);
  const Mat bR = abs_part(net.B, true), bI = abs_part(net.B, false);
  out.Abar = block2(aR, aI, aI, aR);
  out.Bbar = block2(bR, bI, bI, bR);
  out.Fbar = diag_blocks(bounds.lamRR, bounds.lamRI, bounds.lamIR, bounds.lamII);
  out.Gbar = diag_blocks(bounds.muRR, bounds.muRI, bounds.muIR, bounds.muII);
  return out;
}

DeltaCorrection delta_correction(const NetworkSpec& net, const ActivationBounds& bounds) {
  if (bounds.n != net.n) throw std::invalid_argument("delta_correction: dimension mismatch");
  const int n = net.n;
  DeltaCorrection out;
  out.P1.resize(n);
  out.P2.resize(n);
  out.P3.resize(n);
  for (int j = 0; j < n; ++j) {
    const double aR = net.A(j, j).real();
    const double aI = net.A(j, j).imag();
    out.P1[j] = std::abs(aR) - std::max(0.0, aR);
    out.P2[j] = std::abs(aI) - std::max(0.0, -aI);
    out.P3[j] = std::abs(aI) - std::max(0.0, aI);
  }
  out.Delta.resize(2 * n);
  for (int j = 0; j < n; ++j) {
    out.Delta[j] = out.P1[j] * bounds.lamRR[j] + out.P2[j] * bounds.lamIR[j];
    out.Delta[n + j] = out.P1[j] * bounds.lamII[j] + out.P3[j] * bounds.lamRI[j];
  }
  return out;
}

RealSystem decompose(const NetworkSpec& net, const ActivationBounds& bounds) {
  net.validate();
  if (bounds.n != net.n) throw std::invalid_argument("decompose: dimension mismatch");
  RealSystem sys;
  sys.n = net.n;
  ComparisonMatrices cm = comparison_matrices(net, bounds);
  sys.Dbar = std::move(cm.Dbar);
  sys.Abar = std::move(cm.Abar);
  sys.Bbar = std::move(cm.Bbar);
  sys.Fbar = std::move(cm.Fbar);
  sys.Gbar = std::move(cm.Gbar);
  DeltaCorrection dc = delta_correction(net, bounds);
  sys.Delta = std::move(dc.Delta);
  sys.P1 = std::move(dc.P1);
  sys.P2 = std::move(dc.P2);
  sys.P3 = std::move(dc.P3);
  const Mat tau = net.delays.upper_matrix();
  sys.tau_upper.resize(2 * net.n, 2 * net.n);
  sys.tau_upper.topLeftCorner(net.n, net.n) = tau;
  sys.tau_upper.topRightCorner(net.n, net.n) = tau;
  sys.tau_upper.bottomLeftCorner(net.n, net.n) = tau;
  sys.tau_upper.bottomRightCorner(net.n, net.n) = tau;
  sys.net = std::make_shared<NetworkSpec>(net);
  return sys;
}

void RealSystem::rhs(double t, const Vec& z, const DelayedState& delayed, Vec& out) const {
  (void)t;
  const NetworkSpec& nt = *net;
  out.resize(2 * n);
  // instantaneous activations, once per source node
  thread_local std::vector<std::pair<double, double>> fval;
  fval.resize(n);
  for (int k = 0; k < n; ++k) fval[k] = eval_activation(nt.activations, k, Which::F, z[k], z[n + k]);
  for (int j = 0; j < n; ++j) {
    double accR = -nt.d[j] * z[j] + nt.u[j].real();
    double accI = -nt.d[j] * z[n + j] + nt.u[j].imag();
    for (int k = 0; k < n; ++k) {
      const auto [fRk, fIk] = fval[k];
      const double aR = nt.A(j, k).real(), aI = nt.A(j, k).imag();
      accR += aR * fRk - aI * fIk;
      accI += aR * fIk + aI * fRk;
      const auto [zRd, zId] = delayed(j, k);
      const auto [gRk, gIk] = eval_activation(nt.activations, k, Which::G, zRd, zId);
      const double bR = nt.B(j, k).real(), bI = nt.B(j, k).imag();
      accR += bR * gRk - bI * gIk;
      accI += bR * gIk + bI * gRk;
    }
    out[j] = accR;
    out[n + j] = accI;
  }
}

Vec RealSystem::rhs_at_constant(const Vec& z) const {
  Vec out;
  rhs(0.0, z, [&](int, int k) { return std::pair<double, double>(z[k], z[n + k]); }, out);
  return out;
}

Mat RealSystem::comparison_matrix() const {
  Mat c = -(Abar * Fbar) - Bbar * Gbar;
  c.diagonal() += Dbar;
  return c;
}

}  // namespace cvnn
