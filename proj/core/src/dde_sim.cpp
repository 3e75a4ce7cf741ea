#include "cvnn/dde_sim.hpp"

#include <cmath>
#include <string>

namespace cvnn {

InitialHistory InitialHistory::constant(const Vec& z0) {
  InitialHistory h;
  h.poly.resize(z0.size());
  for (int i = 0; i < z0.size(); ++i) h.poly[i] = {z0[i]};
  return h;
}

InitialHistory InitialHistory::constant_complex(const VecC& z0) {
  const int n = static_cast<int>(z0.size());
  Vec v(2 * n);
  for (int i = 0; i < n; ++i) {
    v[i] = z0[i].real();
    v[n + i] = z0[i].imag();
  }
  return constant(v);
}

double InitialHistory::eval(int comp, double t) const {
  const auto& c = poly[comp];
  double acc = 0.0;
  for (size_t i = c.size(); i-- > 0;) acc = acc * t + c[i];
  return acc;
}

double InitialHistory::eval_deriv(int comp, double t) const {
  const auto& c = poly[comp];
  double acc = 0.0;
  for (size_t i = c.size(); i-- > 1;) acc = acc * t + c[i] * static_cast<double>(i);
  return acc;
}

Vec InitialHistory::eval_all(double t) const {
  Vec out(dim());
  for (int i = 0; i < dim(); ++i) out[i] = eval(i, t);
  return out;
}

SimulationDiverged::SimulationDiverged(double t)
    : std::runtime_error("simulation diverged at t = " + std::to_string(t)), time(t) {}

namespace {

// cubic Hermite on [t_k, t_k + h] at normalized position th in [0, 1]
inline double hermite(double zk, double dk, double zk1, double dk1, double h, double th) {
  const double omt = 1.0 - th;
  const double h00 = (1.0 + 2.0 * th) * omt * omt;
  const double h10 = th * omt * omt;
  const double h01 = th * th * (3.0 - 2.0 * th);
  const double h11 = th * th * (th - 1.0);
  return h00 * zk + h10 * h * dk + h01 * zk1 + h11 * h * dk1;
}

}  // namespace

double HistoryView::component(double s, int c) const {
  const Trajectory& tr = traj_;
  if (s <= 0.0) {
    if (s < tr.t_min - tr.h)
      throw std::invalid_argument("delayed time " + std::to_string(s) +
                                  " precedes the initial segment");
    return tr.init.eval(c, s);
  }
  const double tc = tr.t[committed_];
  if (s >= tc) {
    if (s == tc) return tr.z[committed_][c];
    return tr.z[committed_][c] + (s - tc) * tr.dz[committed_][c];
  }
  int k = static_cast<int>(s / tr.h);
  if (k >= committed_) k = committed_ - 1;
  const double th = (s - tr.t[k]) / tr.h;
  return hermite(tr.z[k][c], tr.dz[k][c], tr.z[k + 1][c], tr.dz[k + 1][c], tr.h, th);
}

std::pair<double, double> HistoryView::pair(double s, int c0, int c1) const {
  ++counter_;
  return {component(s, c0), component(s, c1)};
}

Vec HistoryView::state(double s) const {
  ++counter_;
  Vec out(traj_.dim());
  for (int c = 0; c < out.size(); ++c) out[c] = component(s, c);
  return out;
}

Vec Trajectory::at(double s) const {
  if (s <= 0.0) {
    if (s < t_min - h) throw std::out_of_range("Trajectory::at: before the initial segment");
    return init.eval_all(s);
  }
  if (s > t.back() + 1e-12) throw std::out_of_range("Trajectory::at: past the end of the run");
  const int last = samples() - 1;
  int k = std::min(static_cast<int>(s / h), last - 1);
  const double th = (s - t[k]) / h;
  Vec out(dim());
  for (int c = 0; c < out.size(); ++c)
    out[c] = hermite(z[k][c], dz[k][c], z[k + 1][c], dz[k + 1][c], h, th);
  return out;
}

Trajectory integrate_dde(int dim, const DelayedRhs& rhs, const InitialHistory& init, double t_min,
                         double t_end, double h, double divergence_limit) {
  if (!(h > 0.0)) throw std::invalid_argument("integrate_dde: h must be positive");
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate_dde: t_end must be positive");
  if (init.dim() != dim) throw std::invalid_argument("integrate_dde: initial history dimension mismatch");

  long nsteps = std::llround(t_end / h);
  if (nsteps < 1 || std::abs(nsteps * h - t_end) > 1e-9 * std::max(1.0, t_end))
    nsteps = static_cast<long>(std::ceil(t_end / h - 1e-12));

  Trajectory tr;
  tr.h = h;
  tr.t_min = t_min;
  tr.init = init;
  tr.t.reserve(nsteps + 1);
  tr.z.reserve(nsteps + 1);
  tr.dz.reserve(nsteps + 1);

  HistoryView view(tr, tr.delay_evaluations);

  tr.t.push_back(0.0);
  tr.z.push_back(init.eval_all(0.0));
  tr.dz.emplace_back(dim);
  view.committed_ = 0;
  rhs(0.0, tr.z[0], view, tr.dz[0]);

  Vec y(dim), k2(dim), k3(dim), k4(dim), znext(dim);
  for (long i = 0; i < nsteps; ++i) {
    const double t = tr.t[static_cast<size_t>(i)];
    const Vec& zi = tr.z[static_cast<size_t>(i)];
    const Vec& k1 = tr.dz[static_cast<size_t>(i)];
    view.committed_ = static_cast<int>(i);

    y = zi + (0.5 * h) * k1;
    rhs(t + 0.5 * h, y, view, k2);
    y = zi + (0.5 * h) * k2;
    rhs(t + 0.5 * h, y, view, k3);
    y = zi + h * k3;
    rhs(t + h, y, view, k4);
    znext = zi + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const double norm = znext.cwiseAbs().maxCoeff();
    if (!(norm < divergence_limit)) throw SimulationDiverged(t + h);

    tr.t.push_back(t + h);
    tr.z.push_back(znext);
    tr.dz.emplace_back(dim);
    // derivative at the new point; the step is not committed until it is stored
    rhs(t + h, tr.z.back(), view, tr.dz.back());
    view.committed_ = static_cast<int>(i) + 1;
  }
  return tr;
}

Trajectory simulate(const RealSystem& sys, const InitialHistory& init, double t_end, double h) {
  const NetworkSpec& net = *sys.net;
  if (init.dim() != sys.dim()) throw std::invalid_argument("simulate: initial history dimension mismatch");
  if (net.delays.min_lower() <= 0.0 && h > 1e-2)
    throw std::invalid_argument("simulate: a delay can reach zero; h <= 1e-2 is required");
  const double tau_max = net.delays.max_upper();
  const int n = sys.n;

  DelayedRhs rhs = [&sys, n](double t, const Vec& state, const HistoryView& view, Vec& out) {
    sys.rhs(t, state,
            [&](int j, int k) {
              const double tau = sys.net->delays.at(j, k).eval(t);
              return view.pair(t - tau, k, n + k);
            },
            out);
  };
  return integrate_dde(sys.dim(), rhs, init, -tau_max, t_end, h);
}

Trajectory simulate_complex(const NetworkSpec& net, const VecC& z0, double t_end, double h) {
  net.validate();
  const ActivationBounds bounds = derive_bounds(net.activations);
  const RealSystem sys = decompose(net, bounds);
  return simulate(sys, InitialHistory::constant_complex(z0), t_end, h);
}

}  // namespace cvnn
