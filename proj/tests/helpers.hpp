#pragma once

#include <complex>
#include <random>

#include "cvnn/model.hpp"

namespace testutil {

using namespace cvnn;

inline ActivationComponent random_component(std::mt19937& rng, bool positive_coeffs) {
  std::uniform_real_distribution<double> mag(0.2, 2.0);
  std::bernoulli_distribution flip(0.5);
  ActivationComponent c;
  c.kind = flip(rng) ? Sigma::Logistic : Sigma::Bipolar;
  c.c1 = mag(rng);
  c.c2 = mag(rng);
  if (!positive_coeffs) {
    if (flip(rng)) c.c1 = -c.c1;
    if (flip(rng)) c.c2 = -c.c2;
  }
  return c;
}

inline ActivationSpec random_activations(std::mt19937& rng, int n, bool h1) {
  ActivationSpec spec;
  spec.nodes.resize(n);
  for (auto& node : spec.nodes) {
    node.fR = random_component(rng, h1);
    node.fI = random_component(rng, h1);
    node.gR = random_component(rng, false);
    node.gI = random_component(rng, false);
  }
  return spec;
}

/// Random network; `coupling` scales the weight magnitudes and controls
/// whether the criteria have any chance of certifying it.
inline NetworkSpec random_network(std::mt19937& rng, int n, double coupling = 1.0, bool h1 = true,
                                  double d_lo = 5.0, double d_hi = 25.0) {
  std::uniform_real_distribution<double> dd(d_lo, d_hi);
  std::uniform_real_distribution<double> w(-coupling, coupling);
  std::uniform_real_distribution<double> tau(0.5, 3.0);
  NetworkSpec net;
  net.n = n;
  net.d.resize(n);
  for (int i = 0; i < n; ++i) net.d[i] = dd(rng);
  net.A.resize(n, n);
  net.B.resize(n, n);
  net.u.resize(n);
  for (int j = 0; j < n; ++j) {
    net.u[j] = Complex(w(rng), w(rng));
    for (int k = 0; k < n; ++k) {
      net.A(j, k) = Complex(w(rng), w(rng));
      net.B(j, k) = Complex(w(rng), w(rng));
    }
  }
  Mat taus(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) taus(j, k) = tau(rng);
  net.delays = DelaySpec::constant(taus);
  net.activations = random_activations(rng, n, h1);
  return net;
}

inline Vec random_positive(std::mt19937& rng, int n, double lo = 0.1, double hi = 1.0) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vec v(n);
  for (int i = 0; i < n; ++i) v[i] = u(rng);
  return v;
}

}  // namespace testutil
