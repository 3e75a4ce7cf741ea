#include "cvnn/fixture.hpp"

namespace cvnn::fixture {

namespace {

ActivationSpec example_activations() {
  // f = bipolar(2 zR + zI) + i logistic(zR + 2 zI), g swaps the two components
  ActivationComponent bip{Sigma::Bipolar, 2.0, 1.0};
  ActivationComponent logi{Sigma::Logistic, 1.0, 2.0};
  NodeActivation node{bip, logi, logi, bip};
  ActivationSpec spec;
  spec.nodes = {node, node};
  return spec;
}

NetworkSpec base_network() {
  NetworkSpec net;
  net.n = 2;
  net.d = Vec::Constant(2, 19.0);
  net.A.resize(2, 2);
  net.A << Complex(-2, -3), Complex(3, -1), Complex(4, -2), Complex(-1, 2);
  net.B.resize(2, 2);
  net.B << Complex(-1, 2), Complex(2, 1), Complex(3, -4), Complex(-3, 2);
  net.u.resize(2);
  net.u << Complex(-3, 1), Complex(2, 4);
  net.activations = example_activations();
  return net;
}

}  // namespace

NetworkSpec two_neuron_network() {
  NetworkSpec net = base_network();
  Mat tau(2, 2);
  tau << 1, 2, 3, 4;
  net.delays = DelaySpec::constant(tau);
  return net;
}

NetworkSpec two_neuron_network_timevarying() {
  NetworkSpec net = base_network();
  net.delays.n = 2;
  net.delays.entries.resize(4);
  net.delays.at(0, 0) = {DelayEntry::Kind::Sin, 1.0, 1.0, 0.0};
  net.delays.at(0, 1) = {DelayEntry::Kind::Cos, 2.0, 1.0, 0.0};
  net.delays.at(1, 0) = {DelayEntry::Kind::Sin, 3.0, -1.0, 0.0};
  net.delays.at(1, 1) = {DelayEntry::Kind::Cos, 4.0, -1.0, 0.0};
  return net;
}

std::vector<VecC> initial_cases() {
  std::vector<VecC> cases(5, VecC(2));
  cases[0] << Complex(-4, 3), Complex(-5, -1);
  cases[1] << Complex(2, 1), Complex(-3, 2.5);
  cases[2] << Complex(3, -5), Complex(6, 3);
  cases[3] << Complex(-2, -4), Complex(-7, 4);
  cases[4] << Complex(1, 4), Complex(-5, -1.5);
  return cases;
}

VecC alternate_input() {
  VecC u(2);
  u << Complex(3, 2), Complex(4, -1);
  return u;
}

Vec reported_equilibrium() {
  Vec v(4);
  v << -0.0351, 0.1423, 0.0912, 0.2239;
  return v;
}

Vec reported_eigs_base() {
  Vec v(4);
  v << -0.7655, 18.6670, 19.8784, 20.9701;
  return v;
}

Vec reported_eigs_sharpened() {
  Vec v(4);
  v << 0.8488, 20.0717, 21.5348, 22.7947;
  return v;
}

}  // namespace cvnn::fixture
