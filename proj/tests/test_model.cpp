#include <doctest.h>

#include <cmath>
#include <random>

#include "cvnn/fixture.hpp"
#include "cvnn/model.hpp"
#include "helpers.hpp"

using namespace cvnn;

TEST_SUITE("model") {

TEST_CASE("derived bounds for the reference activations") {
  const NetworkSpec net = fixture::two_neuron_network();
  const ActivationBounds b = derive_bounds(net.activations);
  for (int j = 0; j < 2; ++j) {
    CHECK(b.lamRR[j] == doctest::Approx(1.0));
    CHECK(b.lamRI[j] == doctest::Approx(0.5));
    CHECK(b.lamIR[j] == doctest::Approx(0.25));
    CHECK(b.lamII[j] == doctest::Approx(0.5));
    CHECK(b.muRR[j] == doctest::Approx(0.25));
    CHECK(b.muRI[j] == doctest::Approx(0.5));
    CHECK(b.muIR[j] == doctest::Approx(1.0));
    CHECK(b.muII[j] == doctest::Approx(0.5));
  }
  CHECK(b.f_is_h1);
}

TEST_CASE("zero coefficients are rejected") {
  ActivationSpec spec;
  spec.nodes.resize(1);
  spec.nodes[0].fR = {Sigma::Logistic, 0.0, 0.0};
  spec.nodes[0].fI = {Sigma::Logistic, 1.0, 1.0};
  spec.nodes[0].gR = {Sigma::Logistic, 1.0, 1.0};
  spec.nodes[0].gI = {Sigma::Logistic, 1.0, 1.0};
  CHECK_THROWS_AS(derive_bounds(spec), std::invalid_argument);
}

TEST_CASE("negative coefficients clear the strict class flag but keep bounds") {
  std::mt19937 rng(3);
  ActivationSpec spec = testutil::random_activations(rng, 3, true);
  spec.nodes[1].fI.c2 = -spec.nodes[1].fI.c2;
  const ActivationBounds b = derive_bounds(spec);
  CHECK_FALSE(b.f_is_h1);
  CHECK(b.lamII[1] > 0.0);
}

TEST_CASE("symmetry points of the two sigmoid kinds") {
  CHECK(sigma_eval(Sigma::Bipolar, 0.0) == doctest::Approx(0.0));
  CHECK(sigma_eval(Sigma::Logistic, 0.0) == doctest::Approx(0.5));
  const NetworkSpec net = fixture::two_neuron_network();
  const auto [fR, fI] = eval_activation(net.activations, 0, Which::F, 0.0, 0.0);
  CHECK(fR == doctest::Approx(0.0));
  CHECK(fI == doctest::Approx(0.5));
}

TEST_CASE("reference f at 1 + 1i against a direct high-precision evaluation") {
  // f^R = (1 - e^-3) / (1 + e^-3), f^I = 1 / (1 + e^-3)
  const long double e3 = std::expl(-3.0L);
  const double fR_expect = static_cast<double>((1.0L - e3) / (1.0L + e3));
  const double fI_expect = static_cast<double>(1.0L / (1.0L + e3));
  const NetworkSpec net = fixture::two_neuron_network();
  const auto [fR, fI] = eval_activation(net.activations, 0, Which::F, 1.0, 1.0);
  CHECK(fR == doctest::Approx(fR_expect).epsilon(1e-14));
  CHECK(fI == doctest::Approx(fI_expect).epsilon(1e-14));
}

TEST_CASE("saturated arguments return the asymptotes") {
  CHECK(sigma_eval(Sigma::Logistic, 1e6) == 1.0);
  CHECK(sigma_eval(Sigma::Logistic, -1e6) == 0.0);
  CHECK(sigma_eval(Sigma::Bipolar, 1e6) == 1.0);
  CHECK(sigma_eval(Sigma::Bipolar, -1e6) == -1.0);
  CHECK(std::isfinite(sigma_deriv(Sigma::Logistic, -745.0)));
}

TEST_CASE("bounds are tight on a grid and never exceeded") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 10; ++trial) {
    ActivationSpec spec = testutil::random_activations(rng, 2, trial % 2 == 0);
    const ActivationBounds b = derive_bounds(spec);
    for (int node = 0; node < 2; ++node) {
      const NodeActivation& a = spec.nodes[node];
      struct Slot {
        const ActivationComponent* c;
        bool wrt_x;
        double bound;
      };
      const Slot slots[] = {
          {&a.fR, true, b.lamRR[node]},  {&a.fR, false, b.lamRI[node]},
          {&a.fI, true, b.lamIR[node]},  {&a.fI, false, b.lamII[node]},
          {&a.gR, true, b.muRR[node]},   {&a.gR, false, b.muRI[node]},
          {&a.gI, true, b.muIR[node]},   {&a.gI, false, b.muII[node]},
      };
      for (const Slot& s : slots) {
        double max_seen = 0.0;
        for (double x = -10.0; x <= 10.0; x += 0.25)
          for (double y = -10.0; y <= 10.0; y += 0.25) {
            const double der = s.wrt_x ? s.c->d_dzR(x, y) : s.c->d_dzI(x, y);
            CHECK(std::abs(der) <= s.bound * (1.0 + 1e-12));
            max_seen = std::max(max_seen, std::abs(der));
          }
        // the grid contains the origin, where the slope peaks
        CHECK(max_seen >= 0.99 * s.bound);
      }
    }
  }
}

TEST_CASE("strict-class specs have positive partials everywhere sampled") {
  std::mt19937 rng(13);
  ActivationSpec spec = testutil::random_activations(rng, 3, true);
  const ActivationBounds b = derive_bounds(spec);
  REQUIRE(b.f_is_h1);
  for (const auto& node : spec.nodes)
    for (double x = -8.0; x <= 8.0; x += 0.5)
      for (double y = -8.0; y <= 8.0; y += 0.5) {
        CHECK(node.fR.d_dzR(x, y) > 0.0);
        CHECK(node.fR.d_dzI(x, y) > 0.0);
        CHECK(node.fI.d_dzR(x, y) > 0.0);
        CHECK(node.fI.d_dzI(x, y) > 0.0);
      }
}

TEST_CASE("sigmoids are monotone in their argument") {
  for (const Sigma kind : {Sigma::Logistic, Sigma::Bipolar}) {
    double prev = sigma_eval(kind, -40.0);
    for (double x = -39.5; x <= 40.0; x += 0.5) {
      const double cur = sigma_eval(kind, x);
      CHECK(cur >= prev);
      prev = cur;
    }
  }
}

TEST_CASE("network validation rejects bad inputs") {
  NetworkSpec net = fixture::two_neuron_network();
  SUBCASE("nonpositive decay") {
    net.d[0] = 0.0;
    CHECK_THROWS_AS(net.validate(), std::invalid_argument);
  }
  SUBCASE("delay going negative") {
    net.delays.at(0, 0) = {DelayEntry::Kind::Sin, 0.5, 1.0, 0.0};
    CHECK_THROWS_AS(net.validate(), std::invalid_argument);
  }
  SUBCASE("dimension mismatch") {
    net.u.resize(3);
    CHECK_THROWS_AS(net.validate(), std::invalid_argument);
  }
}

}  // TEST_SUITE
