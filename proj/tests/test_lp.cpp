#include <doctest.h>

#include <random>

#include "cvnn/lp.hpp"

using namespace cvnn;

TEST_SUITE("lp") {

TEST_CASE("two-constraint optimum at a vertex") {
  lp::Problem p;
  p.A.resize(2, 2);
  p.A << 1, 2, 3, 1;
  p.b.resize(2);
  p.b << 4, 6;
  p.c.resize(2);
  p.c << 1, 1;
  p.lb = Vec::Zero(2);
  p.ub = Vec::Constant(2, 10.0);
  auto sol = lp::solve(p);
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.x[0] == doctest::Approx(1.6).epsilon(1e-9));
  CHECK(sol.x[1] == doctest::Approx(1.2).epsilon(1e-9));
  CHECK(sol.objective == doctest::Approx(2.8).epsilon(1e-9));
}

TEST_CASE("binding upper bounds") {
  lp::Problem p;
  p.A = Mat::Zero(1, 2);
  p.b = Vec::Zero(1);
  p.c.resize(2);
  p.c << 2, 3;
  p.lb = Vec::Zero(2);
  p.ub.resize(2);
  p.ub << 1.5, 2.5;
  auto sol = lp::solve(p);
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.objective == doctest::Approx(2 * 1.5 + 3 * 2.5));
}

TEST_CASE("negative rhs forces a phase-1 start") {
  // x >= 2 written as -x <= -2
  lp::Problem p;
  p.A.resize(1, 1);
  p.A << -1;
  p.b.resize(1);
  p.b << -2;
  p.c.resize(1);
  p.c << -1;  // minimize x
  p.lb = Vec::Zero(1);
  p.ub = Vec::Constant(1, 10.0);
  auto sol = lp::solve(p);
  REQUIRE(sol.status == lp::Status::Optimal);
  CHECK(sol.x[0] == doctest::Approx(2.0));
}

TEST_CASE("infeasible system detected") {
  // x <= 1 and x >= 3
  lp::Problem p;
  p.A.resize(2, 1);
  p.A << 1, -1;
  p.b.resize(2);
  p.b << 1, -3;
  p.c = Vec::Ones(1);
  p.lb = Vec::Zero(1);
  p.ub = Vec::Constant(1, 10.0);
  CHECK(lp::solve(p).status == lp::Status::Infeasible);
}

TEST_CASE("unbounded detected") {
  lp::Problem p;
  p.A = Mat::Zero(0, 1);
  p.b = Vec::Zero(0);
  p.c = Vec::Ones(1);
  p.lb = Vec::Zero(1);
  p.ub = Vec::Constant(1, lp::kInf);
  CHECK(lp::solve(p).status == lp::Status::Unbounded);
}

TEST_CASE("random problems: solution feasible and no feasible point beats it") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const int nv = 2 + static_cast<int>(rng() % 4);
    const int m = 1 + static_cast<int>(rng() % 5);
    lp::Problem p;
    p.A.resize(m, nv);
    p.b.resize(m);
    p.c.resize(nv);
    for (int i = 0; i < m; ++i) {
      for (int j = 0; j < nv; ++j) p.A(i, j) = u(rng);
      p.b[i] = u(rng) + 1.5;  // keeps the origin-shifted box feasible often
    }
    for (int j = 0; j < nv; ++j) p.c[j] = u(rng);
    p.lb = Vec::Zero(nv);
    p.ub = Vec::Ones(nv);
    auto sol = lp::solve(p);
    if (sol.status != lp::Status::Optimal) continue;
    CHECK(((p.A * sol.x - p.b).array() <= 1e-7).all());
    CHECK((sol.x.array() >= -1e-9).all());
    CHECK((sol.x.array() <= 1.0 + 1e-9).all());
    // random feasible candidates never beat the reported optimum
    for (int s = 0; s < 200; ++s) {
      Vec cand(nv);
      for (int j = 0; j < nv; ++j) cand[j] = 0.5 * (u(rng) + 1.0);
      if (((p.A * cand - p.b).array() <= 0.0).all())
        CHECK(p.c.dot(cand) <= sol.objective + 1e-7);
    }
  }
}

}  // TEST_SUITE
