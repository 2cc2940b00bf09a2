#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <utility>

#include "slideopt/baselines.hpp"

// Comparison methods: accelerated gradient descent on composite problems and
// on networks, the local-solve round-trip method, and plain extragradient on
// operator networks.

using namespace slideopt;

namespace {

// composite r(x) = (1/2)||x||^2 split evenly between p and q
CompositeMinProblem unit_quadratic(std::size_t dim) {
  SmoothFunction half(
      dim, 0.5, 0.5,
      [](const Vec& x) { return 0.25 * nrm2sq(x); },
      [](const Vec& x) {
        Vec g = x;
        scal(0.5, g);
        return g;
      });
  SmoothFunction q = half;
  return CompositeMinProblem(std::move(half), std::move(q), 1.0);
}

Worker scaled_worker(int id, double h, double b) {
  SmoothFunction fn(
      1, h, h,
      [h, b](const Vec& x) { return 0.5 * h * x[0] * x[0] - b * x[0]; },
      [h, b](const Vec& x) { return Vec{h * x[0] - b}; });
  return Worker{id, std::move(fn), 0};
}

OpWorker affine_op_worker(int id, double a, double b) {
  OperatorField op(1, a, a, [a, b](const Vec& u) { return Vec{a * u[0] - b}; });
  return OpWorker{id, std::move(op), 0};
}

}  // namespace

TEST_SUITE("baselines") {

TEST_CASE("accelerated descent with L = mu solves a quadratic in one step") {
  // momentum vanishes and the step is 1/L, so x_1 = x_0 - grad r(x_0) = 0
  CompositeMinProblem prob = unit_quadratic(1);
  Vec x_star = {0.0};
  RunTrace trace =
      run_acgd(prob, {1.0}, 1.0, 1.0, StopSpec{50, 1e-30}, &x_star);

  REQUIRE(trace.records.size() == 1);  // stopped at the first record
  CHECK(trace.solution[0] == 0.0);
  CHECK(*trace.records[0].dist_sq == 0.0);
  CHECK(*trace.records[0].r_gap == 0.0);
  // each step costs one full gradient: one p call and one q call
  CHECK(trace.records[0].grad_p == 1);
  CHECK(trace.records[0].grad_q == 1);
}

TEST_CASE("accelerated descent converges at the strongly convex rate") {
  CompositeMinProblem prob = unit_quadratic(4);
  Vec x0 = {1.0, -2.0, 0.5, 3.0};
  Vec x_star = zeros(4);
  const double d0 = nrm2sq(x0);

  RunTrace trace = run_acgd(prob, x0, 1.0, 10.0, StopSpec{200, 0.0}, &x_star);

  REQUIRE(trace.records.size() == 200);
  // momentum beta = (sqrt(10)-1)/(sqrt(10)+1); distances shrink geometrically
  CHECK(*trace.records.back().dist_sq < 1e-20 * d0);
  CHECK(*trace.records[50].dist_sq < *trace.records[10].dist_sq);

  SUBCASE("the distance threshold stops the run early") {
    CompositeMinProblem again = unit_quadratic(4);
    RunTrace stopped =
        run_acgd(again, x0, 1.0, 10.0, StopSpec{200, 1e-8}, &x_star);
    CHECK(stopped.records.size() < 200);
    CHECK(*stopped.records.back().dist_sq <= 1e-8);
  }
}

TEST_CASE("accelerated descent rejects bad arguments") {
  CompositeMinProblem prob = unit_quadratic(2);
  Vec x_star = zeros(2);
  CHECK_THROWS_AS(run_acgd(prob, {1.0}, 1.0, 1.0, StopSpec{10, 0.0}, &x_star),
                  std::invalid_argument);
  CHECK_THROWS_AS(
      run_acgd(prob, {1.0, 1.0}, 0.0, 1.0, StopSpec{10, 0.0}, &x_star),
      std::invalid_argument);
  CHECK_THROWS_AS(
      run_acgd(prob, {1.0, 1.0}, 2.0, 1.0, StopSpec{10, 0.0}, &x_star),
      std::invalid_argument);
  CHECK_THROWS_AS(
      run_acgd(prob, {1.0, 1.0}, 1.0, 2.0, StopSpec{0, 0.0}, &x_star),
      std::invalid_argument);
}

TEST_CASE("network descent spends one round per iteration") {
  // average objective (3/4) x^2 - x: minimizer 2/3, L = 2, mu = 1
  Network net;
  net.workers.push_back(scaled_worker(1, 1.0, 1.0));
  net.workers.push_back(scaled_worker(2, 2.0, 1.0));
  Vec x_star = {2.0 / 3.0};

  RunTrace trace =
      run_acgd(net, {0.0}, 1.0, 2.0, StopSpec{60, 0.0}, &x_star);

  REQUIRE(trace.records.size() == 60);
  for (const TraceRecord& row : trace.records)
    CHECK(row.comm_rounds == row.k + 1);
  CHECK(net.comm_rounds == 60);
  CHECK(*trace.records.back().dist_sq < 1e-12);
  CHECK(network_value(net, trace.solution) <=
        network_value(net, Vec{0.0}));
}

TEST_CASE("local-solve rounds converge in one round on identical workers") {
  // both workers hold (1/2)x^2 - b x exactly, so the shift term vanishes and
  // each local solve lands on the shared minimizer b
  Network net;
  net.workers.push_back(scaled_worker(1, 1.0, 0.7));
  net.workers.push_back(scaled_worker(2, 1.0, 0.7));
  Vec x_star = {0.7};

  DaneConfig cfg;
  cfg.mu_tilde = 0.0;
  cfg.max_rounds = 10;
  cfg.eps_dist_sq = 1e-20;
  RunTrace trace = run_dane(net, {0.0}, cfg, &x_star);

  REQUIRE(trace.records.size() == 1);
  CHECK(*trace.records[0].dist_sq <= 1e-20);
  // one gradient gather plus one averaging round
  CHECK(trace.records[0].comm_rounds == 2);
  CHECK(net.comm_rounds == 2);
  CHECK(trace.records[0].inner_iters >= 0);
}

TEST_CASE("local-solve rounds handle heterogeneous workers with damping") {
  Network net;
  net.workers.push_back(scaled_worker(1, 1.0, 1.0));
  net.workers.push_back(scaled_worker(2, 3.0, 0.2));
  // average objective x^2 - 0.6 x: minimizer 0.3
  Vec x_star = {0.3};

  DaneConfig cfg;
  cfg.mu_tilde = 0.5;
  cfg.max_rounds = 40;
  cfg.eps_dist_sq = 1e-18;
  RunTrace trace = run_dane(net, {2.0}, cfg, &x_star);

  CHECK(*trace.records.back().dist_sq <= 1e-18);
  CHECK(trace.records.back().comm_rounds ==
        2 * static_cast<long>(trace.records.size()));
  // distances decrease monotonically on this pair
  for (std::size_t i = 1; i < trace.records.size(); ++i)
    CHECK(*trace.records[i].dist_sq < *trace.records[i - 1].dist_sq);

  DaneConfig bad = cfg;
  bad.max_rounds = 0;
  CHECK_THROWS_AS(run_dane(net, {2.0}, bad, &x_star), std::invalid_argument);
}

TEST_CASE("extragradient on a network spends two rounds per iteration") {
  // average field 2u - 1/2 with root 1/4
  OpNetwork net;
  net.workers.push_back(affine_op_worker(1, 1.0, 0.0));
  net.workers.push_back(affine_op_worker(2, 3.0, 1.0));
  Vec x_star = {0.25};

  RunTrace trace =
      run_extragradient(net, {2.0}, 0.25, 100, nullptr, &x_star);

  REQUIRE(trace.records.size() == 100);
  for (const TraceRecord& row : trace.records)
    CHECK(row.comm_rounds == 2 * (row.k + 1));
  CHECK(net.comm_rounds == 200);
  CHECK(*trace.records.back().dist_sq < 1e-20);

  CHECK_THROWS_AS(run_extragradient(net, {2.0}, 0.0, 10),
                  std::invalid_argument);
  CHECK_THROWS_AS(run_extragradient(net, {2.0}, 0.25, 0),
                  std::invalid_argument);
}

TEST_CASE("constrained extragradient settles on the boundary") {
  // field u - 2 pushes past the unit ball; the solution is the boundary point
  OpNetwork net;
  net.workers.push_back(affine_op_worker(1, 1.0, 2.0));
  ProjectableSet ball = ball_set({0.0}, 1.0);

  RunTrace trace = run_extragradient(net, {-0.5}, 0.5, 60, &ball);
  CHECK(trace.solution[0] == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(ball.contains(trace.solution));
}

}  // TEST_SUITE
