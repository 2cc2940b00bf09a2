#include <doctest.h>

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

#include "slideopt/problems.hpp"

// Data layer and concrete problems: seeded Gaussian stream, ridge regression
// against hand-computed oracles, the robust-regression saddle, synthetic
// similarity-controlled datasets, and spectral constant estimation.

using namespace slideopt;

namespace {

// X = I_2, y = (1, 2), lambda = 0.1: hessian 0.6 I, minimizer y / 1.2
RidgeProblem identity_ridge() {
  Dataset ds;
  ds.x = Matrix(2, 2);
  ds.x.at(0, 0) = 1.0;
  ds.x.at(1, 1) = 1.0;
  ds.y = {1.0, 2.0};
  return RidgeProblem{ds, 0.1};
}

Dataset random_dataset(std::uint64_t seed, std::size_t n, std::size_t d) {
  GaussianStream g(seed);
  Dataset ds;
  ds.x = Matrix(n, d);
  for (std::size_t i = 0; i < n * d; ++i) ds.x.a[i] = g.next();
  ds.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) ds.y[i] = g.next();
  return ds;
}

}  // namespace

TEST_SUITE("problems") {

TEST_CASE("gaussian stream is seed-deterministic with sane moments") {
  GaussianStream a(42);
  GaussianStream b(42);
  for (int i = 0; i < 32; ++i) CHECK(a.next() == b.next());

  GaussianStream c(43);
  GaussianStream d(42);
  bool all_equal = true;
  for (int i = 0; i < 8; ++i) all_equal = all_equal && (c.next() == d.next());
  CHECK_FALSE(all_equal);

  GaussianStream e(7);
  const int n = 20000;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int i = 0; i < n; ++i) {
    const double v = e.next();
    sum += v;
    sum_sq += v * v;
  }
  CHECK(std::abs(sum / n) < 0.05);
  CHECK(std::abs(sum_sq / n - 1.0) < 0.1);
}

TEST_CASE("ridge oracle on the identity design matches hand values") {
  RidgeProblem prob = identity_ridge();

  // value(0) = (1/4)(1 + 4), gradient(0) = -y/2
  Vec zero = zeros(2);
  CHECK(prob.value(zero) == doctest::Approx(1.25).epsilon(1e-15));
  Vec g0 = prob.gradient(zero);
  CHECK(g0[0] == doctest::Approx(-0.5).epsilon(1e-15));
  CHECK(g0[1] == doctest::Approx(-1.0).epsilon(1e-15));

  Matrix h = prob.hessian();
  CHECK(h.at(0, 0) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(h.at(1, 1) == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(h.at(0, 1) == 0.0);

  Vec w = prob.minimizer();
  CHECK(w[0] == doctest::Approx(5.0 / 6.0).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(5.0 / 3.0).epsilon(1e-12));
  Vec gw = prob.gradient(w);
  CHECK(std::abs(gw[0]) < 1e-12);
  CHECK(std::abs(gw[1]) < 1e-12);

  SmoothFunction f = prob.as_smooth(0.6);
  CHECK(f.dim() == 2);
  CHECK(f.smoothness() == 0.6);
  CHECK(f.strong_convexity() == 0.1);
  CHECK(f.value(zero) == prob.value(zero));
}

TEST_CASE("ridge gradient agrees with central differences on random data") {
  RidgeProblem prob{random_dataset(11, 6, 4), 0.3};
  SmoothFunction f = prob.as_smooth(10.0);
  GaussianStream g(12);
  Vec w(4);
  for (double& v : w) v = g.next();
  CHECK(check_gradient_fd(f, w, 1e-5) < 1e-7);
  Vec gm = prob.gradient(prob.minimizer());
  CHECK(nrm2(gm) < 1e-10);
}

TEST_CASE("robust saddle oracle on a one-sample problem matches hand values") {
  // d = 1, X = [2], y = (1), lambda = 0, beta = 0.5: at w = 1, r = 0 the
  // residual is 1, so value = 1/2, grad_w = 2, grad_r = 1
  Dataset ds;
  ds.x = Matrix(1, 1);
  ds.x.at(0, 0) = 2.0;
  ds.y = {1.0};
  RobustRegressionSaddle prob{ds, 0.0, 0.5, 1.0};

  CHECK(prob.dim_w() == 1);
  CHECK(prob.dim_r() == 1);
  CHECK(prob.dim() == 2);

  Vec w = {1.0};
  Vec r = {0.0};
  CHECK(prob.value(w, r) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(prob.grad_w(w, r)[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(prob.grad_r(w, r)[0] == doctest::Approx(1.0).epsilon(1e-15));

  // with a shift: w = 1, r = 0.5 gives residual 1.5
  Vec r2 = {0.5};
  CHECK(prob.value(w, r2) ==
        doctest::Approx(0.5 * (1.5 * 1.5 - 0.5 * 0.25)).epsilon(1e-15));
  CHECK(prob.grad_w(w, r2)[0] == doctest::Approx(1.5 * 2.5).epsilon(1e-15));
  CHECK(prob.grad_r(w, r2)[0] ==
        doctest::Approx(1.5 * 1.0 - 0.5 * 0.5).epsilon(1e-15));

  OperatorField op = robust_operator(prob, 3.0, 0.0);
  CHECK(op.dim() == 2);
  CHECK(op.lipschitz() == 3.0);
  Vec field = op.apply({1.0, 0.0});
  CHECK(field[0] == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(field[1] == doctest::Approx(-1.0).epsilon(1e-15));

  CHECK_THROWS_AS(prob.value({1.0, 2.0}, r), std::invalid_argument);
}

TEST_CASE("robust saddle gradients agree with central differences") {
  RobustRegressionSaddle prob{random_dataset(21, 3, 2), 0.2, 0.4, 1.0};
  GaussianStream g(22);
  Vec w(prob.dim_w());
  Vec r(prob.dim_r());
  for (double& v : w) v = 0.3 * g.next();
  for (double& v : r) v = 0.3 * g.next();

  const double h = 1e-6;
  Vec gw = prob.grad_w(w, r);
  for (std::size_t j = 0; j < w.size(); ++j) {
    Vec wp = w, wm = w;
    wp[j] += h;
    wm[j] -= h;
    const double fd = (prob.value(wp, r) - prob.value(wm, r)) / (2.0 * h);
    CHECK(std::abs(fd - gw[j]) < 1e-6);
  }
  Vec gr = prob.grad_r(w, r);
  for (std::size_t j = 0; j < r.size(); ++j) {
    Vec rp = r, rm = r;
    rp[j] += h;
    rm[j] -= h;
    const double fd = (prob.value(w, rp) - prob.value(w, rm)) / (2.0 * h);
    CHECK(std::abs(fd - gr[j]) < 1e-6);
  }
}

TEST_CASE("the saddle constraint leaves w free and clips each shift block") {
  RobustRegressionSaddle prob{random_dataset(31, 2, 2), 0.1, 0.3, 0.5};
  ProjectableSet set = prob.constraint();

  // u = [w(2); r_1(2); r_2(2)]: first block inside, second at norm 5
  Vec u = {7.0, -9.0, 0.1, 0.2, 3.0, 4.0};
  Vec pu = set.project(u);
  CHECK(pu[0] == 7.0);
  CHECK(pu[1] == -9.0);
  CHECK(pu[2] == doctest::Approx(0.1).epsilon(1e-15));
  CHECK(pu[3] == doctest::Approx(0.2).epsilon(1e-15));
  CHECK(pu[4] == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(pu[5] == doctest::Approx(0.4).epsilon(1e-12));
  CHECK(set.contains(pu));
  CHECK_FALSE(set.contains(u));
}

TEST_CASE("synthetic data is seed-deterministic and sigma-controlled") {
  SynthSpec spec;
  spec.seed = 5;
  spec.server_samples = 10;
  spec.features = 3;
  spec.sigma = 0.01;
  spec.workers = 4;

  SynthData a = synth_generate(spec);
  SynthData b = synth_generate(spec);
  CHECK(a.server.x.rows == 10);
  CHECK(a.server.x.cols == 3);
  CHECK(a.server.y.size() == 10);
  CHECK(a.worker_data.size() == 4);
  CHECK(a.w_true.size() == 3);
  CHECK(a.server.x.a == b.server.x.a);
  CHECK(a.server.y == b.server.y);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(a.worker_data[i].x.a == b.worker_data[i].x.a);
    CHECK(a.worker_data[i].y == b.worker_data[i].y);
  }

  // workers differ from the server and from each other when sigma > 0
  CHECK(a.worker_data[0].x.a != a.server.x.a);
  CHECK(a.worker_data[0].x.a != a.worker_data[1].x.a);

  SynthSpec copy_spec = spec;
  copy_spec.sigma = 0.0;
  SynthData c = synth_generate(copy_spec);
  for (const Dataset& ds : c.worker_data) {
    CHECK(ds.x.a == c.server.x.a);
    CHECK(ds.y == c.server.y);
  }

  SynthSpec other = spec;
  other.seed = 6;
  SynthData d = synth_generate(other);
  CHECK(d.server.x.a != a.server.x.a);

  SynthSpec bad = spec;
  bad.workers = 0;
  CHECK_THROWS_AS(synth_generate(bad), std::invalid_argument);
}

TEST_CASE("splitting a dataset gives contiguous near-equal chunks") {
  Dataset ds = random_dataset(41, 10, 3);
  std::vector<Dataset> parts = split_dataset(ds, 3);

  REQUIRE(parts.size() == 3);
  CHECK(parts[0].samples() == 4);
  CHECK(parts[1].samples() == 3);
  CHECK(parts[2].samples() == 3);
  for (const Dataset& p : parts) CHECK(p.features() == 3);

  // rows preserved in order: part 1 starts at global row 4
  for (std::size_t j = 0; j < 3; ++j) {
    CHECK(parts[0].x.at(0, j) == ds.x.at(0, j));
    CHECK(parts[1].x.at(0, j) == ds.x.at(4, j));
    CHECK(parts[2].x.at(2, j) == ds.x.at(9, j));
  }
  CHECK(parts[1].y[0] == ds.y[4]);

  CHECK_THROWS_AS(split_dataset(ds, 0), std::invalid_argument);
  CHECK_THROWS_AS(split_dataset(ds, 11), std::invalid_argument);
}

TEST_CASE("constant estimation on identical workers reports zero dissimilarity") {
  RidgeProblem base = identity_ridge();
  std::vector<Dataset> workers = {base.data, base.data, base.data};
  SimilarityEstimate est = estimate_constants(workers, 0.1);

  CHECK(est.converged);
  CHECK(est.mu == 0.1);
  CHECK(est.big_l == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(est.delta <= 1e-12);
  CHECK(est.delta_master <= 1e-12);
  REQUIRE(est.delta_to_master.size() == 3);
  CHECK(est.delta_to_master[0] == 0.0);
}

TEST_CASE("constant estimation separates dissimilar workers") {
  std::vector<Dataset> workers = {random_dataset(51, 8, 3),
                                  random_dataset(52, 8, 3)};
  SimilarityEstimate est = estimate_constants(workers, 0.05);

  CHECK(est.converged);
  CHECK(est.delta > 1e-3);
  CHECK(est.delta ==
        std::max(est.delta_to_average[0], est.delta_to_average[1]));
  CHECK(est.delta_master == est.delta_to_average[0]);
  CHECK(est.big_l > est.mu);
  CHECK(est.power_iterations > 0);

  // two workers sit symmetrically about their average
  CHECK(est.delta_to_average[0] ==
        doctest::Approx(est.delta_to_average[1]).epsilon(1e-6));

  std::vector<Dataset> mismatched = {random_dataset(53, 4, 2),
                                     random_dataset(54, 4, 3)};
  CHECK_THROWS_AS(estimate_constants(mismatched, 0.1), std::invalid_argument);
}

TEST_CASE("the network minimizer solves the averaged ridge problem") {
  // two identity-design workers with labels (1,2) and (3,0):
  // average normal equations give w = mean(y) / 1.2
  Dataset d1;
  d1.x = Matrix(2, 2);
  d1.x.at(0, 0) = 1.0;
  d1.x.at(1, 1) = 1.0;
  d1.y = {1.0, 2.0};
  Dataset d2 = d1;
  d2.y = {3.0, 0.0};
  std::vector<Dataset> data = {d1, d2};

  Vec w = ridge_network_minimizer(data, 0.1);
  CHECK(w[0] == doctest::Approx(2.0 / 1.2).epsilon(1e-12));
  CHECK(w[1] == doctest::Approx(1.0 / 1.2).epsilon(1e-12));

  Network net = make_ridge_network(data, 0.1, 0.6);
  REQUIRE(net.size() == 2);
  CHECK(net.workers[0].id == 1);
  CHECK(net.workers[1].id == 2);
  CHECK(net.dim() == 2);
  CHECK(net.master().fn.smoothness() == 0.6);

  // average network gradient vanishes at the network minimizer
  Vec g = broadcast_gather(net, w);
  CHECK(nrm2(g) < 1e-12);

  // and matches the per-worker ridge oracle away from it
  RidgeProblem p1{d1, 0.1};
  Vec at = {0.5, -0.25};
  Vec gw = net.workers[0].fn.gradient(at);
  Vec gp = p1.gradient(at);
  CHECK(gw[0] == gp[0]);
  CHECK(gw[1] == gp[1]);
}

TEST_CASE("the robust network stacks shift blocks and rejects shape mismatch") {
  Dataset d1 = random_dataset(61, 3, 2);
  Dataset d2 = random_dataset(62, 3, 2);
  std::vector<Dataset> data = {d1, d2};

  OpNetwork net = make_robust_network(data, 0.1, 0.5, 1.0, 4.0);
  REQUIRE(net.size() == 2);
  CHECK(net.dim() == 2 + 3 * 2);  // w block plus one shift block per sample
  CHECK(net.master().op.lipschitz() == 4.0);

  Vec u = zeros(net.dim());
  Vec field = broadcast_gather(net, u);
  CHECK(field.size() == net.dim());
  CHECK(net.comm_rounds == 1);

  // master field at zero matches the standalone saddle operator
  RobustRegressionSaddle master{d1, 0.1, 0.5, 1.0};
  Vec direct = robust_operator(master, 4.0, 0.0).apply(u);
  Vec via_net = net.master().op.apply(u);
  for (std::size_t j = 0; j < u.size(); ++j) CHECK(via_net[j] == direct[j]);

  std::vector<Dataset> bad = {d1, random_dataset(63, 4, 2)};
  CHECK_THROWS_AS(make_robust_network(bad, 0.1, 0.5, 1.0, 4.0),
                  std::invalid_argument);
}

}  // TEST_SUITE
