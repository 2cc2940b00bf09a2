#ifndef SLIDEOPT_BASELINES_HPP
#define SLIDEOPT_BASELINES_HPP

#include "slideopt/distributed.hpp"
#include "slideopt/oracles.hpp"
#include "slideopt/trace.hpp"

// Reference methods the sliding loops are compared against: constant-momentum
// accelerated gradient descent (one round per iteration when distributed) and
// DANE-style preconditioned local solves (two rounds per iteration).

namespace slideopt {

struct StopSpec {
  long max_iters = 0;        // required
  double eps_dist_sq = 0.0;  // > 0 stops once dist_sq <= eps (needs x_star)
};

// r(x) = (1/n) sum_i f_i(x), the objective a network minimizes.
double network_value(const Network& net, const Vec& x);

// Momentum (sqrt(L)-sqrt(mu))/(sqrt(L)+sqrt(mu)), step 1/L.
RunTrace run_acgd(CompositeMinProblem& prob, Vec x0, double mu, double big_l,
                  const StopSpec& stop, const Vec* x_star = nullptr);
// Distributed: the gradient is one broadcast_gather, so comm_rounds == one
// per iteration.
RunTrace run_acgd(Network& net, Vec x0, double mu, double big_l,
                  const StopSpec& stop, const Vec* x_star = nullptr);

struct DaneConfig {
  double mu_tilde = 0.0;  // local damping; the similarity estimate by default
  long max_rounds = 0;
  double eps_dist_sq = 0.0;
  double inner_grad_tol = 1e-12;
  long inner_cap = 200000;
};

// Each round: gather the global gradient (one round), every worker solves
//   min_x f_i(x) - <grad f_i(w) - grad r(w), x> + (mu_tilde/2) ||x - w||^2
// to inner_grad_tol, master averages the solutions (second round).  With
// identical workers and mu_tilde = 0 the local problem is the global one and
// a single round converges.
RunTrace run_dane(Network& net, Vec x0, const DaneConfig& cfg,
                  const Vec* x_star = nullptr);

// Plain extragradient on the network's averaged field with step gamma; every
// iteration costs two rounds (extrapolation and update points).
RunTrace run_extragradient(OpNetwork& net, Vec x0, double gamma,
                           long iterations,
                           const ProjectableSet* constraint = nullptr,
                           const Vec* x_star = nullptr);

}  // namespace slideopt

#endif  // SLIDEOPT_BASELINES_HPP
