#include "slideopt/sliding_min.hpp"

#include <cmath>
#include <stdexcept>

namespace slideopt {

SlidingConfig tune_strongly_convex(double mu, double lp) {
  if (!(mu > 0.0)) throw std::invalid_argument("tune_strongly_convex: mu must be positive");
  if (!(lp > 0.0)) throw std::invalid_argument("tune_strongly_convex: lp must be positive");
  SlidingConfig cfg;
  cfg.tau = std::min(1.0, std::sqrt(mu) / (2.0 * std::sqrt(lp)));
  cfg.theta = 1.0 / (2.0 * lp);
  cfg.eta = std::min(1.0 / (2.0 * mu), 1.0 / (2.0 * std::sqrt(mu * lp)));
  cfg.alpha = mu;
  return cfg;
}

ConvexStep tune_convex(double lp, long k) {
  if (!(lp > 0.0)) throw std::invalid_argument("tune_convex: lp must be positive");
  if (k < 1) throw std::invalid_argument("tune_convex: step index is 1-based");
  ConvexStep s;
  s.tau = 2.0 / static_cast<double>(k + 1);
  s.theta = 1.0 / (2.0 * lp);
  s.eta = 1.0 / (2.0 * s.tau * lp);
  return s;
}

double contraction_factor(double mu, double lp) {
  if (!(mu > 0.0) || !(lp > 0.0))
    throw std::invalid_argument("contraction_factor: mu and lp must be positive");
  return 0.5 * std::min(1.0, std::sqrt(mu / lp));
}

long iteration_bound(double mu, double lp, double c0, double eps) {
  if (!(mu > 0.0) || !(lp > 0.0))
    throw std::invalid_argument("iteration_bound: mu and lp must be positive");
  if (!(c0 > 0.0)) throw std::invalid_argument("iteration_bound: c0 must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("iteration_bound: eps must be positive");
  if (eps >= c0) return 1;
  const double k = 2.0 * std::max(1.0, std::sqrt(lp / mu)) * std::log(c0 / eps);
  return std::max<long>(1, static_cast<long>(std::ceil(k)));
}

double initial_potential(const CompositeMinProblem& prob, const Vec& x0,
                         const SlidingConfig& cfg, const Vec& x_star) {
  return dist_sq(x0, x_star) +
         (2.0 * cfg.eta / cfg.tau) * (prob.value_r(x0) - prob.value_r(x_star));
}

namespace {

void validate_run(const CompositeMinProblem& prob, const Vec& x0, long iterations) {
  if (x0.size() != prob.dim())
    throw std::invalid_argument("sliding run: x0 dim mismatch");
  if (iterations < 0)
    throw std::invalid_argument("sliding run: iterations must be >= 0");
}

}  // namespace

RunTrace run_strongly_convex(CompositeMinProblem& prob, Vec x0,
                             const SlidingConfig& cfg,
                             const InnerStoppingRule& rule, const Vec* x_star) {
  validate_run(prob, x0, cfg.iterations);
  if (!(prob.mu() > 0.0))
    throw std::invalid_argument("run_strongly_convex: problem must be strongly convex");
  if (!(cfg.tau > 0.0) || cfg.tau > 1.0 || !(cfg.theta > 0.0) ||
      !(cfg.eta > 0.0) || !(cfg.alpha >= 0.0))
    throw std::invalid_argument("run_strongly_convex: invalid config");

  const double r_star = x_star ? prob.value_r(*x_star) : 0.0;
  RunTrace trace;
  trace.records.reserve(static_cast<std::size_t>(cfg.iterations));

  Vec x = std::move(x0);
  Vec x_f = x;
  for (long k = 0; k < cfg.iterations; ++k) {
    Vec x_g = lincomb(cfg.tau, x, 1.0 - cfg.tau, x_f);
    Vec gp = prob.grad_p(x_g);
    ProxSubproblem model{&prob, std::move(x_g), cfg.theta, std::move(gp)};
    InnerResult inner = solve_prox_subproblem(model, rule);
    x_f = std::move(inner.x);
    Vec gr = prob.grad_r(x_f);
    // x = x + eta alpha (x_f - x) - eta grad r(x_f)
    axpby(cfg.eta * cfg.alpha, x_f, 1.0 - cfg.eta * cfg.alpha, x);
    axpy(-cfg.eta, gr, x);

    TraceRecord row;
    row.k = k;
    row.inner_iters = inner.iterations;
    const CallCounters& c = prob.counters();
    row.comm_rounds = c.comm_rounds;
    row.grad_p = c.grad_p_calls;
    row.grad_q = c.grad_q_calls;
    row.p_calls = c.p_calls;
    row.q_calls = c.q_calls;
    if (x_star) {
      row.dist_sq = dist_sq(x, *x_star);
      row.r_gap = prob.value_r(x_f) - r_star;
      row.lyapunov = *row.dist_sq / cfg.eta + (2.0 / cfg.tau) * *row.r_gap;
    }
    trace.records.push_back(std::move(row));
  }
  trace.solution = std::move(x);
  return trace;
}

RunTrace run_convex(CompositeMinProblem& prob, Vec x0, long iterations,
                    const InnerStoppingRule& rule, const Vec* x_star) {
  validate_run(prob, x0, iterations);

  const double r_star = x_star ? prob.value_r(*x_star) : 0.0;
  RunTrace trace;
  trace.records.reserve(static_cast<std::size_t>(iterations));

  Vec x = std::move(x0);
  Vec x_f = x;
  for (long k = 0; k < iterations; ++k) {
    const ConvexStep step = tune_convex(prob.lp(), k + 1);
    Vec x_g = lincomb(step.tau, x, 1.0 - step.tau, x_f);
    Vec gp = prob.grad_p(x_g);
    ProxSubproblem model{&prob, std::move(x_g), step.theta, std::move(gp)};
    InnerResult inner = solve_prox_subproblem(model, rule);
    x_f = std::move(inner.x);
    Vec gr = prob.grad_r(x_f);
    axpy(-step.eta, gr, x);

    TraceRecord row;
    row.k = k;
    row.inner_iters = inner.iterations;
    const CallCounters& c = prob.counters();
    row.comm_rounds = c.comm_rounds;
    row.grad_p = c.grad_p_calls;
    row.grad_q = c.grad_q_calls;
    row.p_calls = c.p_calls;
    row.q_calls = c.q_calls;
    if (x_star) {
      row.dist_sq = dist_sq(x, *x_star);
      row.r_gap = prob.value_r(x_f) - r_star;
      row.lyapunov =
          *row.dist_sq + *row.r_gap / (step.tau * step.tau * prob.lp());
    }
    trace.records.push_back(std::move(row));
  }
  trace.solution = std::move(x_f);
  return trace;
}

}  // namespace slideopt
