#include "slideopt/baselines.hpp"

#include <cmath>
#include <stdexcept>

namespace slideopt {

namespace {

void validate_acgd(std::size_t dim, const Vec& x0, double mu, double big_l,
                   const StopSpec& stop) {
  if (x0.size() != dim) throw std::invalid_argument("run_acgd: x0 dim mismatch");
  if (!(mu > 0.0)) throw std::invalid_argument("run_acgd: mu must be positive");
  if (!(big_l >= mu)) throw std::invalid_argument("run_acgd: need L >= mu");
  if (stop.max_iters <= 0)
    throw std::invalid_argument("run_acgd: max_iters must be positive");
}

struct AcgdState {
  double beta;
  double step;
  Vec x_prev;
  Vec y;

  AcgdState(Vec x0, double mu, double big_l)
      : beta((std::sqrt(big_l) - std::sqrt(mu)) /
             (std::sqrt(big_l) + std::sqrt(mu))),
        step(1.0 / big_l),
        x_prev(x0),
        y(std::move(x0)) {}

  // one descent step from gradient g at y; returns the new main iterate
  const Vec& advance(const Vec& g) {
    Vec x = y;
    axpy(-step, g, x);
    axpby(1.0 + beta, x, -beta, x_prev);  // x_prev becomes the next y
    y = std::move(x_prev);
    x_prev = std::move(x);
    return x_prev;
  }
};

}  // namespace

double network_value(const Network& net, const Vec& x) {
  double acc = 0.0;
  for (const Worker& w : net.workers) acc += w.fn.value(x);
  return acc / static_cast<double>(net.workers.size());
}

RunTrace run_acgd(CompositeMinProblem& prob, Vec x0, double mu, double big_l,
                  const StopSpec& stop, const Vec* x_star) {
  validate_acgd(prob.dim(), x0, mu, big_l, stop);
  const double r_star = x_star ? prob.value_r(*x_star) : 0.0;
  RunTrace trace;
  AcgdState st(std::move(x0), mu, big_l);
  for (long t = 0; t < stop.max_iters; ++t) {
    Vec g = prob.grad_r(st.y);
    const Vec& x = st.advance(g);

    TraceRecord row;
    row.k = t;
    const CallCounters& c = prob.counters();
    row.comm_rounds = c.comm_rounds;
    row.grad_p = c.grad_p_calls;
    row.grad_q = c.grad_q_calls;
    if (x_star) {
      row.dist_sq = dist_sq(x, *x_star);
      row.r_gap = prob.value_r(x) - r_star;
    }
    const bool done = x_star && stop.eps_dist_sq > 0.0 &&
                      *row.dist_sq <= stop.eps_dist_sq;
    trace.records.push_back(std::move(row));
    if (done) break;
  }
  trace.solution = st.x_prev;
  return trace;
}

RunTrace run_acgd(Network& net, Vec x0, double mu, double big_l,
                  const StopSpec& stop, const Vec* x_star) {
  validate_acgd(net.dim(), x0, mu, big_l, stop);
  const double r_star = x_star ? network_value(net, *x_star) : 0.0;
  RunTrace trace;
  AcgdState st(std::move(x0), mu, big_l);
  for (long t = 0; t < stop.max_iters; ++t) {
    Vec g = broadcast_gather(net, st.y);
    const Vec& x = st.advance(g);

    TraceRecord row;
    row.k = t;
    row.comm_rounds = net.comm_rounds;
    if (x_star) {
      row.dist_sq = dist_sq(x, *x_star);
      row.r_gap = network_value(net, x) - r_star;
    }
    const bool done = x_star && stop.eps_dist_sq > 0.0 &&
                      *row.dist_sq <= stop.eps_dist_sq;
    trace.records.push_back(std::move(row));
    if (done) break;
  }
  trace.solution = st.x_prev;
  return trace;
}

RunTrace run_dane(Network& net, Vec x0, const DaneConfig& cfg,
                  const Vec* x_star) {
  if (x0.size() != net.dim()) throw std::invalid_argument("run_dane: x0 dim mismatch");
  if (cfg.max_rounds <= 0)
    throw std::invalid_argument("run_dane: max_rounds must be positive");
  if (!(cfg.mu_tilde >= 0.0))
    throw std::invalid_argument("run_dane: mu_tilde must be >= 0");
  if (!(cfg.inner_grad_tol > 0.0))
    throw std::invalid_argument("run_dane: inner_grad_tol must be positive");

  const double r_star = x_star ? network_value(net, *x_star) : 0.0;
  const std::size_t dim = net.dim();
  const double inv_n = 1.0 / static_cast<double>(net.workers.size());
  RunTrace trace;
  Vec w = std::move(x0);
  for (long round = 0; round < cfg.max_rounds; ++round) {
    // gather round: each worker's gradient at w; workers keep their own
    std::vector<Vec> local_grads;
    local_grads.reserve(net.workers.size());
    Vec grad_global = zeros(dim);
    for (Worker& wk : net.workers) {
      Vec g = wk.fn.gradient(w);
      ++wk.local_grad_calls;
      axpy(1.0, g, grad_global);
      local_grads.push_back(std::move(g));
    }
    scal(inv_n, grad_global);
    ++net.comm_rounds;

    // local solves between the rounds
    long inner_total = 0;
    Vec next = zeros(dim);
    for (std::size_t i = 0; i < net.workers.size(); ++i) {
      Worker& wk = net.workers[i];
      // shift = grad f_i(w) - grad r(w)
      Vec shift = local_grads[i];
      axpy(-1.0, grad_global, shift);
      const double mu_local = wk.fn.strong_convexity() + cfg.mu_tilde;
      const double l_local = wk.fn.smoothness() + cfg.mu_tilde;
      if (!(mu_local > 0.0))
        throw std::invalid_argument(
            "run_dane: local problem is not strongly convex; raise mu_tilde");
      auto grad_local = [&wk, &shift, &w, &cfg](const Vec& x) {
        Vec g = wk.fn.gradient(x);
        ++wk.local_grad_calls;
        axpy(-1.0, shift, g);
        if (cfg.mu_tilde > 0.0) {
          axpy(cfg.mu_tilde, x, g);
          axpy(-cfg.mu_tilde, w, g);
        }
        return g;
      };
      // seed with the gradient already in hand: grad h_i(w) = grad r(w)
      InnerResult res =
          agd_strongly_convex(grad_local, w, mu_local, l_local,
                              cfg.inner_grad_tol, cfg.inner_cap, &grad_global);
      inner_total += res.iterations;
      axpy(inv_n, res.x, next);
    }
    ++net.comm_rounds;  // averaging round
    w = std::move(next);

    TraceRecord row;
    row.k = round;
    row.comm_rounds = net.comm_rounds;
    row.inner_iters = inner_total;
    if (x_star) {
      row.dist_sq = dist_sq(w, *x_star);
      row.r_gap = network_value(net, w) - r_star;
    }
    const bool done = x_star && cfg.eps_dist_sq > 0.0 &&
                      *row.dist_sq <= cfg.eps_dist_sq;
    trace.records.push_back(std::move(row));
    if (done) break;
  }
  trace.solution = w;
  return trace;
}

RunTrace run_extragradient(OpNetwork& net, Vec x0, double gamma,
                           long iterations, const ProjectableSet* constraint,
                           const Vec* x_star) {
  if (gamma <= 0.0) throw std::invalid_argument("run_extragradient: gamma");
  if (iterations < 1)
    throw std::invalid_argument("run_extragradient: iterations");
  RunTrace trace;
  Vec x = std::move(x0);
  if (constraint) x = constraint->project(x);
  for (long k = 0; k < iterations; ++k) {
    Vec field = broadcast_gather(net, x);
    Vec mid = x;
    axpy(-gamma, field, mid);
    if (constraint) mid = constraint->project(mid);
    Vec field_mid = broadcast_gather(net, mid);
    axpy(-gamma, field_mid, x);
    if (constraint) x = constraint->project(x);

    TraceRecord row;
    row.k = k;
    row.comm_rounds = net.comm_rounds;
    if (x_star) row.dist_sq = dist_sq(x, *x_star);
    trace.records.push_back(std::move(row));
  }
  trace.solution = x;
  return trace;
}

}  // namespace slideopt
