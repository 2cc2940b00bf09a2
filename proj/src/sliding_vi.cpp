#include "slideopt/sliding_vi.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace slideopt {

VIConfig tune_vi(double mu, double lp) {
  if (!(mu > 0.0)) throw std::invalid_argument("tune_vi: mu must be positive");
  if (!(lp > 0.0)) throw std::invalid_argument("tune_vi: lp must be positive");
  VIConfig cfg;
  cfg.theta = 1.0 / (2.0 * lp);
  cfg.eta = std::min(1.0 / (4.0 * mu), 1.0 / (4.0 * lp));
  cfg.alpha = 2.0 * mu;
  return cfg;
}

double vi_contraction_factor(double mu, double eta) {
  return 1.0 - 2.0 * eta * mu;
}

long vi_iteration_bound(double mu, double lp, double dist0_sq, double eps) {
  if (!(mu > 0.0) || !(lp > 0.0))
    throw std::invalid_argument("vi_iteration_bound: mu and lp must be positive");
  if (!(dist0_sq > 0.0))
    throw std::invalid_argument("vi_iteration_bound: dist0_sq must be positive");
  if (!(eps > 0.0)) throw std::invalid_argument("vi_iteration_bound: eps must be positive");
  if (eps >= dist0_sq) return 1;
  const double k = 2.0 * std::max(1.0, lp / mu) * std::log(dist0_sq / eps);
  return std::max<long>(1, static_cast<long>(std::ceil(k)));
}

namespace {

void record_counters(TraceRecord& row, const CallCounters& c) {
  row.comm_rounds = c.comm_rounds;
  row.grad_p = c.grad_p_calls;
  row.grad_q = c.grad_q_calls;
  row.p_calls = c.p_calls;
  row.q_calls = c.q_calls;
}

}  // namespace

RunTrace run_vi_strongly_monotone(CompositeVIProblem& prob, Vec x0,
                                  const VIConfig& cfg,
                                  const InnerStoppingRule& rule,
                                  const Vec* x_star) {
  if (x0.size() != prob.dim())
    throw std::invalid_argument("run_vi_strongly_monotone: x0 dim mismatch");
  if (cfg.iterations < 0)
    throw std::invalid_argument("run_vi_strongly_monotone: iterations must be >= 0");
  if (!(prob.mu() > 0.0))
    throw std::invalid_argument(
        "run_vi_strongly_monotone: problem must be strongly monotone");
  if (!(cfg.theta > 0.0) || !(cfg.eta > 0.0) || !(cfg.alpha >= 0.0))
    throw std::invalid_argument("run_vi_strongly_monotone: invalid config");

  const ProjectableSet* constraint =
      prob.constraint() ? &*prob.constraint() : nullptr;
  RunTrace trace;
  trace.records.reserve(static_cast<std::size_t>(cfg.iterations));

  Vec x = std::move(x0);
  if (constraint) x = constraint->project(x);
  for (long k = 0; k < cfg.iterations; ++k) {
    Vec pc = prob.apply_p(x);
    VISubproblem field{&prob, x, cfg.theta, std::move(pc)};
    InnerResult inner = solve_vi_subproblem(field, rule, constraint);
    Vec ru = prob.apply_r(inner.x);
    // x = x + eta alpha (u - x) - eta R(u)
    axpby(cfg.eta * cfg.alpha, inner.x, 1.0 - cfg.eta * cfg.alpha, x);
    axpy(-cfg.eta, ru, x);
    if (constraint) x = constraint->project(x);

    TraceRecord row;
    row.k = k;
    row.inner_iters = inner.iterations;
    record_counters(row, prob.counters());
    if (x_star) row.dist_sq = dist_sq(x, *x_star);
    trace.records.push_back(std::move(row));
  }
  trace.solution = std::move(x);
  return trace;
}

RunTrace run_vi_monotone(CompositeVIProblem& prob, Vec x0, long iterations,
                         const InnerStoppingRule& rule) {
  if (x0.size() != prob.dim())
    throw std::invalid_argument("run_vi_monotone: x0 dim mismatch");
  if (iterations <= 0)
    throw std::invalid_argument("run_vi_monotone: iterations must be positive");

  const double theta = 1.0 / (2.0 * prob.lp());
  const double eta = 1.0 / (4.0 * prob.lp());
  const ProjectableSet* constraint =
      prob.constraint() ? &*prob.constraint() : nullptr;
  RunTrace trace;
  trace.records.reserve(static_cast<std::size_t>(iterations));

  Vec x = std::move(x0);
  if (constraint) x = constraint->project(x);
  Vec avg = zeros(prob.dim());
  for (long k = 0; k < iterations; ++k) {
    Vec pc = prob.apply_p(x);
    VISubproblem field{&prob, x, theta, std::move(pc)};
    InnerResult inner = solve_vi_subproblem(field, rule, constraint);
    Vec ru = prob.apply_r(inner.x);
    axpy(-eta, ru, x);
    if (constraint) x = constraint->project(x);
    axpy(1.0, inner.x, avg);

    TraceRecord row;
    row.k = k;
    row.inner_iters = inner.iterations;
    record_counters(row, prob.counters());
    trace.records.push_back(std::move(row));
  }
  scal(1.0 / static_cast<double>(iterations), avg);
  trace.solution = std::move(avg);
  return trace;
}

GapSpec grid_gap_spec(const Vec& lo, const Vec& hi, long per_axis) {
  if (lo.size() != hi.size() || lo.empty() || lo.size() > 2)
    throw std::invalid_argument("grid_gap_spec: dims 1 or 2 only");
  if (per_axis < 2) throw std::invalid_argument("grid_gap_spec: need >= 2 points per axis");
  for (std::size_t i = 0; i < lo.size(); ++i)
    if (!(lo[i] <= hi[i])) throw std::invalid_argument("grid_gap_spec: lo > hi");

  GapSpec spec;
  const double denom = static_cast<double>(per_axis - 1);
  if (lo.size() == 1) {
    for (long i = 0; i < per_axis; ++i) {
      const double t = static_cast<double>(i) / denom;
      spec.candidates.push_back({lo[0] + t * (hi[0] - lo[0])});
    }
  } else {
    for (long i = 0; i < per_axis; ++i) {
      const double ti = static_cast<double>(i) / denom;
      for (long j = 0; j < per_axis; ++j) {
        const double tj = static_cast<double>(j) / denom;
        spec.candidates.push_back(
            {lo[0] + ti * (hi[0] - lo[0]), lo[1] + tj * (hi[1] - lo[1])});
      }
    }
  }
  return spec;
}

double restricted_gap(const OperatorField& r, const Vec& answer,
                      const GapSpec& spec) {
  if (spec.candidates.empty())
    throw std::invalid_argument("restricted_gap: no candidate points");
  double gap = -std::numeric_limits<double>::infinity();
  for (const Vec& cand : spec.candidates) {
    if (cand.size() != answer.size())
      throw std::invalid_argument("restricted_gap: candidate dim mismatch");
    gap = std::max(gap, dot(r.apply(cand), sub(answer, cand)));
  }
  return gap;
}

}  // namespace slideopt
