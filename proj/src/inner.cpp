#include "slideopt/inner.hpp"

#include <cmath>
#include <limits>

namespace slideopt {

InnerStoppingRule surrogate_rule(long max_iterations) {
  if (max_iterations <= 0)
    throw std::invalid_argument("surrogate_rule: cap must be positive");
  InnerStoppingRule rule;
  rule.mode = InnerStoppingRule::Mode::surrogate;
  rule.max_iterations = max_iterations;
  return rule;
}

InnerStoppingRule fixed_budget_rule(long budget) {
  if (budget <= 0)
    throw std::invalid_argument("fixed_budget_rule: budget must be positive");
  InnerStoppingRule rule;
  rule.mode = InnerStoppingRule::Mode::fixed_budget;
  rule.budget = budget;
  return rule;
}

long inner_budget(double lp, double lq, double slack) {
  if (!(lp > 0.0)) throw std::invalid_argument("inner_budget: lp must be positive");
  if (!(lq >= 0.0)) throw std::invalid_argument("inner_budget: lq must be >= 0");
  if (!(slack > 0.0)) throw std::invalid_argument("inner_budget: slack must be positive");
  const double fourth_root_3 = std::pow(3.0, 0.25);
  const double t = fourth_root_3 * slack * std::max(1.0, std::sqrt(lq / lp));
  return static_cast<long>(std::ceil(t));
}

namespace {

void validate_prox(const ProxSubproblem& sub) {
  if (sub.base == nullptr) throw std::invalid_argument("ProxSubproblem: base missing");
  if (!(sub.theta > 0.0)) throw std::invalid_argument("ProxSubproblem: theta must be positive");
  if (sub.center.size() != sub.base->dim() ||
      sub.grad_p_center.size() != sub.base->dim())
    throw std::invalid_argument("ProxSubproblem: dim mismatch");
}

void validate_vi(const VISubproblem& sub) {
  if (sub.base == nullptr) throw std::invalid_argument("VISubproblem: base missing");
  if (!(sub.theta > 0.0)) throw std::invalid_argument("VISubproblem: theta must be positive");
  if (sub.center.size() != sub.base->dim() ||
      sub.p_center.size() != sub.base->dim())
    throw std::invalid_argument("VISubproblem: dim mismatch");
}

}  // namespace

Vec ProxSubproblem::gradient(const Vec& x) {
  validate_prox(*this);
  Vec g = base->grad_q(x);
  axpy(1.0, grad_p_center, g);
  axpy(1.0 / theta, x, g);
  axpy(-1.0 / theta, center, g);
  return g;
}

double ProxSubproblem::value(const Vec& x) const {
  validate_prox(*this);
  const Vec d = sub(x, center);
  return base->value_p(center) + dot(grad_p_center, d) +
         nrm2sq(d) / (2.0 * theta) + base->value_q(x);
}

Vec VISubproblem::apply(const Vec& x) {
  validate_vi(*this);
  Vec g = base->apply_q(x);
  axpy(1.0, p_center, g);
  axpy(1.0 / theta, x, g);
  axpy(-1.0 / theta, center, g);
  return g;
}

InnerResult agd_strongly_convex(const std::function<Vec(const Vec&)>& grad,
                                Vec x0, double mu, double L, double grad_target,
                                long max_iterations, const Vec* g0) {
  if (!(mu > 0.0)) throw std::invalid_argument("agd_strongly_convex: mu must be positive");
  if (!(L >= mu)) throw std::invalid_argument("agd_strongly_convex: need L >= mu");
  if (!(grad_target >= 0.0))
    throw std::invalid_argument("agd_strongly_convex: grad_target must be >= 0");
  if (max_iterations <= 0)
    throw std::invalid_argument("agd_strongly_convex: cap must be positive");

  const double sqrt_l = std::sqrt(L);
  const double sqrt_mu = std::sqrt(mu);
  const double beta = (sqrt_l - sqrt_mu) / (sqrt_l + sqrt_mu);
  const double step = 1.0 / L;

  Vec x_prev = x0;
  Vec y = std::move(x0);
  Vec g = g0 ? *g0 : grad(y);
  Vec best = y;
  double best_norm = nrm2(g);
  long steps = 0;
  for (;;) {
    const double gnorm = nrm2(g);
    if (gnorm < best_norm) {
      best_norm = gnorm;
      best = y;
    }
    if (gnorm <= grad_target) return {std::move(y), steps};
    if (steps >= max_iterations)
      throw BudgetExhausted("agd_strongly_convex: iteration cap reached",
                            std::move(best));
    Vec x_next = y;
    axpy(-step, g, x_next);
    // y = x_next + beta * (x_next - x_prev)
    axpby(1.0 + beta, x_next, -beta, x_prev);
    y = std::move(x_prev);
    x_prev = std::move(x_next);
    g = grad(y);
    ++steps;
  }
}

InnerResult solve_prox_subproblem(ProxSubproblem& sub,
                                  const InnerStoppingRule& rule) {
  validate_prox(sub);
  if (rule.mode == InnerStoppingRule::Mode::fixed_budget) {
    if (rule.budget <= 0)
      throw std::invalid_argument("solve_prox_subproblem: budget must be positive");
    const double L = sub.smoothness();
    const double mu = sub.strong_convexity();
    const double beta =
        (std::sqrt(L) - std::sqrt(mu)) / (std::sqrt(L) + std::sqrt(mu));
    Vec x_prev = sub.center;
    Vec y = sub.center;
    for (long t = 0; t < rule.budget; ++t) {
      Vec g = sub.gradient(y);
      Vec x_next = y;
      axpy(-1.0 / L, g, x_next);
      axpby(1.0 + beta, x_next, -beta, x_prev);
      y = std::move(x_prev);
      x_prev = std::move(x_next);
    }
    return {std::move(x_prev), rule.budget};
  }

  Vec g0 = sub.gradient(sub.center);
  const double g0_norm = nrm2(g0);
  // Relative target from the certifiable bound ||x_g - argmin|| >=
  // ||grad A(x_g)|| / L_A, floored at the rounding noise of a gradient
  // evaluation so a nearly-converged outer loop cannot demand sub-epsilon
  // accuracy no finite-precision solve can reach.
  const double noise_floor = 32.0 * std::numeric_limits<double>::epsilon() *
                             sub.smoothness() * (1.0 + nrm2(sub.center));
  const double target =
      std::max((sub.base->lp() / std::sqrt(3.0)) * g0_norm / sub.smoothness(),
               noise_floor);
  if (g0_norm <= target) return {sub.center, 0};
  auto grad = [&sub](const Vec& x) { return sub.gradient(x); };
  return agd_strongly_convex(grad, sub.center, sub.strong_convexity(),
                             sub.smoothness(), target, rule.max_iterations,
                             &g0);
}

namespace {

// Residual that certifies the VI subproblem: plain field norm without a
// constraint, scaled projected-step residual with one.  `field` must be the
// subproblem field evaluated at u.
double vi_residual(const Vec& u, const Vec& field, double lb,
                   const ProjectableSet* constraint) {
  if (constraint == nullptr) return nrm2(field);
  Vec trial = u;
  axpy(-1.0 / lb, field, trial);
  return lb * nrm2(sub(u, constraint->project(trial)));
}

}  // namespace

InnerResult solve_vi_subproblem(VISubproblem& sub, const InnerStoppingRule& rule,
                                const ProjectableSet* constraint) {
  validate_vi(sub);
  const double lb = sub.lipschitz();
  const double gamma = 1.0 / (2.0 * lb);

  if (rule.mode == InnerStoppingRule::Mode::fixed_budget) {
    if (rule.budget <= 0)
      throw std::invalid_argument("solve_vi_subproblem: budget must be positive");
    Vec u = sub.center;
    for (long t = 0; t < rule.budget; ++t) {
      Vec v = u;
      axpy(-gamma, sub.apply(u), v);
      if (constraint) v = constraint->project(v);
      axpy(-gamma, sub.apply(v), u);
      if (constraint) u = constraint->project(u);
    }
    return {std::move(u), rule.budget};
  }

  Vec u = sub.center;
  Vec field = sub.apply(u);
  const double r0 = vi_residual(u, field, lb, constraint);
  // Same noise floor as the prox solver: a residual already at rounding
  // scale certifies the subproblem as solved.
  const double noise_floor = 32.0 * std::numeric_limits<double>::epsilon() *
                             lb * (1.0 + nrm2(u));
  const double target =
      std::max((sub.base->lp() / std::sqrt(3.0)) * r0 / lb, noise_floor);
  if (r0 <= target) return {std::move(u), 0};

  Vec best = u;
  double best_resid = r0;
  long steps = 0;
  for (;;) {
    const double resid = vi_residual(u, field, lb, constraint);
    if (resid < best_resid) {
      best_resid = resid;
      best = u;
    }
    if (resid <= target) return {std::move(u), steps};
    if (steps >= rule.max_iterations)
      throw BudgetExhausted("solve_vi_subproblem: iteration cap reached",
                            std::move(best));
    Vec v = u;
    axpy(-gamma, field, v);
    if (constraint) v = constraint->project(v);
    axpy(-gamma, sub.apply(v), u);
    if (constraint) u = constraint->project(u);
    field = sub.apply(u);
    ++steps;
  }
}

}  // namespace slideopt
