#ifndef SLIDEOPT_INNER_HPP
#define SLIDEOPT_INNER_HPP

#include <stdexcept>
#include <string>

#include "slideopt/oracles.hpp"

// Inexact subproblem solvers for the outer sliding loops.  Each outer
// iteration anchors a strongly convex model (resp. strongly monotone field)
// at a center point and needs its solution only up to the accuracy that the
// outer analysis tolerates.  The surrogate rule certifies that accuracy from
// observable quantities; the fixed-budget rule spends a precomputed number of
// iterations instead.

namespace slideopt {

struct BudgetExhausted : std::runtime_error {
  Vec best;  // iterate with the smallest residual seen before the cap

  BudgetExhausted(const std::string& what, Vec best_point)
      : std::runtime_error(what), best(std::move(best_point)) {}
};

struct InnerStoppingRule {
  enum class Mode { surrogate, fixed_budget };

  Mode mode = Mode::surrogate;
  long budget = 0;               // fixed_budget: exact iteration count
  long max_iterations = 100000;  // surrogate: cap before BudgetExhausted
};

InnerStoppingRule surrogate_rule(long max_iterations = 100000);
InnerStoppingRule fixed_budget_rule(long budget);

// ceil(3^(1/4) * slack * max(1, sqrt(lq/lp))): iteration budget under which
// the fixed-budget mode matches the surrogate guarantee up to the universal
// constant `slack`.
long inner_budget(double lp, double lq, double slack = 2.0);

// Model minimized at each outer step of the composite-minimization loop:
//   A(x) = <grad_p_center, x - center> + ||x - center||^2 / (2 theta) + q(x)
// (+ p(center), constant).  grad_p_center is computed, and counted, by the
// caller; evaluating the model gradient costs exactly one grad_q call.
struct ProxSubproblem {
  CompositeMinProblem* base = nullptr;
  Vec center;
  double theta = 0.0;
  Vec grad_p_center;

  Vec gradient(const Vec& x);
  double value(const Vec& x) const;
  double strong_convexity() const { return 1.0 / theta; }
  double smoothness() const { return 1.0 / theta + base->lq(); }
};

// Field solved (approximately) at each outer step of the VI loop:
//   B(x) = p_center + Q(x) + (x - center) / theta.
// p_center = P(center) is computed, and counted, by the caller; evaluating
// the field costs exactly one Q call.
struct VISubproblem {
  CompositeVIProblem* base = nullptr;
  Vec center;
  double theta = 0.0;
  Vec p_center;

  Vec apply(const Vec& x);
  double strong_monotonicity() const { return 1.0 / theta; }
  double lipschitz() const { return 1.0 / theta + base->lq(); }
};

struct InnerResult {
  Vec x;
  long iterations = 0;
};

// Constant-momentum accelerated gradient descent for a mu-strongly convex,
// L-smooth function.  Returns the first point whose gradient norm is at most
// grad_target; one gradient evaluation per iteration.  g0, when given, is a
// precomputed gradient at x0 and saves the first evaluation.
InnerResult agd_strongly_convex(const std::function<Vec(const Vec&)>& grad,
                                Vec x0, double mu, double L, double grad_target,
                                long max_iterations, const Vec* g0 = nullptr);

// Warm-started at the center.  Surrogate mode returns a point x_f with
//   ||grad A(x_f)|| <= (lp / sqrt(3)) * ||grad A(center)|| / L_A,
// L_A = 1/theta + lq, which implies the outer loop's accuracy requirement
//   ||grad A(x_f)||^2 <= (lp^2 / 3) * ||center - argmin A||^2
// because ||center - argmin A|| >= ||grad A(center)|| / L_A.  Fixed-budget
// mode runs exactly rule.budget AGD iterations (= grad_q calls).
InnerResult solve_prox_subproblem(ProxSubproblem& sub,
                                  const InnerStoppingRule& rule);

// Same contract for the VI field via extragradient with step 1/(2 L_B),
// L_B = 1/theta + lq.  The residual is ||B(u)|| unconstrained and the scaled
// projected-step residual L_B * ||u - proj(u - B(u)/L_B)|| when a constraint
// set is given; surrogate mode accepts once the residual falls below
// (lp / sqrt(3)) / L_B times the residual at the center.  Fixed-budget mode
// runs exactly rule.budget extragradient iterations (= 2*budget Q calls).
InnerResult solve_vi_subproblem(VISubproblem& sub, const InnerStoppingRule& rule,
                                const ProjectableSet* constraint = nullptr);

}  // namespace slideopt

#endif  // SLIDEOPT_INNER_HPP
