#ifndef SLIDEOPT_SLIDING_MIN_HPP
#define SLIDEOPT_SLIDING_MIN_HPP

#include "slideopt/inner.hpp"
#include "slideopt/oracles.hpp"
#include "slideopt/trace.hpp"

// Outer loops for minimizing r = p + q when only p's smoothness should drive
// the iteration count.  Each iteration takes one extrapolation, one inexact
// proximal-model solve (all the q work slides in there), and one corrector
// step along the full gradient; p is evaluated exactly twice per iteration.

namespace slideopt {

struct SlidingConfig {
  double tau = 0.0;    // extrapolation weight
  double theta = 0.0;  // proximal-model radius
  double eta = 0.0;    // corrector step
  double alpha = 0.0;  // corrector pull toward x_f
  long iterations = 0;
};

// tau = min(1, sqrt(mu)/(2 sqrt(lp))), theta = 1/(2 lp),
// eta = min(1/(2 mu), 1/(2 sqrt(mu lp))), alpha = mu.
SlidingConfig tune_strongly_convex(double mu, double lp);

// Schedule for the merely convex variant at 1-based step k:
// tau = 2/(k+1), theta = 1/(2 lp), eta = 1/(2 tau lp).
struct ConvexStep {
  double tau = 0.0;
  double eta = 0.0;
  double theta = 0.0;
};
ConvexStep tune_convex(double lp, long k);

// Per-iteration decrease rate of the strongly convex loop:
// rho = 0.5 * min(1, sqrt(mu/lp)).
double contraction_factor(double mu, double lp);

// Smallest K with K >= 2 max(1, sqrt(lp/mu)) log(c0/eps); after K iterations
// ||x^K - x*||^2 <= eps.  Returns 1 when eps >= c0.
long iteration_bound(double mu, double lp, double c0, double eps);

// c0 = ||x0 - x*||^2 + (2 eta / tau) (r(x0) - r(x*)): the quantity the
// iteration bound contracts.
double initial_potential(const CompositeMinProblem& prob, const Vec& x0,
                         const SlidingConfig& cfg, const Vec& x_star);

// Strongly convex loop (mu > 0).  Reports the corrector iterate x^K as its
// solution.  With x_star given, each row records dist_sq = ||x^{k+1} - x*||^2,
// r_gap = r(x_f^{k+1}) - r*, and the contracted potential
// lyapunov = dist_sq / eta + (2 / tau) r_gap.
RunTrace run_strongly_convex(CompositeMinProblem& prob, Vec x0,
                             const SlidingConfig& cfg,
                             const InnerStoppingRule& rule,
                             const Vec* x_star = nullptr);

// Convex loop (mu may be 0) with the tune_convex schedules; reports the final
// x_f.  Row k records lyapunov = ||x^{k+1} - x*||^2 +
// (1/(tau_{k+1}^2 lp)) (r(x_f^{k+1}) - r*), which is nonincreasing, and the
// r_gap obeys r_gap <= 4 lp ||x0 - x*||^2 / (k+2)^2.
RunTrace run_convex(CompositeMinProblem& prob, Vec x0, long iterations,
                    const InnerStoppingRule& rule, const Vec* x_star = nullptr);

}  // namespace slideopt

#endif  // SLIDEOPT_SLIDING_MIN_HPP
