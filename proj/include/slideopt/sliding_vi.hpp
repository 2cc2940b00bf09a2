#ifndef SLIDEOPT_SLIDING_VI_HPP
#define SLIDEOPT_SLIDING_VI_HPP

#include <vector>

#include "slideopt/inner.hpp"
#include "slideopt/oracles.hpp"
#include "slideopt/trace.hpp"

// Outer loops for composite variational inequalities R = P + Q: each
// iteration anchors a strongly monotone proximal field at the current point,
// solves it approximately (all Q work slides in there), then takes a
// corrector step along R.  P is evaluated exactly twice per iteration.

namespace slideopt {

struct VIConfig {
  double theta = 0.0;
  double eta = 0.0;
  double alpha = 0.0;
  long iterations = 0;
};

// theta = 1/(2 lp), eta = min(1/(4 mu), 1/(4 lp)), alpha = 2 mu.
VIConfig tune_vi(double mu, double lp);

// Multiplier in ||x^{k+1} - x*||^2 <= (1 - 2 eta mu) ||x^k - x*||^2.
double vi_contraction_factor(double mu, double eta);

// Smallest K with K >= 2 max(1, lp/mu) log(dist0_sq/eps); returns 1 when
// eps >= dist0_sq.
long vi_iteration_bound(double mu, double lp, double dist0_sq, double eps);

// Strongly monotone case (mu > 0): reports the corrector iterate x^K.  Rows
// record dist_sq = ||x^{k+1} - x*||^2 when x_star is given.  A constraint set
// attached to the problem makes inner steps and outer iterates projected.
RunTrace run_vi_strongly_monotone(CompositeVIProblem& prob, Vec x0,
                                  const VIConfig& cfg,
                                  const InnerStoppingRule& rule,
                                  const Vec* x_star = nullptr);

// Merely monotone case: theta = 1/(2 lp), eta = 1/(4 lp), corrector
// x^{k+1} = x^k - eta R(u^k); reports the average of the u^k, for which
// <R(x), answer - x> <= ||x0 - x||^2 / (2 eta K) <= 2 lp ||x0 - x||^2 / K
// holds for every reference point x.
RunTrace run_vi_monotone(CompositeVIProblem& prob, Vec x0, long iterations,
                         const InnerStoppingRule& rule);

// Reference points for the restricted merit value of a candidate answer.
struct GapSpec {
  std::vector<Vec> candidates;
};

// Regular grid over the box [lo, hi], dims 1 or 2 only.
GapSpec grid_gap_spec(const Vec& lo, const Vec& hi, long per_axis);

// max over candidates x of <R(x), answer - x>; nonnegative candidates-side
// certificate that vanishes at a solution of the monotone VI.
double restricted_gap(const OperatorField& r, const Vec& answer,
                      const GapSpec& spec);

}  // namespace slideopt

#endif  // SLIDEOPT_SLIDING_VI_HPP
