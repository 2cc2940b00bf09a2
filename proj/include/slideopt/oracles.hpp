#ifndef SLIDEOPT_ORACLES_HPP
#define SLIDEOPT_ORACLES_HPP

#include <functional>
#include <optional>
#include <utility>

#include "slideopt/vec.hpp"

// First-order oracles and the counted composite problems built from them.
// Solvers only ever see p/q (or P/Q) through the counting wrappers, so oracle
// complexity in a trace is exact bookkeeping, not an estimate.

namespace slideopt {

struct CallCounters {
  long grad_p_calls = 0;
  long grad_q_calls = 0;
  long p_calls = 0;      // operator evaluations, VI case
  long q_calls = 0;
  long comm_rounds = 0;  // bumped only for communication-backed oracles

  void reset() { *this = CallCounters{}; }
};

// Differentiable function with declared smoothness (upper bound L on the
// gradient's Lipschitz constant) and strong convexity mu >= 0.
class SmoothFunction {
 public:
  using ValueFn = std::function<double(const Vec&)>;
  using GradFn = std::function<Vec(const Vec&)>;

  SmoothFunction(std::size_t dim, double smoothness, double strong_convexity,
                 ValueFn value, GradFn gradient);

  std::size_t dim() const { return dim_; }
  double smoothness() const { return smoothness_; }
  double strong_convexity() const { return strong_convexity_; }
  double value(const Vec& x) const;
  Vec gradient(const Vec& x) const;

 private:
  std::size_t dim_;
  double smoothness_;
  double strong_convexity_;
  ValueFn value_;
  GradFn grad_;
};

// Vector field with declared Lipschitz constant and strong monotonicity
// mu >= 0 (mu == 0 means merely monotone).
class OperatorField {
 public:
  using ApplyFn = std::function<Vec(const Vec&)>;

  OperatorField(std::size_t dim, double lipschitz, double strong_monotonicity,
                ApplyFn apply);

  std::size_t dim() const { return dim_; }
  double lipschitz() const { return lipschitz_; }
  double strong_monotonicity() const { return strong_monotonicity_; }
  Vec apply(const Vec& x) const;

 private:
  std::size_t dim_;
  double lipschitz_;
  double strong_monotonicity_;
  ApplyFn apply_;
};

// Convex-concave saddle function f(y, z): convex in y, concave in z.
struct SaddleFunction {
  std::size_t dim_y = 0;
  std::size_t dim_z = 0;
  double lipschitz = 0.0;  // for the stacked field [grad_y; -grad_z]
  double mu_y = 0.0;
  double mu_z = 0.0;
  std::function<double(const Vec&, const Vec&)> value;
  std::function<Vec(const Vec&, const Vec&)> grad_y;
  std::function<Vec(const Vec&, const Vec&)> grad_z;
};

// Monotone field G(u) = [grad_y f; -grad_z f] on stacked u = [y; z]; its
// zeros are the saddle points of f.
OperatorField saddle_to_operator(const SaddleFunction& f);

// Closed convex set given by a projection oracle.
struct ProjectableSet {
  std::function<Vec(const Vec&)> project;
  std::function<bool(const Vec&)> contains;
};

ProjectableSet ball_set(Vec center, double radius);
// First `free_dim` coordinates unconstrained, then `blocks` consecutive
// blocks of size `block_dim`, each projected onto a centered ball.
ProjectableSet block_ball_set(std::size_t free_dim, std::size_t blocks,
                              std::size_t block_dim, double radius);

// Composite objective r = p + q with per-oracle call counting.  p is the
// cheap-to-communicate part (small smoothness), q the local part.
class CompositeMinProblem {
 public:
  CompositeMinProblem(SmoothFunction p, SmoothFunction q, double mu);

  std::size_t dim() const { return p_.dim(); }
  double lp() const { return p_.smoothness(); }
  double lq() const { return q_.smoothness(); }
  double mu() const { return mu_; }

  double value_r(const Vec& x) const;  // uncounted
  double value_p(const Vec& x) const { return p_.value(x); }
  double value_q(const Vec& x) const { return q_.value(x); }
  Vec grad_p(const Vec& x);
  Vec grad_q(const Vec& x);
  Vec grad_r(const Vec& x);  // grad_p(x) + grad_q(x), both counters move

  // For oracles whose p-gradient is realized by a communication round
  // (distributed split): grad_p also advances counters().comm_rounds.
  void mark_p_comm_backed() { comm_backed_p_ = true; }

  CallCounters& counters() { return counters_; }
  const CallCounters& counters() const { return counters_; }

 private:
  SmoothFunction p_;
  SmoothFunction q_;
  double mu_;
  bool comm_backed_p_ = false;
  CallCounters counters_;
};

// Composite variational inequality R = P + Q, optionally constrained.
class CompositeVIProblem {
 public:
  CompositeVIProblem(OperatorField p, OperatorField q, double mu);

  std::size_t dim() const { return p_.dim(); }
  double lp() const { return p_.lipschitz(); }
  double lq() const { return q_.lipschitz(); }
  double mu() const { return mu_; }

  Vec apply_p(const Vec& x);
  Vec apply_q(const Vec& x);
  Vec apply_r(const Vec& x);  // apply_p(x) + apply_q(x)

  void set_constraint(ProjectableSet set) { constraint_ = std::move(set); }
  const std::optional<ProjectableSet>& constraint() const { return constraint_; }

  void mark_p_comm_backed() { comm_backed_p_ = true; }

  CallCounters& counters() { return counters_; }
  const CallCounters& counters() const { return counters_; }

 private:
  OperatorField p_;
  OperatorField q_;
  double mu_;
  std::optional<ProjectableSet> constraint_;
  bool comm_backed_p_ = false;
  CallCounters counters_;
};

// Max over coordinates of |central difference - gradient| / max(1, |grad|).
double check_gradient_fd(const SmoothFunction& f, const Vec& x, double h);

}  // namespace slideopt

#endif  // SLIDEOPT_ORACLES_HPP
