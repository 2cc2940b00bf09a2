#ifndef SLIDEOPT_DISTRIBUTED_HPP
#define SLIDEOPT_DISTRIBUTED_HPP

#include <vector>

#include "slideopt/inner.hpp"
#include "slideopt/oracles.hpp"
#include "slideopt/sliding_min.hpp"
#include "slideopt/sliding_vi.hpp"
#include "slideopt/trace.hpp"

// Master-worker simulation with exact communication accounting.  A round is
// one broadcast of a point plus a gather of every worker's gradient (or
// operator value); the master averages in worker-id order so repeated runs
// are bit-identical.  The similarity split makes the average-minus-master
// part the communication-backed oracle:
//   q = f_1 (master-local),  p = (1/n) sum_i f_i - f_1,
// so one outer sliding iteration costs exactly two rounds, and all local
// q work happens on the master between rounds.

namespace slideopt {

struct Worker {
  int id = 0;  // dense 1-based ids; worker 1 is the master
  SmoothFunction fn;
  long local_grad_calls = 0;
};

struct Network {
  std::vector<Worker> workers;
  long comm_rounds = 0;

  std::size_t dim() const;
  Worker& master();
  std::size_t size() const { return workers.size(); }
};

// One synchronous round: every worker evaluates its gradient at x
// (local_grad_calls += 1 each), master averages in id order, comm_rounds += 1.
// master_grad, when non-null, receives worker 1's gradient so callers can
// reuse it without a second local evaluation.
Vec broadcast_gather(Network& net, const Vec& x, Vec* master_grad = nullptr);

// Declared constants for a similarity split: delta bounds the Hessian
// (or Jacobian) distance between the average and the master, big_l the
// per-worker smoothness, mu the strong convexity/monotonicity.
struct SplitConstants {
  double delta = 0.0;
  double big_l = 0.0;
  double mu = 0.0;
};

// Composite problem whose p-gradient runs one round and whose q-gradient is
// master-local.  The master's gradient from the most recent round is reused
// when q is queried at the same point, so one sliding iteration costs the
// master (inner q-calls + 1) local evaluations and every other worker 2.
CompositeMinProblem build_similarity_split(Network& net, double delta,
                                           double big_l, double mu);

// VI analogue on per-worker operator oracles (e.g. stacked saddle fields).
struct OpWorker {
  int id = 0;
  OperatorField op;
  long local_calls = 0;
};

struct OpNetwork {
  std::vector<OpWorker> workers;
  long comm_rounds = 0;

  std::size_t dim() const;
  OpWorker& master();
  std::size_t size() const { return workers.size(); }
};

Vec broadcast_gather(OpNetwork& net, const Vec& x, Vec* master_field = nullptr);

CompositeVIProblem build_vi_similarity_split(OpNetwork& net, double delta,
                                             double big_l, double mu);

enum class MinMode { strongly_convex, convex };
enum class ViMode { strongly_monotone, monotone };

// Builds the split and runs the matching outer loop on it; trace rows carry
// the split's counters, whose comm_rounds mirror net.comm_rounds.  Convex
// mode ignores cfg except for cfg.iterations.
RunTrace run_distributed_sliding(Network& net, MinMode mode,
                                 const SplitConstants& constants,
                                 const SlidingConfig& cfg,
                                 const InnerStoppingRule& rule, Vec x0,
                                 const Vec* x_star = nullptr);

RunTrace run_distributed_vi(OpNetwork& net, ViMode mode,
                            const SplitConstants& constants,
                            const VIConfig& cfg, const InnerStoppingRule& rule,
                            Vec x0, const Vec* x_star = nullptr,
                            const ProjectableSet* constraint = nullptr);

}  // namespace slideopt

#endif  // SLIDEOPT_DISTRIBUTED_HPP
