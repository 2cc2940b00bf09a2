#include "slideopt/distributed.hpp"

#include <memory>
#include <stdexcept>

namespace slideopt {

namespace {

template <typename Net>
void validate_network(const Net& net) {
  if (net.workers.empty())
    throw std::invalid_argument("Network: at least one worker required");
  for (std::size_t i = 0; i < net.workers.size(); ++i) {
    if (net.workers[i].id != static_cast<int>(i) + 1)
      throw std::invalid_argument("Network: worker ids must be dense and 1-based");
  }
}

// master's most recent gathered gradient; lets q reuse it at the same point
struct GatherMemo {
  bool valid = false;
  Vec point;
  Vec master_value;
};

}  // namespace

std::size_t Network::dim() const {
  validate_network(*this);
  return workers.front().fn.dim();
}

Worker& Network::master() {
  validate_network(*this);
  return workers.front();
}

std::size_t OpNetwork::dim() const {
  validate_network(*this);
  return workers.front().op.dim();
}

OpWorker& OpNetwork::master() {
  validate_network(*this);
  return workers.front();
}

Vec broadcast_gather(Network& net, const Vec& x, Vec* master_grad) {
  validate_network(net);
  Vec acc = zeros(x.size());
  for (Worker& w : net.workers) {
    Vec g = w.fn.gradient(x);
    ++w.local_grad_calls;
    axpy(1.0, g, acc);
    if (master_grad != nullptr && w.id == 1) *master_grad = std::move(g);
  }
  scal(1.0 / static_cast<double>(net.workers.size()), acc);
  ++net.comm_rounds;
  return acc;
}

Vec broadcast_gather(OpNetwork& net, const Vec& x, Vec* master_field) {
  validate_network(net);
  Vec acc = zeros(x.size());
  for (OpWorker& w : net.workers) {
    Vec g = w.op.apply(x);
    ++w.local_calls;
    axpy(1.0, g, acc);
    if (master_field != nullptr && w.id == 1) *master_field = std::move(g);
  }
  scal(1.0 / static_cast<double>(net.workers.size()), acc);
  ++net.comm_rounds;
  return acc;
}

CompositeMinProblem build_similarity_split(Network& net, double delta,
                                           double big_l, double mu) {
  validate_network(net);
  if (!(delta > 0.0))
    throw std::invalid_argument("build_similarity_split: delta must be positive");
  if (!(big_l > 0.0))
    throw std::invalid_argument("build_similarity_split: L must be positive");

  const std::size_t dim = net.dim();
  Network* netp = &net;
  auto memo = std::make_shared<GatherMemo>();

  auto p_value = [netp](const Vec& x) {
    double acc = 0.0;
    for (const Worker& w : netp->workers) acc += w.fn.value(x);
    return acc / static_cast<double>(netp->workers.size()) -
           netp->workers.front().fn.value(x);
  };
  auto p_grad = [netp, memo](const Vec& x) {
    Vec master_g;
    Vec avg = broadcast_gather(*netp, x, &master_g);
    memo->point = x;
    memo->master_value = master_g;
    memo->valid = true;
    axpy(-1.0, master_g, avg);
    return avg;
  };
  auto q_value = [netp](const Vec& x) {
    return netp->workers.front().fn.value(x);
  };
  auto q_grad = [netp, memo](const Vec& x) {
    if (memo->valid && memo->point == x) return memo->master_value;
    Worker& m = netp->workers.front();
    ++m.local_grad_calls;
    return m.fn.gradient(x);
  };

  SmoothFunction p(dim, delta, 0.0, std::move(p_value), std::move(p_grad));
  SmoothFunction q(dim, big_l, mu, std::move(q_value), std::move(q_grad));
  CompositeMinProblem split(std::move(p), std::move(q), mu);
  split.mark_p_comm_backed();
  return split;
}

CompositeVIProblem build_vi_similarity_split(OpNetwork& net, double delta,
                                             double big_l, double mu) {
  validate_network(net);
  if (!(delta > 0.0))
    throw std::invalid_argument("build_vi_similarity_split: delta must be positive");
  if (!(big_l > 0.0))
    throw std::invalid_argument("build_vi_similarity_split: L must be positive");

  const std::size_t dim = net.dim();
  OpNetwork* netp = &net;
  auto memo = std::make_shared<GatherMemo>();

  auto p_apply = [netp, memo](const Vec& x) {
    Vec master_g;
    Vec avg = broadcast_gather(*netp, x, &master_g);
    memo->point = x;
    memo->master_value = master_g;
    memo->valid = true;
    axpy(-1.0, master_g, avg);
    return avg;
  };
  auto q_apply = [netp, memo](const Vec& x) {
    if (memo->valid && memo->point == x) return memo->master_value;
    OpWorker& m = netp->workers.front();
    ++m.local_calls;
    return m.op.apply(x);
  };

  OperatorField p(dim, delta, 0.0, std::move(p_apply));
  OperatorField q(dim, big_l, 0.0, std::move(q_apply));
  CompositeVIProblem split(std::move(p), std::move(q), mu);
  split.mark_p_comm_backed();
  return split;
}

RunTrace run_distributed_sliding(Network& net, MinMode mode,
                                 const SplitConstants& constants,
                                 const SlidingConfig& cfg,
                                 const InnerStoppingRule& rule, Vec x0,
                                 const Vec* x_star) {
  CompositeMinProblem split = build_similarity_split(
      net, constants.delta, constants.big_l, constants.mu);
  if (mode == MinMode::strongly_convex)
    return run_strongly_convex(split, std::move(x0), cfg, rule, x_star);
  return run_convex(split, std::move(x0), cfg.iterations, rule, x_star);
}

RunTrace run_distributed_vi(OpNetwork& net, ViMode mode,
                            const SplitConstants& constants,
                            const VIConfig& cfg, const InnerStoppingRule& rule,
                            Vec x0, const Vec* x_star,
                            const ProjectableSet* constraint) {
  CompositeVIProblem split = build_vi_similarity_split(
      net, constants.delta, constants.big_l, constants.mu);
  if (constraint != nullptr) split.set_constraint(*constraint);
  if (mode == ViMode::strongly_monotone)
    return run_vi_strongly_monotone(split, std::move(x0), cfg, rule, x_star);
  return run_vi_monotone(split, std::move(x0), cfg.iterations, rule);
}

}  // namespace slideopt
