#include "slideopt/oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace slideopt {

SmoothFunction::SmoothFunction(std::size_t dim, double smoothness,
                               double strong_convexity, ValueFn value,
                               GradFn gradient)
    : dim_(dim),
      smoothness_(smoothness),
      strong_convexity_(strong_convexity),
      value_(std::move(value)),
      grad_(std::move(gradient)) {
  if (dim_ == 0) throw std::invalid_argument("SmoothFunction: dim must be positive");
  if (!(smoothness_ >= 0.0) || !std::isfinite(smoothness_))
    throw std::invalid_argument("SmoothFunction: smoothness must be finite and >= 0");
  if (!(strong_convexity_ >= 0.0))
    throw std::invalid_argument("SmoothFunction: strong convexity must be >= 0");
  if (!value_ || !grad_)
    throw std::invalid_argument("SmoothFunction: value and gradient oracles required");
}

double SmoothFunction::value(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("SmoothFunction::value: dim mismatch");
  return value_(x);
}

Vec SmoothFunction::gradient(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("SmoothFunction::gradient: dim mismatch");
  Vec g = grad_(x);
  if (g.size() != dim_)
    throw std::invalid_argument("SmoothFunction::gradient: oracle returned wrong dim");
  return g;
}

OperatorField::OperatorField(std::size_t dim, double lipschitz,
                             double strong_monotonicity, ApplyFn apply)
    : dim_(dim),
      lipschitz_(lipschitz),
      strong_monotonicity_(strong_monotonicity),
      apply_(std::move(apply)) {
  if (dim_ == 0) throw std::invalid_argument("OperatorField: dim must be positive");
  if (!(lipschitz_ >= 0.0) || !std::isfinite(lipschitz_))
    throw std::invalid_argument("OperatorField: Lipschitz constant must be finite and >= 0");
  if (!(strong_monotonicity_ >= 0.0))
    throw std::invalid_argument("OperatorField: strong monotonicity must be >= 0");
  if (!apply_) throw std::invalid_argument("OperatorField: apply oracle required");
}

Vec OperatorField::apply(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("OperatorField::apply: dim mismatch");
  Vec g = apply_(x);
  if (g.size() != dim_)
    throw std::invalid_argument("OperatorField::apply: oracle returned wrong dim");
  return g;
}

OperatorField saddle_to_operator(const SaddleFunction& f) {
  if (f.dim_y == 0 || f.dim_z == 0)
    throw std::invalid_argument("saddle_to_operator: block dims must be positive");
  if (!f.grad_y || !f.grad_z)
    throw std::invalid_argument("saddle_to_operator: block gradients required");
  const std::size_t dy = f.dim_y;
  const std::size_t dz = f.dim_z;
  auto gy = f.grad_y;
  auto gz = f.grad_z;
  return OperatorField(
      dy + dz, f.lipschitz, std::min(f.mu_y, f.mu_z),
      [dy, dz, gy, gz](const Vec& u) {
        Vec y(u.begin(), u.begin() + static_cast<std::ptrdiff_t>(dy));
        Vec z(u.begin() + static_cast<std::ptrdiff_t>(dy), u.end());
        Vec out(dy + dz);
        Vec by = gy(y, z);
        Vec bz = gz(y, z);
        if (by.size() != dy || bz.size() != dz)
          throw std::invalid_argument("saddle_to_operator: block gradient dim mismatch");
        for (std::size_t i = 0; i < dy; ++i) out[i] = by[i];
        for (std::size_t i = 0; i < dz; ++i) out[dy + i] = -bz[i];
        return out;
      });
}

ProjectableSet ball_set(Vec center, double radius) {
  if (!(radius >= 0.0)) throw std::invalid_argument("ball_set: radius must be >= 0");
  auto project = [center, radius](const Vec& x) {
    Vec d = sub(x, center);
    const double norm = nrm2(d);
    if (norm <= radius) return x;
    Vec out = center;
    axpy(radius / norm, d, out);
    return out;
  };
  auto contains = [center, radius](const Vec& x) {
    return nrm2(sub(x, center)) <= radius + 1e-12;
  };
  return ProjectableSet{std::move(project), std::move(contains)};
}

ProjectableSet block_ball_set(std::size_t free_dim, std::size_t blocks,
                              std::size_t block_dim, double radius) {
  if (!(radius >= 0.0))
    throw std::invalid_argument("block_ball_set: radius must be >= 0");
  const std::size_t total = free_dim + blocks * block_dim;
  auto project = [free_dim, blocks, block_dim, radius, total](const Vec& x) {
    if (x.size() != total)
      throw std::invalid_argument("block_ball_set: dim mismatch");
    Vec out = x;
    for (std::size_t b = 0; b < blocks; ++b) {
      double* blk = out.data() + free_dim + b * block_dim;
      double nsq = 0.0;
      for (std::size_t i = 0; i < block_dim; ++i) nsq += blk[i] * blk[i];
      const double norm = std::sqrt(nsq);
      if (norm > radius) {
        const double s = radius / norm;
        for (std::size_t i = 0; i < block_dim; ++i) blk[i] *= s;
      }
    }
    return out;
  };
  auto contains = [free_dim, blocks, block_dim, radius, total](const Vec& x) {
    if (x.size() != total) return false;
    for (std::size_t b = 0; b < blocks; ++b) {
      const double* blk = x.data() + free_dim + b * block_dim;
      double nsq = 0.0;
      for (std::size_t i = 0; i < block_dim; ++i) nsq += blk[i] * blk[i];
      if (std::sqrt(nsq) > radius + 1e-12) return false;
    }
    return true;
  };
  return ProjectableSet{std::move(project), std::move(contains)};
}

CompositeMinProblem::CompositeMinProblem(SmoothFunction p, SmoothFunction q,
                                         double mu)
    : p_(std::move(p)), q_(std::move(q)), mu_(mu) {
  if (p_.dim() != q_.dim())
    throw std::invalid_argument("CompositeMinProblem: p and q dims differ");
  if (!(p_.smoothness() > 0.0))
    throw std::invalid_argument(
        "CompositeMinProblem: declared smoothness of p must be positive");
  if (!(mu_ >= 0.0))
    throw std::invalid_argument("CompositeMinProblem: mu must be >= 0");
}

double CompositeMinProblem::value_r(const Vec& x) const {
  return p_.value(x) + q_.value(x);
}

Vec CompositeMinProblem::grad_p(const Vec& x) {
  ++counters_.grad_p_calls;
  if (comm_backed_p_) ++counters_.comm_rounds;
  return p_.gradient(x);
}

Vec CompositeMinProblem::grad_q(const Vec& x) {
  ++counters_.grad_q_calls;
  return q_.gradient(x);
}

Vec CompositeMinProblem::grad_r(const Vec& x) {
  Vec g = grad_p(x);
  axpy(1.0, grad_q(x), g);
  return g;
}

CompositeVIProblem::CompositeVIProblem(OperatorField p, OperatorField q,
                                       double mu)
    : p_(std::move(p)), q_(std::move(q)), mu_(mu) {
  if (p_.dim() != q_.dim())
    throw std::invalid_argument("CompositeVIProblem: P and Q dims differ");
  if (!(p_.lipschitz() > 0.0))
    throw std::invalid_argument(
        "CompositeVIProblem: declared Lipschitz constant of P must be positive");
  if (!(mu_ >= 0.0))
    throw std::invalid_argument("CompositeVIProblem: mu must be >= 0");
}

Vec CompositeVIProblem::apply_p(const Vec& x) {
  ++counters_.p_calls;
  if (comm_backed_p_) ++counters_.comm_rounds;
  return p_.apply(x);
}

Vec CompositeVIProblem::apply_q(const Vec& x) {
  ++counters_.q_calls;
  return q_.apply(x);
}

Vec CompositeVIProblem::apply_r(const Vec& x) {
  Vec g = apply_p(x);
  axpy(1.0, apply_q(x), g);
  return g;
}

double check_gradient_fd(const SmoothFunction& f, const Vec& x, double h) {
  if (!(h > 0.0)) throw std::invalid_argument("check_gradient_fd: h must be positive");
  const Vec g = f.gradient(x);
  Vec probe = x;
  double worst = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    probe[i] = x[i] + h;
    const double fp = f.value(probe);
    probe[i] = x[i] - h;
    const double fm = f.value(probe);
    probe[i] = x[i];
    const double fd = (fp - fm) / (2.0 * h);
    const double err = std::abs(fd - g[i]) / std::max(1.0, std::abs(g[i]));
    worst = std::max(worst, err);
  }
  return worst;
}

}  // namespace slideopt
