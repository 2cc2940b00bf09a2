#include "slideopt/problems.hpp"

#include <cmath>
#include <memory>
#include <stdexcept>

namespace slideopt {

double GaussianStream::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // uniforms in (0,1] resp. [0,1) from the top 53 bits
  const double u1 =
      (static_cast<double>(rng_() >> 11) + 1.0) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng_() >> 11) * 0x1.0p-53;
  const double mag = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * 3.14159265358979323846 * u2;
  spare_ = mag * std::sin(angle);
  has_spare_ = true;
  return mag * std::cos(angle);
}

double RidgeProblem::value(const Vec& w) const {
  Vec resid = gemv(data.x, w);
  axpy(-1.0, data.y, resid);
  const double n = static_cast<double>(data.samples());
  return nrm2sq(resid) / (2.0 * n) + 0.5 * lambda * nrm2sq(w);
}

Vec RidgeProblem::gradient(const Vec& w) const {
  Vec resid = gemv(data.x, w);
  axpy(-1.0, data.y, resid);
  Vec g = gemv_t(data.x, resid);
  scal(1.0 / static_cast<double>(data.samples()), g);
  axpy(lambda, w, g);
  return g;
}

Matrix RidgeProblem::hessian() const {
  return add_scaled_identity(
      gram(data.x, 1.0 / static_cast<double>(data.samples())), lambda);
}

Vec RidgeProblem::minimizer() const {
  Vec b = gemv_t(data.x, data.y);
  scal(1.0 / static_cast<double>(data.samples()), b);
  return cholesky_solve(hessian(), b);
}

SmoothFunction RidgeProblem::as_smooth(double smoothness) const {
  auto self = std::make_shared<RidgeProblem>(*this);
  return SmoothFunction(
      data.features(), smoothness, lambda,
      [self](const Vec& w) { return self->value(w); },
      [self](const Vec& w) { return self->gradient(w); });
}

namespace {

void validate_saddle_args(const RobustRegressionSaddle& prob, const Vec& w,
                          const Vec& r_blocks) {
  if (w.size() != prob.dim_w() || r_blocks.size() != prob.dim_r())
    throw std::invalid_argument("RobustRegressionSaddle: block dim mismatch");
}

}  // namespace

double RobustRegressionSaddle::value(const Vec& w, const Vec& r_blocks) const {
  validate_saddle_args(*this, w, r_blocks);
  const std::size_t d = dim_w();
  const std::size_t n = data.samples();
  double acc = 0.0;
  Vec shifted(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = data.x.row(i);
    const double* ri = r_blocks.data() + i * d;
    double rsq = 0.0;
    for (std::size_t j = 0; j < d; ++j) {
      shifted[j] = xi[j] + ri[j];
      rsq += ri[j] * ri[j];
    }
    const double e = dot(w, shifted) - data.y[i];
    acc += e * e - beta * rsq;
  }
  return acc / (2.0 * static_cast<double>(n)) + 0.5 * lambda * nrm2sq(w);
}

Vec RobustRegressionSaddle::grad_w(const Vec& w, const Vec& r_blocks) const {
  validate_saddle_args(*this, w, r_blocks);
  const std::size_t d = dim_w();
  const std::size_t n = data.samples();
  Vec g = zeros(d);
  Vec shifted(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = data.x.row(i);
    const double* ri = r_blocks.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) shifted[j] = xi[j] + ri[j];
    const double e = dot(w, shifted) - data.y[i];
    axpy(e, shifted, g);
  }
  scal(1.0 / static_cast<double>(n), g);
  axpy(lambda, w, g);
  return g;
}

Vec RobustRegressionSaddle::grad_r(const Vec& w, const Vec& r_blocks) const {
  validate_saddle_args(*this, w, r_blocks);
  const std::size_t d = dim_w();
  const std::size_t n = data.samples();
  const double inv_n = 1.0 / static_cast<double>(n);
  Vec g(dim_r());
  Vec shifted(d);
  for (std::size_t i = 0; i < n; ++i) {
    const double* xi = data.x.row(i);
    const double* ri = r_blocks.data() + i * d;
    for (std::size_t j = 0; j < d; ++j) shifted[j] = xi[j] + ri[j];
    const double e = dot(w, shifted) - data.y[i];
    double* gi = g.data() + i * d;
    for (std::size_t j = 0; j < d; ++j)
      gi[j] = inv_n * (e * w[j] - beta * ri[j]);
  }
  return g;
}

SaddleFunction RobustRegressionSaddle::as_saddle(double lipschitz, double mu_y,
                                                 double mu_z) const {
  auto self = std::make_shared<RobustRegressionSaddle>(*this);
  SaddleFunction f;
  f.dim_y = dim_w();
  f.dim_z = dim_r();
  f.lipschitz = lipschitz;
  f.mu_y = mu_y;
  f.mu_z = mu_z;
  f.value = [self](const Vec& w, const Vec& r) { return self->value(w, r); };
  f.grad_y = [self](const Vec& w, const Vec& r) { return self->grad_w(w, r); };
  f.grad_z = [self](const Vec& w, const Vec& r) { return self->grad_r(w, r); };
  return f;
}

ProjectableSet RobustRegressionSaddle::constraint() const {
  return block_ball_set(dim_w(), data.samples(), dim_w(), radius);
}

OperatorField robust_operator(const RobustRegressionSaddle& prob,
                              double lipschitz, double mu) {
  return saddle_to_operator(prob.as_saddle(lipschitz, mu, mu));
}

SynthData synth_generate(const SynthSpec& spec) {
  if (spec.server_samples == 0 || spec.features == 0 || spec.workers == 0)
    throw std::invalid_argument("synth_generate: sizes must be positive");
  if (!(spec.sigma >= 0.0))
    throw std::invalid_argument("synth_generate: sigma must be >= 0");

  GaussianStream g(spec.seed);
  const std::size_t n = spec.server_samples;
  const std::size_t d = spec.features;

  SynthData out;
  out.w_true.resize(d);
  for (std::size_t j = 0; j < d; ++j) out.w_true[j] = g.next();

  out.server.x = Matrix(n, d);
  for (std::size_t i = 0; i < n * d; ++i) out.server.x.a[i] = g.next();
  out.server.y.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec row(out.server.x.row(i), out.server.x.row(i) + d);
    out.server.y[i] = dot(row, out.w_true) + spec.label_noise * g.next();
  }

  out.worker_data.reserve(spec.workers);
  for (std::size_t wkr = 0; wkr < spec.workers; ++wkr) {
    Dataset ds = out.server;
    if (spec.sigma > 0.0) {
      for (std::size_t i = 0; i < n * d; ++i)
        ds.x.a[i] += spec.sigma * g.next();
      for (std::size_t i = 0; i < n; ++i) ds.y[i] += spec.sigma * g.next();
    }
    out.worker_data.push_back(std::move(ds));
  }
  return out;
}

std::vector<Dataset> split_dataset(const Dataset& data, std::size_t workers) {
  if (workers == 0) throw std::invalid_argument("split_dataset: need >= 1 worker");
  if (data.samples() < workers)
    throw std::invalid_argument("split_dataset: fewer samples than workers");
  const std::size_t base = data.samples() / workers;
  const std::size_t extra = data.samples() % workers;
  std::vector<Dataset> parts;
  parts.reserve(workers);
  std::size_t row = 0;
  for (std::size_t w = 0; w < workers; ++w) {
    const std::size_t count = base + (w < extra ? 1 : 0);
    Dataset part;
    part.x = Matrix(count, data.features());
    part.y.resize(count);
    for (std::size_t i = 0; i < count; ++i, ++row) {
      for (std::size_t j = 0; j < data.features(); ++j)
        part.x.at(i, j) = data.x.at(row, j);
      part.y[i] = data.y[row];
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

SimilarityEstimate estimate_constants(const std::vector<Dataset>& workers,
                                      double lambda, double tol,
                                      long max_iters) {
  if (workers.empty())
    throw std::invalid_argument("estimate_constants: no datasets");
  if (!(lambda >= 0.0))
    throw std::invalid_argument("estimate_constants: lambda must be >= 0");
  const std::size_t d = workers.front().features();
  for (const Dataset& ds : workers) {
    if (ds.features() != d)
      throw std::invalid_argument("estimate_constants: feature dims differ");
    if (ds.samples() == 0)
      throw std::invalid_argument("estimate_constants: empty dataset");
  }

  SimilarityEstimate est;
  est.mu = lambda;

  std::vector<Matrix> hessians;
  hessians.reserve(workers.size());
  Matrix h_avg(d, d);
  for (const Dataset& ds : workers) {
    Matrix h = gram(ds.x, 1.0 / static_cast<double>(ds.samples()));
    for (std::size_t i = 0; i < d * d; ++i) h_avg.a[i] += h.a[i];
    hessians.push_back(std::move(h));
  }
  scal(1.0 / static_cast<double>(workers.size()), h_avg.a);

  double max_eig = 0.0;
  for (const Matrix& h : hessians) {
    PowerIterResult r = largest_eigenvalue_psd(h, tol, max_iters);
    est.power_iterations += r.iterations;
    est.converged = est.converged && r.converged;
    max_eig = std::max(max_eig, r.value);
  }
  {
    PowerIterResult r = largest_eigenvalue_psd(h_avg, tol, max_iters);
    est.power_iterations += r.iterations;
    est.converged = est.converged && r.converged;
    max_eig = std::max(max_eig, r.value);
  }
  est.big_l = max_eig + lambda;

  Matrix diff(d, d);
  for (std::size_t w = 0; w < hessians.size(); ++w) {
    for (std::size_t i = 0; i < d * d; ++i)
      diff.a[i] = h_avg.a[i] - hessians[w].a[i];
    PowerIterResult r = spectral_norm_sym(diff, tol, max_iters);
    est.power_iterations += r.iterations;
    est.converged = est.converged && r.converged;
    est.delta_to_average.push_back(r.value);

    for (std::size_t i = 0; i < d * d; ++i)
      diff.a[i] = hessians[w].a[i] - hessians.front().a[i];
    PowerIterResult m = spectral_norm_sym(diff, tol, max_iters);
    est.power_iterations += m.iterations;
    est.converged = est.converged && m.converged;
    est.delta_to_master.push_back(m.value);
  }
  est.delta_master = est.delta_to_average.front();
  for (double v : est.delta_to_average) est.delta = std::max(est.delta, v);
  return est;
}

Vec ridge_network_minimizer(const std::vector<Dataset>& data, double lambda) {
  if (data.empty())
    throw std::invalid_argument("ridge_network_minimizer: no datasets");
  const std::size_t d = data.front().features();
  Matrix a(d, d);
  Vec b = zeros(d);
  for (const Dataset& ds : data) {
    const double inv_n = 1.0 / static_cast<double>(ds.samples());
    Matrix h = gram(ds.x, inv_n);
    for (std::size_t i = 0; i < d * d; ++i) a.a[i] += h.a[i];
    Vec bi = gemv_t(ds.x, ds.y);
    axpy(inv_n, bi, b);
  }
  const double inv_workers = 1.0 / static_cast<double>(data.size());
  scal(inv_workers, a.a);
  scal(inv_workers, b);
  return cholesky_solve(add_scaled_identity(std::move(a), lambda), b);
}

Network make_ridge_network(const std::vector<Dataset>& data, double lambda,
                           double smoothness) {
  if (data.empty())
    throw std::invalid_argument("make_ridge_network: no datasets");
  Network net;
  int id = 1;
  for (const Dataset& ds : data) {
    RidgeProblem local{ds, lambda};
    net.workers.push_back(Worker{id++, local.as_smooth(smoothness), 0});
  }
  return net;
}

OpNetwork make_robust_network(const std::vector<Dataset>& data, double lambda,
                              double beta, double radius, double lipschitz) {
  if (data.empty())
    throw std::invalid_argument("make_robust_network: no datasets");
  // the shift blocks are indexed by sample, shared across workers, so every
  // worker must hold the same number of samples (noisy-copies setting)
  for (const Dataset& ds : data) {
    if (ds.samples() != data.front().samples() ||
        ds.features() != data.front().features())
      throw std::invalid_argument(
          "make_robust_network: worker datasets must share the same shape");
  }
  OpNetwork net;
  int id = 1;
  for (const Dataset& ds : data) {
    RobustRegressionSaddle local{ds, lambda, beta, radius};
    net.workers.push_back(OpWorker{id++, robust_operator(local, lipschitz, 0.0), 0});
  }
  return net;
}

}  // namespace slideopt
