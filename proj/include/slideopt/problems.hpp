#ifndef SLIDEOPT_PROBLEMS_HPP
#define SLIDEOPT_PROBLEMS_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "slideopt/distributed.hpp"
#include "slideopt/linalg.hpp"
#include "slideopt/oracles.hpp"

// Concrete problems and the data layer: ridge regression, a robust-regression
// saddle over per-sample feature shifts, synthetic similarity-controlled
// datasets, and spectral estimation of the constants (L, mu, delta) that tune
// the solvers.

namespace slideopt {

struct Dataset {
  Matrix x;  // samples-by-features, row-major
  Vec y;

  std::size_t samples() const { return x.rows; }
  std::size_t features() const { return x.cols; }
};

// Standard-normal stream (mt19937_64 + Box-Muller), pinned by project code so
// a seed names the same data everywhere.
class GaussianStream {
 public:
  explicit GaussianStream(std::uint64_t seed) : rng_(seed) {}
  double next();

 private:
  std::mt19937_64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

// (1/2N) ||X w - y||^2 + (lambda/2) ||w||^2
struct RidgeProblem {
  Dataset data;
  double lambda = 0.0;

  double value(const Vec& w) const;
  Vec gradient(const Vec& w) const;
  Matrix hessian() const;  // (1/N) X^T X + lambda I
  Vec minimizer() const;   // exact, via Cholesky on the normal equations
  // smoothness is the declared L (usually from estimate_constants)
  SmoothFunction as_smooth(double smoothness) const;
};

// min_w max_{||r_i|| <= radius} (1/2N) sum_i [ (w'(x_i + r_i) - y_i)^2
//   - beta ||r_i||^2 ] + (lambda/2) ||w||^2, stacked as u = [w; r_1; ...; r_N].
struct RobustRegressionSaddle {
  Dataset data;
  double lambda = 0.0;
  double beta = 0.0;
  double radius = 0.0;

  std::size_t dim_w() const { return data.features(); }
  std::size_t dim_r() const { return data.features() * data.samples(); }
  std::size_t dim() const { return dim_w() + dim_r(); }

  double value(const Vec& w, const Vec& r_blocks) const;
  Vec grad_w(const Vec& w, const Vec& r_blocks) const;
  Vec grad_r(const Vec& w, const Vec& r_blocks) const;
  SaddleFunction as_saddle(double lipschitz, double mu_y, double mu_z) const;
  ProjectableSet constraint() const;  // w free, each r_i in a radius-ball
};

// Stacked monotone field [grad_w; -grad_r] with declared constants.
OperatorField robust_operator(const RobustRegressionSaddle& prob,
                              double lipschitz, double mu);

struct SynthSpec {
  std::uint64_t seed = 1;
  std::size_t server_samples = 100;
  std::size_t features = 20;
  double sigma = 0.01;  // worker feature/label noise level
  std::size_t workers = 25;
  double label_noise = 0.1;  // server-side label noise
};

struct SynthData {
  Dataset server;
  std::vector<Dataset> worker_data;
  Vec w_true;
};

// Server dataset from the seed; worker i = server data plus i.i.d. N(0,
// sigma^2) noise on features and labels.  sigma = 0 copies the server data.
SynthData synth_generate(const SynthSpec& spec);

// Contiguous near-equal chunks in row order; the first (N mod n) chunks get
// the extra sample.
std::vector<Dataset> split_dataset(const Dataset& data, std::size_t workers);

struct SimilarityEstimate {
  double big_l = 0.0;  // max over workers (and their average) of lambda_max + lambda
  double mu = 0.0;     // = lambda
  double delta = 0.0;         // max_i ||H_avg - H_i||
  double delta_master = 0.0;  // ||H_avg - H_1||: the bound for p = f - f_1
  std::vector<double> delta_to_average;
  std::vector<double> delta_to_master;
  long power_iterations = 0;
  bool converged = true;
};

// H_i = (1/N_i) X_i^T X_i; spectral norms by shifted power iteration.
SimilarityEstimate estimate_constants(const std::vector<Dataset>& workers,
                                      double lambda, double tol = 1e-9,
                                      long max_iters = 10000);

// Exact minimizer of (1/n) sum_i ridge_i, the objective the network runs on.
Vec ridge_network_minimizer(const std::vector<Dataset>& data, double lambda);

// One worker per dataset; worker smoothness is declared, not estimated here.
Network make_ridge_network(const std::vector<Dataset>& data, double lambda,
                           double smoothness);
OpNetwork make_robust_network(const std::vector<Dataset>& data, double lambda,
                              double beta, double radius, double lipschitz);

}  // namespace slideopt

#endif  // SLIDEOPT_PROBLEMS_HPP
