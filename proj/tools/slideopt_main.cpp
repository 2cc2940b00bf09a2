// slideopt command-line driver.
//
// Subcommands:
//   run-min   sliding / accelerated-gradient / DANE on distributed ridge
//   run-vi    sliding / extragradient on the robust-regression saddle
//   estimate  print the similarity constants (L, mu, delta) for a dataset
//   check     quick self-test of kernels, gradients, counters, parsers
//
// Output is fully deterministic for a fixed command line: traces embed the
// resolved configuration and never include timestamps or timings.  Exit code
// 2 flags a bad command line, 1 a runtime failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "slideopt/baselines.hpp"
#include "slideopt/dataio.hpp"
#include "slideopt/distributed.hpp"
#include "slideopt/inner.hpp"
#include "slideopt/kernels.hpp"
#include "slideopt/problems.hpp"
#include "slideopt/sliding_min.hpp"
#include "slideopt/sliding_vi.hpp"

namespace {

using nlohmann::json;
using namespace slideopt;

struct CommonOpts {
  std::string problem;
  int workers = 25;
  double lambda = 0.1;
  double sigma = 0.01;
  std::uint64_t seed = 1;
  int dim = 20;
  int samples = 100;
  std::string method;
  double eps = 1e-6;
  long max_outer = 0;  // 0 = derive from eps (or the method default)
  std::string inner = "surrogate";
  std::string data;
  std::string out;
  std::string format = "csv";
};

const CLI::Validator inner_spec_validator(
    [](std::string& s) -> std::string {
      if (s == "surrogate") return {};
      if (s.rfind("fixed:", 0) == 0) {
        const std::string t = s.substr(6);
        if (!t.empty() && t.find_first_not_of("0123456789") == std::string::npos &&
            std::stold(t) >= 1.0L && t.size() <= 9)
          return {};
      }
      return "expected 'surrogate' or 'fixed:T' (positive integer T), got '" +
             s + "'";
    },
    "INNER");

InnerStoppingRule parse_inner_rule(const std::string& s) {
  if (s == "surrogate") return surrogate_rule();
  return fixed_budget_rule(std::stol(s.substr(6)));
}

void add_data_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--workers", o.workers, "number of workers")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--lambda", o.lambda, "ridge / coupling regularizer")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--sigma", o.sigma, "worker data noise level")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", o.seed, "synthetic data seed")
      ->capture_default_str();
  cmd->add_option("--dim", o.dim, "synthetic feature count")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--samples", o.samples, "synthetic samples per dataset")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--data", o.data, "LIBSVM file for *-libsvm problems");
}

void add_run_opts(CLI::App* cmd, CommonOpts& o) {
  cmd->add_option("--eps", o.eps, "target squared distance to the optimum")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  cmd->add_option("--max-outer", o.max_outer,
                  "outer iteration cap (0 = derive from eps)")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--inner", o.inner, "inner rule: surrogate or fixed:T")
      ->capture_default_str()
      ->check(inner_spec_validator);
  cmd->add_option("--out", o.out, "output path (default: stdout)");
  cmd->add_option("--format", o.format, "trace format")
      ->capture_default_str()
      ->check(CLI::IsMember({"csv", "json"}));
}

json common_echo(const char* subcommand, const CommonOpts& o) {
  json j;
  j["subcommand"] = subcommand;
  j["problem"] = o.problem;
  j["workers"] = o.workers;
  j["lambda"] = o.lambda;
  j["sigma"] = o.sigma;
  j["seed"] = o.seed;
  j["dim"] = o.dim;
  j["samples"] = o.samples;
  j["method"] = o.method;
  j["eps"] = o.eps;
  j["max_outer"] = o.max_outer;
  j["inner"] = o.inner;
  j["data"] = o.data;
  j["format"] = o.format;
  j["kernels"] = kernels::isa_name(kernels::active_isa());
  return j;
}

std::vector<Dataset> load_ridge_parts(const CommonOpts& o) {
  if (o.problem == "ridge-synth") {
    SynthSpec spec;
    spec.seed = o.seed;
    spec.server_samples = static_cast<std::size_t>(o.samples);
    spec.features = static_cast<std::size_t>(o.dim);
    spec.sigma = o.sigma;
    spec.workers = static_cast<std::size_t>(o.workers);
    return synth_generate(spec).worker_data;
  }
  if (o.data.empty())
    throw CLI::RequiredError("--data (required for " + o.problem + ")");
  Dataset dense = parse_libsvm_file(o.data).densify();
  return split_dataset(dense, static_cast<std::size_t>(o.workers));
}

// Robust runs need identically shaped workers (the shift blocks are shared),
// so a LIBSVM file becomes per-worker noisy copies, like the synthetic path.
std::vector<Dataset> load_robust_parts(const CommonOpts& o) {
  if (o.problem == "robust-synth") {
    SynthSpec spec;
    spec.seed = o.seed;
    spec.server_samples = static_cast<std::size_t>(o.samples);
    spec.features = static_cast<std::size_t>(o.dim);
    spec.sigma = o.sigma;
    spec.workers = static_cast<std::size_t>(o.workers);
    return synth_generate(spec).worker_data;
  }
  if (o.data.empty())
    throw CLI::RequiredError("--data (required for " + o.problem + ")");
  Dataset base = parse_libsvm_file(o.data).densify();
  GaussianStream g(o.seed);
  std::vector<Dataset> parts;
  parts.reserve(static_cast<std::size_t>(o.workers));
  for (int w = 0; w < o.workers; ++w) {
    Dataset copy = base;
    if (o.sigma > 0.0) {
      for (double& v : copy.x.a) v += o.sigma * g.next();
      for (double& v : copy.y) v += o.sigma * g.next();
    }
    parts.push_back(std::move(copy));
  }
  return parts;
}

void emit_trace(const RunTrace& trace, const CommonOpts& o) {
  const TraceFormat fmt =
      o.format == "json" ? TraceFormat::json : TraceFormat::csv;
  if (o.out.empty()) {
    write_trace(std::cout, trace, fmt);
    return;
  }
  std::ofstream f(o.out, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open output file: " + o.out);
  write_trace(f, trace, fmt);
}

void print_min_summary(const RunTrace& trace) {
  if (trace.records.empty()) return;
  const TraceRecord& last = trace.records.back();
  std::cerr << "outer_iterations=" << trace.records.size()
            << " comm_rounds=" << last.comm_rounds << " grad_p=" << last.grad_p
            << " grad_q=" << last.grad_q;
  if (last.dist_sq)
    std::cerr << " final_dist_sq=" << format_double(*last.dist_sq);
  if (last.r_gap) std::cerr << " final_r_gap=" << format_double(*last.r_gap);
  std::cerr << '\n';
}

void cmd_run_min(const CommonOpts& o) {
  std::vector<Dataset> parts = load_ridge_parts(o);
  const SimilarityEstimate est = estimate_constants(parts, o.lambda);
  const double delta_tune = std::max(est.delta_master, 1e-12);
  Network net = make_ridge_network(parts, o.lambda, est.big_l);
  const Vec x_star = ridge_network_minimizer(parts, o.lambda);
  const Vec x0 = zeros(net.dim());
  const InnerStoppingRule rule = parse_inner_rule(o.inner);

  json echo = common_echo("run-min", o);
  echo["constants"] = {{"L", est.big_l},
                       {"mu", est.mu},
                       {"delta_max", est.delta},
                       {"delta_master", est.delta_master},
                       {"delta_tune", delta_tune}};

  RunTrace trace;
  if (o.method == "sliding") {
    SlidingConfig cfg = tune_strongly_convex(est.mu, delta_tune);
    const double gap0 = network_value(net, x0) - network_value(net, x_star);
    const double c0 = dist_sq(x0, x_star) + (2.0 * cfg.eta / cfg.tau) * gap0;
    cfg.iterations = o.max_outer > 0
                         ? o.max_outer
                         : iteration_bound(est.mu, delta_tune, c0, o.eps);
    echo["tuning"] = {{"tau", cfg.tau},
                      {"theta", cfg.theta},
                      {"eta", cfg.eta},
                      {"alpha", cfg.alpha},
                      {"iterations", cfg.iterations}};
    trace = run_distributed_sliding(net, MinMode::strongly_convex,
                                    {delta_tune, est.big_l, est.mu}, cfg, rule,
                                    x0, &x_star);
  } else if (o.method == "sliding-convex") {
    long k = o.max_outer;
    if (k <= 0) {
      const double d0 = dist_sq(x0, x_star);
      k = static_cast<long>(
          std::ceil(std::sqrt(std::max(1.0, 4.0 * delta_tune * d0 / o.eps))));
    }
    SlidingConfig cfg;
    cfg.iterations = k;
    echo["tuning"] = {{"iterations", k},
                      {"schedule", "tau=2/(k+1), theta=1/(2d), eta=1/(2td)"}};
    trace = run_distributed_sliding(net, MinMode::convex,
                                    {delta_tune, est.big_l, est.mu}, cfg, rule,
                                    x0, &x_star);
  } else if (o.method == "acgd") {
    StopSpec stop;
    stop.max_iters = o.max_outer > 0 ? o.max_outer : 100000;
    stop.eps_dist_sq = o.eps;
    echo["tuning"] = {{"step", 1.0 / est.big_l}, {"max_iters", stop.max_iters}};
    trace = run_acgd(net, x0, est.mu, est.big_l, stop, &x_star);
  } else {  // dane
    DaneConfig cfg;
    cfg.mu_tilde = est.delta;
    cfg.max_rounds = o.max_outer > 0 ? o.max_outer : 100000;
    cfg.eps_dist_sq = o.eps;
    echo["tuning"] = {{"mu_tilde", cfg.mu_tilde},
                      {"max_rounds", cfg.max_rounds}};
    trace = run_dane(net, x0, cfg, &x_star);
  }
  trace.config_json = echo.dump();
  emit_trace(trace, o);
  print_min_summary(trace);
}

// Largest observed ||F(u) - F(v)|| / ||u - v|| over seeded standard-normal
// pairs; callers add their own safety factor.
double sample_lipschitz(const std::function<Vec(const Vec&)>& field,
                        std::size_t dim, std::uint64_t seed, int pairs) {
  GaussianStream g(seed);
  double best = 0.0;
  for (int t = 0; t < pairs; ++t) {
    Vec u(dim), v(dim);
    for (double& c : u) c = g.next();
    for (double& c : v) c = g.next();
    Vec fu = field(u);
    axpy(-1.0, field(v), fu);
    Vec duv = u;
    axpy(-1.0, v, duv);
    const double den = nrm2(duv);
    if (den > 0.0) best = std::max(best, nrm2(fu) / den);
  }
  return best;
}

void cmd_run_vi(const CommonOpts& o, double beta, double radius) {
  std::vector<Dataset> parts = load_robust_parts(o);
  const std::size_t n = parts.size();
  const std::size_t dim_total =
      parts[0].features() * (1 + parts[0].samples());

  // Raw per-worker fields for constant estimation; evaluations here are
  // outside the network and never counted.
  std::vector<OperatorField> raw;
  raw.reserve(n);
  for (const Dataset& part : parts)
    raw.push_back(robust_operator(
        RobustRegressionSaddle{part, o.lambda, beta, radius}, 1.0, 0.0));
  auto avg_field = [&](const Vec& u) {
    Vec s = raw[0].apply(u);
    for (std::size_t i = 1; i < n; ++i) axpy(1.0, raw[i].apply(u), s);
    scal(1.0 / static_cast<double>(n), s);
    return s;
  };
  auto diff_field = [&](const Vec& u) {
    Vec s = avg_field(u);
    axpy(-1.0, raw[0].apply(u), s);
    return s;
  };
  // The field is quadratic in (w, r), so sampled difference quotients around
  // the operating region give a usable Lipschitz scale; the factor below
  // absorbs the remainder.  Both constants are echoed in the config.
  const double big_l =
      3.0 * std::max(sample_lipschitz(avg_field, dim_total, o.seed + 101, 32),
                     1e-6);
  const double delta_tune =
      std::max(1.5 * sample_lipschitz(diff_field, dim_total, o.seed + 202, 32),
               1e-12);
  const double mu_op =
      std::min(o.lambda, beta / static_cast<double>(parts[0].samples()));

  OpNetwork net = make_robust_network(parts, o.lambda, beta, radius, big_l);
  const ProjectableSet constraint =
      RobustRegressionSaddle{parts[0], o.lambda, beta, radius}.constraint();
  const Vec x0 = zeros(dim_total);
  const InnerStoppingRule rule = parse_inner_rule(o.inner);
  const long iterations = o.max_outer > 0 ? o.max_outer : 50;

  json echo = common_echo("run-vi", o);
  echo["beta"] = beta;
  echo["radius"] = radius;
  echo["constants"] = {{"L_op", big_l},
                       {"mu_op", mu_op},
                       {"delta_tune", delta_tune}};

  RunTrace trace;
  if (o.method == "vi-sliding") {
    if (mu_op <= 0.0)
      throw std::runtime_error(
          "run-vi: vi-sliding needs lambda > 0 and beta > 0; "
          "use vi-sliding-monotone");
    VIConfig cfg = tune_vi(mu_op, delta_tune);
    cfg.iterations = iterations;
    echo["tuning"] = {{"theta", cfg.theta},
                      {"eta", cfg.eta},
                      {"alpha", cfg.alpha},
                      {"iterations", iterations}};
    trace = run_distributed_vi(net, ViMode::strongly_monotone,
                               {delta_tune, big_l, mu_op}, cfg, rule, x0,
                               nullptr, &constraint);
  } else if (o.method == "vi-sliding-monotone") {
    VIConfig cfg;
    cfg.iterations = iterations;
    echo["tuning"] = {{"iterations", iterations}};
    trace = run_distributed_vi(net, ViMode::monotone,
                               {delta_tune, big_l, mu_op}, cfg, rule, x0,
                               nullptr, &constraint);
  } else {  // extragradient
    const double gamma = 1.0 / (2.0 * big_l);
    echo["tuning"] = {{"gamma", gamma}, {"iterations", iterations}};
    trace = run_extragradient(net, x0, gamma, iterations, &constraint);
  }
  trace.config_json = echo.dump();
  emit_trace(trace, o);

  // Projected natural-map residual of the reported answer, for the log.
  Vec probe = trace.solution;
  axpy(-1.0 / big_l, avg_field(trace.solution), probe);
  probe = constraint.project(probe);
  axpy(-1.0, trace.solution, probe);
  if (!trace.records.empty()) {
    std::cerr << "outer_iterations=" << trace.records.size()
              << " comm_rounds=" << trace.records.back().comm_rounds
              << " final_residual=" << format_double(big_l * nrm2(probe))
              << '\n';
  }
}

void cmd_estimate(const CommonOpts& o) {
  std::vector<Dataset> parts = load_ridge_parts(o);
  const SimilarityEstimate est = estimate_constants(parts, o.lambda);
  json j = common_echo("estimate", o);
  j.erase("method");
  j.erase("eps");
  j.erase("max_outer");
  j.erase("inner");
  j.erase("format");
  j["L"] = est.big_l;
  j["mu"] = est.mu;
  j["delta_max"] = est.delta;
  j["delta_master"] = est.delta_master;
  j["delta_to_average"] = est.delta_to_average;
  j["delta_to_master"] = est.delta_to_master;
  j["power_iterations"] = est.power_iterations;
  j["converged"] = est.converged;
  const std::string text = j.dump(2) + "\n";
  if (o.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + o.out);
    f << text;
  }
}

// ---------------------------------------------------------------------------
// check: a fast self-test battery.  Each check prints one line.

bool report(const char* name, bool ok, const std::string& detail = "") {
  if (ok)
    std::cout << "ok " << name << '\n';
  else
    std::cout << "FAIL " << name << (detail.empty() ? "" : ": " + detail)
              << '\n';
  return ok;
}

bool check_kernels() {
  const kernels::Ops& ref = kernels::reference_ops();
  const kernels::Ops& act = kernels::active_ops();
  GaussianStream g(7);
  const std::size_t len = 257;
  Vec a(len), b(len);
  for (double& v : a) v = g.next();
  for (double& v : b) v = g.next();
  const double tol = 1e-12;
  auto close = [&](double x, double y) {
    return std::abs(x - y) <= tol * std::max(1.0, std::max(std::abs(x), std::abs(y)));
  };
  if (!close(ref.dot(a.data(), b.data(), len), act.dot(a.data(), b.data(), len)))
    return false;
  if (!close(ref.nrm2sq(a.data(), len), act.nrm2sq(a.data(), len))) return false;
  Vec y1 = b, y2 = b;
  ref.axpy(0.37, a.data(), y1.data(), len);
  act.axpy(0.37, a.data(), y2.data(), len);
  for (std::size_t i = 0; i < len; ++i)
    if (!close(y1[i], y2[i])) return false;
  y1 = b;
  y2 = b;
  ref.axpby(1.25, a.data(), -0.5, y1.data(), len);
  act.axpby(1.25, a.data(), -0.5, y2.data(), len);
  for (std::size_t i = 0; i < len; ++i)
    if (!close(y1[i], y2[i])) return false;
  return true;
}

bool check_ridge_gradient() {
  SynthSpec spec;
  spec.seed = 11;
  spec.server_samples = 20;
  spec.features = 5;
  spec.workers = 2;
  SynthData d = synth_generate(spec);
  RidgeProblem rp{d.server, 0.1};
  SmoothFunction f = rp.as_smooth(10.0);
  Vec x(5);
  GaussianStream g(3);
  for (double& v : x) v = g.next();
  return check_gradient_fd(f, x, 1e-6) < 1e-5;
}

bool check_robust_gradient() {
  SynthSpec spec;
  spec.seed = 12;
  spec.server_samples = 4;
  spec.features = 3;
  spec.workers = 2;
  SynthData d = synth_generate(spec);
  RobustRegressionSaddle sp{d.server, 0.1, 0.5, 0.05};
  const std::size_t dw = sp.dim_w();
  SmoothFunction f(
      sp.dim(), 1.0, 0.0,
      [sp, dw](const Vec& u) {
        Vec w(u.begin(), u.begin() + static_cast<long>(dw));
        Vec r(u.begin() + static_cast<long>(dw), u.end());
        return sp.value(w, r);
      },
      [sp, dw](const Vec& u) {
        Vec w(u.begin(), u.begin() + static_cast<long>(dw));
        Vec r(u.begin() + static_cast<long>(dw), u.end());
        Vec gw = sp.grad_w(w, r);
        Vec gr = sp.grad_r(w, r);
        gw.insert(gw.end(), gr.begin(), gr.end());
        return gw;
      });
  Vec u(sp.dim());
  GaussianStream g(4);
  for (double& v : u) v = 0.1 * g.next();
  return check_gradient_fd(f, u, 1e-6) < 1e-4;
}

bool check_counters() {
  SynthSpec spec;
  spec.seed = 5;
  spec.server_samples = 30;
  spec.features = 6;
  spec.workers = 3;
  spec.sigma = 0.01;
  SynthData d = synth_generate(spec);
  SimilarityEstimate est = estimate_constants(d.worker_data, 0.1);
  Network net = make_ridge_network(d.worker_data, 0.1, est.big_l);
  const double delta_tune = std::max(est.delta_master, 1e-12);
  SlidingConfig cfg = tune_strongly_convex(est.mu, delta_tune);
  const long k = 4, t = 3;
  cfg.iterations = k;
  RunTrace trace =
      run_distributed_sliding(net, MinMode::strongly_convex,
                              {delta_tune, est.big_l, est.mu}, cfg,
                              fixed_budget_rule(t), zeros(net.dim()));
  const TraceRecord& last = trace.records.back();
  return last.grad_p == 2 * k && last.grad_q == (t + 1) * k &&
         last.comm_rounds == 2 * k && net.comm_rounds == last.comm_rounds;
}

bool check_contraction() {
  SynthSpec spec;
  spec.seed = 6;
  spec.server_samples = 40;
  spec.features = 8;
  spec.workers = 4;
  spec.sigma = 0.01;
  SynthData d = synth_generate(spec);
  SimilarityEstimate est = estimate_constants(d.worker_data, 0.1);
  Network net = make_ridge_network(d.worker_data, 0.1, est.big_l);
  const double delta_tune = std::max(est.delta_master, 1e-12);
  SlidingConfig cfg = tune_strongly_convex(est.mu, delta_tune);
  cfg.iterations = 10;
  Vec x_star = ridge_network_minimizer(d.worker_data, 0.1);
  RunTrace trace = run_distributed_sliding(net, MinMode::strongly_convex,
                                           {delta_tune, est.big_l, est.mu},
                                           cfg, surrogate_rule(),
                                           zeros(net.dim()), &x_star);
  const double factor = 1.0 - contraction_factor(est.mu, delta_tune);
  double prev = -1.0;
  for (const TraceRecord& row : trace.records) {
    if (!row.lyapunov) return false;
    if (prev >= 0.0 && *row.lyapunov > factor * prev + 1e-12) return false;
    prev = *row.lyapunov;
  }
  return true;
}

bool check_vi_contraction() {
  // F(y, z) = (y + 2z, -2y + z): gradient field of the strongly
  // convex-concave saddle y^2/2 + 2yz - z^2/2 with solution at the origin.
  const double mu = 1.0, lip = 3.0;
  OperatorField whole(2, lip, mu, [](const Vec& u) {
    return Vec{u[0] + 2.0 * u[1], -2.0 * u[0] + u[1]};
  });
  OperatorField none(2, 0.5, 0.0, [](const Vec& u) {
    return Vec{0.1 * u[0], 0.1 * u[1]};
  });
  OperatorField rest(2, lip, mu, [](const Vec& u) {
    return Vec{0.9 * u[0] + 2.0 * u[1], -2.0 * u[0] + 0.9 * u[1]};
  });
  CompositeVIProblem prob(none, rest, mu);
  VIConfig cfg = tune_vi(mu, 0.5);
  cfg.iterations = 12;
  Vec x_star = zeros(2);
  RunTrace trace = run_vi_strongly_monotone(prob, Vec{1.0, -2.0}, cfg,
                                            surrogate_rule(), &x_star);
  const double factor = vi_contraction_factor(mu, cfg.eta) + 1e-12;
  double prev = nrm2sq(Vec{1.0, -2.0});
  for (const TraceRecord& row : trace.records) {
    if (!row.dist_sq) return false;
    if (*row.dist_sq > factor * prev + 1e-12) return false;
    prev = *row.dist_sq;
  }
  return true;
}

bool check_parser() {
  std::istringstream good("1.5 1:2.0 3:-4.5\n-1 2:0.25\n");
  SparseDataset ds = parse_libsvm(good);
  if (ds.rows.size() != 2 || ds.max_index != 3) return false;
  Dataset dense = ds.densify();
  if (dense.x.at(0, 2) != -4.5 || dense.y[1] != -1.0) return false;
  try {
    std::istringstream bad("1 3:abc\n");
    parse_libsvm(bad);
    return false;
  } catch (const ParseError& e) {
    if (std::string(e.what()).find("line 1") == std::string::npos) return false;
  }
  return true;
}

bool check_trace_roundtrip() {
  RunTrace t;
  TraceRecord r;
  r.k = 0;
  r.dist_sq = 0.5;
  r.comm_rounds = 2;
  r.grad_p = 2;
  r.grad_q = 4;
  r.inner_iters = 3;
  t.records.push_back(r);
  t.solution = {1.0, -0.25};
  t.config_json = "{\"method\":\"sliding\"}";
  for (TraceFormat fmt : {TraceFormat::csv, TraceFormat::json}) {
    const std::string s1 = trace_to_string(t, fmt);
    std::istringstream in(s1);
    RunTrace back = read_trace(in, fmt);
    if (trace_to_string(back, fmt) != s1) return false;
  }
  return true;
}

int cmd_check() {
  int failures = 0;
  auto run = [&](const char* name, bool (*fn)()) {
    bool ok = false;
    std::string detail;
    try {
      ok = fn();
    } catch (const std::exception& e) {
      detail = e.what();
    }
    if (!report(name, ok, detail)) ++failures;
  };
  run("kernels-equivalence", check_kernels);
  run("ridge-gradient-fd", check_ridge_gradient);
  run("robust-gradient-fd", check_robust_gradient);
  run("sliding-counters", check_counters);
  run("sliding-contraction", check_contraction);
  run("vi-contraction", check_vi_contraction);
  run("libsvm-parser", check_parser);
  run("trace-roundtrip", check_trace_roundtrip);
  std::cout << (failures == 0 ? "all checks passed" : "checks failed") << '\n';
  return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gradient-sliding solvers for distributed problems under "
               "function similarity"};
  app.require_subcommand(1);

  CommonOpts min_opts;
  CLI::App* run_min = app.add_subcommand(
      "run-min", "composite minimization (ridge regression)");
  min_opts.problem = "ridge-synth";
  run_min->add_option("--problem", min_opts.problem, "problem instance")
      ->capture_default_str()
      ->check(CLI::IsMember({"ridge-synth", "ridge-libsvm"}));
  min_opts.method = "sliding";
  run_min->add_option("--method", min_opts.method, "solver")
      ->capture_default_str()
      ->check(CLI::IsMember({"sliding", "sliding-convex", "acgd", "dane"}));
  add_data_opts(run_min, min_opts);
  add_run_opts(run_min, min_opts);

  CommonOpts vi_opts;
  double beta = 0.1, radius = 0.05;
  CLI::App* run_vi = app.add_subcommand(
      "run-vi", "variational inequality (robust regression saddle)");
  vi_opts.problem = "robust-synth";
  run_vi->add_option("--problem", vi_opts.problem, "problem instance")
      ->capture_default_str()
      ->check(CLI::IsMember({"robust-synth", "robust-libsvm"}));
  vi_opts.method = "vi-sliding";
  run_vi->add_option("--method", vi_opts.method, "solver")
      ->capture_default_str()
      ->check(CLI::IsMember(
          {"vi-sliding", "vi-sliding-monotone", "extragradient"}));
  run_vi->add_option("--beta", beta, "shift concavity regularizer")
      ->capture_default_str()
      ->check(CLI::NonNegativeNumber);
  run_vi->add_option("--radius", radius, "per-sample shift ball radius")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  add_data_opts(run_vi, vi_opts);
  add_run_opts(run_vi, vi_opts);

  CommonOpts est_opts;
  CLI::App* estimate = app.add_subcommand(
      "estimate", "similarity constants (L, mu, delta) of a dataset split");
  est_opts.problem = "ridge-synth";
  estimate->add_option("--problem", est_opts.problem, "problem instance")
      ->capture_default_str()
      ->check(CLI::IsMember({"ridge-synth", "ridge-libsvm"}));
  add_data_opts(estimate, est_opts);
  estimate->add_option("--out", est_opts.out, "output path (default: stdout)");

  CLI::App* check = app.add_subcommand("check", "run the self-test battery");

  int exit_code = 0;
  run_min->callback([&] { cmd_run_min(min_opts); });
  run_vi->callback([&] { cmd_run_vi(vi_opts, beta, radius); });
  estimate->callback([&] { cmd_estimate(est_opts); });
  check->callback([&] { exit_code = cmd_check(); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return exit_code;
}
