#include "slideopt/linalg.hpp"

#include <cmath>
#include <stdexcept>

#include "slideopt/kernels.hpp"

namespace slideopt {

Vec gemv(const Matrix& A, const Vec& x) {
  if (x.size() != A.cols) throw std::invalid_argument("gemv: size mismatch");
  const auto& ops = kernels::active_ops();
  Vec y(A.rows);
  for (std::size_t i = 0; i < A.rows; ++i) {
    y[i] = ops.dot(A.row(i), x.data(), A.cols);
  }
  return y;
}

Vec gemv_t(const Matrix& A, const Vec& x) {
  if (x.size() != A.rows) throw std::invalid_argument("gemv_t: size mismatch");
  const auto& ops = kernels::active_ops();
  Vec y(A.cols, 0.0);
  for (std::size_t i = 0; i < A.rows; ++i) {
    ops.axpy(x[i], A.row(i), y.data(), A.cols);
  }
  return y;
}

Matrix gram(const Matrix& X, double scale) {
  const auto& ops = kernels::active_ops();
  Matrix G(X.cols, X.cols);
  for (std::size_t r = 0; r < X.rows; ++r) {
    const double* xr = X.row(r);
    for (std::size_t j = 0; j < X.cols; ++j) {
      ops.axpy(scale * xr[j], xr, G.row(j), X.cols);
    }
  }
  // rounding of scale * xr[j] breaks exact symmetry; restore it
  for (std::size_t i = 0; i < G.rows; ++i) {
    for (std::size_t j = i + 1; j < G.cols; ++j) {
      const double m = 0.5 * (G.at(i, j) + G.at(j, i));
      G.at(i, j) = m;
      G.at(j, i) = m;
    }
  }
  return G;
}

Matrix add_scaled_identity(Matrix A, double c) {
  if (A.rows != A.cols)
    throw std::invalid_argument("add_scaled_identity: matrix not square");
  for (std::size_t i = 0; i < A.rows; ++i) A.at(i, i) += c;
  return A;
}

Vec cholesky_solve(Matrix A, const Vec& b) {
  const std::size_t n = A.rows;
  if (A.cols != n || b.size() != n)
    throw std::invalid_argument("cholesky_solve: size mismatch");
  // in-place lower Cholesky
  for (std::size_t j = 0; j < n; ++j) {
    double d = A.at(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= A.at(j, k) * A.at(j, k);
    if (!(d > 0.0))
      throw std::invalid_argument("cholesky_solve: matrix not positive definite");
    const double ljj = std::sqrt(d);
    A.at(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = A.at(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= A.at(i, k) * A.at(j, k);
      A.at(i, j) = s / ljj;
    }
  }
  // L z = b
  Vec z(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = b[i];
    for (std::size_t k = 0; k < i; ++k) s -= A.at(i, k) * z[k];
    z[i] = s / A.at(i, i);
  }
  // L^T x = z
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = z[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= A.at(k, ii) * x[k];
    x[ii] = s / A.at(ii, ii);
  }
  return x;
}

namespace {

Vec start_vector(std::size_t n, bool alternate) {
  Vec v(n);
  for (std::size_t i = 0; i < n; ++i) {
    double e = 1.0 + 0.125 * static_cast<double>(i % 7) +
               1e-3 * static_cast<double>(i);
    if (alternate && (i % 2 == 1)) e = -e;
    v[i] = e;
  }
  scal(1.0 / nrm2(v), v);
  return v;
}

PowerIterResult power_iterate(const Matrix& A, Vec v, double tol,
                              long max_iters) {
  PowerIterResult res;
  double rayleigh = 0.0;
  for (long t = 0; t < max_iters; ++t) {
    Vec av = gemv(A, v);
    const double norm = nrm2(av);
    res.iterations = t + 1;
    if (norm == 0.0) {  // start vector is in the nullspace
      res.value = 0.0;
      res.converged = true;
      return res;
    }
    const double nr = dot(v, av);
    scal(1.0 / norm, av);
    v = std::move(av);
    if (t > 0 && std::abs(nr - rayleigh) <= tol * std::max(1.0, std::abs(nr))) {
      res.value = nr;
      res.converged = true;
      return res;
    }
    rayleigh = nr;
  }
  res.value = rayleigh;
  return res;
}

}  // namespace

PowerIterResult largest_eigenvalue_psd(const Matrix& A, double tol,
                                       long max_iters) {
  if (A.rows != A.cols)
    throw std::invalid_argument("largest_eigenvalue_psd: matrix not square");
  if (A.rows == 0) return {0.0, 0, true};
  PowerIterResult res = power_iterate(A, start_vector(A.rows, false), tol,
                                      max_iters);
  if (res.value == 0.0) {
    // retry once in case the first start vector was orthogonal to the
    // dominant eigenvector
    PowerIterResult retry = power_iterate(A, start_vector(A.rows, true), tol,
                                          max_iters);
    retry.iterations += res.iterations;
    return retry;
  }
  return res;
}

PowerIterResult spectral_norm_sym(const Matrix& M, double tol, long max_iters) {
  if (M.rows != M.cols)
    throw std::invalid_argument("spectral_norm_sym: matrix not square");
  if (M.rows == 0) return {0.0, 0, true};
  // Gershgorin bound: |lambda| <= max_i sum_j |M_ij|
  double shift = 0.0;
  for (std::size_t i = 0; i < M.rows; ++i) {
    double row_sum = 0.0;
    for (std::size_t j = 0; j < M.cols; ++j) row_sum += std::abs(M.at(i, j));
    shift = std::max(shift, row_sum);
  }
  if (shift == 0.0) return {0.0, 0, true};

  Matrix plus = add_scaled_identity(M, shift);          // M + sI, PSD
  Matrix minus(M.rows, M.cols);                         // sI - M, PSD
  for (std::size_t i = 0; i < M.rows; ++i)
    for (std::size_t j = 0; j < M.cols; ++j)
      minus.at(i, j) = (i == j ? shift : 0.0) - M.at(i, j);

  PowerIterResult hi = largest_eigenvalue_psd(plus, tol, max_iters);
  PowerIterResult lo = largest_eigenvalue_psd(minus, tol, max_iters);
  const double lambda_max = hi.value - shift;
  const double lambda_min = shift - lo.value;
  PowerIterResult res;
  res.value = std::max(std::abs(lambda_max), std::abs(lambda_min));
  res.iterations = hi.iterations + lo.iterations;
  res.converged = hi.converged && lo.converged;
  return res;
}

}  // namespace slideopt
