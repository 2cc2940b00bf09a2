#ifndef SLIDEOPT_LINALG_HPP
#define SLIDEOPT_LINALG_HPP

#include <cstddef>
#include <functional>

#include "slideopt/vec.hpp"

// Small dense row-major matrices plus the two factorizations the project
// needs: an SPD Cholesky solve (normal equations, quadratic subproblem
// oracles) and shifted power iteration for largest-magnitude eigenvalues of
// symmetric matrices (smoothness / similarity estimation).

namespace slideopt {

struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Vec a;  // row-major, rows * cols entries

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), a(r * c, 0.0) {}

  double& at(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double at(std::size_t i, std::size_t j) const { return a[i * cols + j]; }
  const double* row(std::size_t i) const { return a.data() + i * cols; }
  double* row(std::size_t i) { return a.data() + i * cols; }
};

// y = A x
Vec gemv(const Matrix& A, const Vec& x);
// y = A^T x
Vec gemv_t(const Matrix& A, const Vec& x);

// scale * X^T X, symmetrized so the result is exactly symmetric.
Matrix gram(const Matrix& X, double scale);

Matrix add_scaled_identity(Matrix A, double c);  // A + c I

// Solve A x = b for symmetric positive definite A.  Throws
// std::invalid_argument when a pivot is not positive.
Vec cholesky_solve(Matrix A, const Vec& b);

struct PowerIterResult {
  double value = 0.0;
  long iterations = 0;
  bool converged = false;
};

// Largest eigenvalue of a symmetric PSD matrix by power iteration with a
// deterministic start vector; convergence on relative Rayleigh-quotient
// change <= tol.
PowerIterResult largest_eigenvalue_psd(const Matrix& A, double tol,
                                       long max_iters);

// Largest-magnitude eigenvalue (i.e. spectral norm) of a symmetric matrix.
// Gershgorin shift makes both M + sI and sI - M PSD, each is handled by the
// PSD routine, and the larger of |lambda_max|, |lambda_min| is returned.
PowerIterResult spectral_norm_sym(const Matrix& M, double tol, long max_iters);

}  // namespace slideopt

#endif  // SLIDEOPT_LINALG_HPP
