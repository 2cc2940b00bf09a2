#include <doctest.h>

#include <stdexcept>

#include "slideopt/linalg.hpp"

using namespace slideopt;

TEST_SUITE("linalg") {

TEST_CASE("matrix storage is row-major") {
  Matrix A(2, 3);
  A.at(0, 0) = 1.0;
  A.at(0, 2) = 3.0;
  A.at(1, 1) = 5.0;
  CHECK(A.a[0] == 1.0);
  CHECK(A.a[2] == 3.0);
  CHECK(A.a[4] == 5.0);
  CHECK(A.row(1)[1] == 5.0);
}

TEST_CASE("gemv and gemv_t against hand-computed products") {
  Matrix A(2, 2);
  A.at(0, 0) = 1.0;
  A.at(0, 1) = 2.0;
  A.at(1, 0) = 3.0;
  A.at(1, 1) = 4.0;
  Vec y = gemv(A, {5.0, 6.0});  // [5+12, 15+24]
  CHECK(y[0] == 17.0);
  CHECK(y[1] == 39.0);
  Vec z = gemv_t(A, {1.0, 1.0});  // column sums
  CHECK(z[0] == 4.0);
  CHECK(z[1] == 6.0);
}

TEST_CASE("gram matrix is exactly symmetric and correct") {
  Matrix X(2, 2);
  X.at(0, 0) = 1.0;
  X.at(0, 1) = 2.0;
  X.at(1, 0) = 3.0;
  X.at(1, 1) = 4.0;
  Matrix G = gram(X, 0.5);  // (1/2) X^T X = [[5,7],[7,10]]
  CHECK(G.at(0, 0) == 5.0);
  CHECK(G.at(0, 1) == 7.0);
  CHECK(G.at(1, 0) == 7.0);
  CHECK(G.at(1, 1) == 10.0);
  CHECK(G.at(0, 1) == G.at(1, 0));
}

TEST_CASE("add_scaled_identity shifts the diagonal only") {
  Matrix A(2, 2);
  A.at(0, 1) = 3.0;
  Matrix B = add_scaled_identity(A, 0.25);
  CHECK(B.at(0, 0) == 0.25);
  CHECK(B.at(1, 1) == 0.25);
  CHECK(B.at(0, 1) == 3.0);
  CHECK(B.at(1, 0) == 0.0);
}

TEST_CASE("cholesky_solve matches a hand-inverted 2x2 system") {
  Matrix A(2, 2);
  A.at(0, 0) = 4.0;
  A.at(0, 1) = 2.0;
  A.at(1, 0) = 2.0;
  A.at(1, 1) = 3.0;
  // inv(A) = (1/8) [[3,-2],[-2,4]], b = [1,2] -> x = [-1/8, 3/4]
  Vec x = cholesky_solve(A, {1.0, 2.0});
  CHECK(x[0] == doctest::Approx(-0.125).epsilon(1e-14));
  CHECK(x[1] == doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("cholesky_solve rejects indefinite matrices") {
  Matrix A(2, 2);
  A.at(0, 0) = 1.0;
  A.at(0, 1) = 2.0;
  A.at(1, 0) = 2.0;
  A.at(1, 1) = 1.0;  // eigenvalues 3 and -1
  CHECK_THROWS_AS(cholesky_solve(A, {1.0, 1.0}), std::invalid_argument);
}

TEST_CASE("power iteration finds the top eigenvalue of a PSD matrix") {
  Matrix D(3, 3);
  D.at(0, 0) = 2.0;
  D.at(1, 1) = 7.0;
  D.at(2, 2) = 1.0;
  PowerIterResult r = largest_eigenvalue_psd(D, 1e-12, 10000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(7.0).epsilon(1e-9));

  Matrix R(2, 2);  // [[3,1],[1,3]]: eigenvalues 4 and 2
  R.at(0, 0) = 3.0;
  R.at(0, 1) = 1.0;
  R.at(1, 0) = 1.0;
  R.at(1, 1) = 3.0;
  PowerIterResult s = largest_eigenvalue_psd(R, 1e-12, 10000);
  CHECK(s.converged);
  CHECK(s.value == doctest::Approx(4.0).epsilon(1e-9));
  CHECK(s.iterations > 0);
}

TEST_CASE("spectral norm handles negative dominant eigenvalues") {
  Matrix M(2, 2);
  M.at(0, 0) = -5.0;
  M.at(1, 1) = 2.0;
  PowerIterResult r = spectral_norm_sym(M, 1e-12, 10000);
  CHECK(r.converged);
  CHECK(r.value == doctest::Approx(5.0).epsilon(1e-9));

  Matrix F(2, 2);  // [[0,1],[1,0]]: eigenvalues +-1
  F.at(0, 1) = 1.0;
  F.at(1, 0) = 1.0;
  PowerIterResult s = spectral_norm_sym(F, 1e-12, 10000);
  CHECK(s.converged);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("spectral norm of the zero matrix is zero") {
  Matrix Z(3, 3);
  PowerIterResult r = spectral_norm_sym(Z, 1e-12, 1000);
  CHECK(r.value == doctest::Approx(0.0));
}

}  // TEST_SUITE
