#ifndef SLIDEOPT_VEC_HPP
#define SLIDEOPT_VEC_HPP

#include <cassert>
#include <cmath>
#include <vector>

#include "slideopt/kernels.hpp"

// Thin helpers over the active kernel set.  All reductions inherit the kernel
// set's fixed order, which keeps repeated runs bit-identical.

namespace slideopt {

using Vec = std::vector<double>;

inline double dot(const Vec& x, const Vec& y) {
  assert(x.size() == y.size());
  return kernels::active_ops().dot(x.data(), y.data(), x.size());
}

inline double nrm2sq(const Vec& x) {
  return kernels::active_ops().nrm2sq(x.data(), x.size());
}

inline double nrm2(const Vec& x) { return std::sqrt(nrm2sq(x)); }

// y += a * x
inline void axpy(double a, const Vec& x, Vec& y) {
  assert(x.size() == y.size());
  kernels::active_ops().axpy(a, x.data(), y.data(), x.size());
}

// y = a * x + b * y
inline void axpby(double a, const Vec& x, double b, Vec& y) {
  assert(x.size() == y.size());
  kernels::active_ops().axpby(a, x.data(), b, y.data(), x.size());
}

inline void scal(double a, Vec& x) {
  kernels::active_ops().scal(a, x.data(), x.size());
}

inline Vec zeros(std::size_t n) { return Vec(n, 0.0); }

// a * x + b * y as a fresh vector
inline Vec lincomb(double a, const Vec& x, double b, const Vec& y) {
  Vec out = y;
  axpby(a, x, b, out);
  return out;
}

inline Vec sub(const Vec& x, const Vec& y) { return lincomb(1.0, x, -1.0, y); }

inline double dist_sq(const Vec& x, const Vec& y) {
  assert(x.size() == y.size());
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double d = x[i] - y[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace slideopt

#endif  // SLIDEOPT_VEC_HPP
