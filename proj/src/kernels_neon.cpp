#include "kernels_detail.hpp"

#if SLIDEOPT_KERNELS_NEON

#include <arm_neon.h>

// NEON variants, 2 doubles per lane.  aarch64 NEON is baseline so there is no
// runtime check beyond compiling for the architecture.

namespace slideopt {
namespace kernels {
namespace detail {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    acc = vfmaq_f64(acc, vld1q_f64(x + i), vld1q_f64(y + i));
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

double nrm2sq_neon(const double* x, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t xv = vld1q_f64(x + i);
    acc = vfmaq_f64(acc, xv, xv);
  }
  double sum = vaddvq_f64(acc);
  for (; i < n; ++i) sum += x[i] * x[i];
  return sum;
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t yv = vfmaq_f64(vld1q_f64(y + i), av, vld1q_f64(x + i));
    vst1q_f64(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void axpby_neon(double a, const double* x, double b, double* y, std::size_t n) {
  float64x2_t av = vdupq_n_f64(a);
  float64x2_t bv = vdupq_n_f64(b);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    float64x2_t yv = vmulq_f64(bv, vld1q_f64(y + i));
    yv = vfmaq_f64(yv, av, vld1q_f64(x + i));
    vst1q_f64(y + i, yv);
  }
  for (; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scal_neon(double a, double* x, std::size_t n) {
  float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    vst1q_f64(x + i, vmulq_f64(av, vld1q_f64(x + i)));
  }
  for (; i < n; ++i) x[i] *= a;
}

}  // namespace

const Ops& neon_table() {
  static const Ops table = {dot_neon, nrm2sq_neon, axpy_neon, axpby_neon,
                            scal_neon};
  return table;
}

}  // namespace detail
}  // namespace kernels
}  // namespace slideopt

#endif  // SLIDEOPT_KERNELS_NEON
