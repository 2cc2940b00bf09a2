#include "kernels_detail.hpp"

// Reference kernels.  Plain left-to-right loops; every other implementation
// is tested against these.

namespace slideopt {
namespace kernels {
namespace detail {
namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * y[i];
  return acc;
}

double nrm2sq_scalar(const double* x, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += x[i] * x[i];
  return acc;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void axpby_scalar(double a, const double* x, double b, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = a * x[i] + b * y[i];
}

void scal_scalar(double a, double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) x[i] *= a;
}

}  // namespace

const Ops& scalar_table() {
  static const Ops table = {dot_scalar, nrm2sq_scalar, axpy_scalar,
                            axpby_scalar, scal_scalar};
  return table;
}

}  // namespace detail
}  // namespace kernels
}  // namespace slideopt
