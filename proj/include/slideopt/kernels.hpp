#ifndef SLIDEOPT_KERNELS_HPP
#define SLIDEOPT_KERNELS_HPP

#include <cstddef>

// Dense double-precision kernels used by every solver loop.
// A scalar reference implementation always exists; SIMD variants
// (AVX2 on x86-64, NEON on aarch64) are selected once at startup so a
// whole run uses one implementation and traces stay deterministic.
// SIMD reductions accumulate in a different order than the reference,
// so equality against scalar is up to rounding, not bitwise.

namespace slideopt {
namespace kernels {

enum class Isa { scalar, avx2, neon };

struct Ops {
  double (*dot)(const double* x, const double* y, std::size_t n);
  double (*nrm2sq)(const double* x, std::size_t n);
  // y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = a * x + b * y
  void (*axpby)(double a, const double* x, double b, double* y, std::size_t n);
  // x *= a
  void (*scal)(double a, double* x, std::size_t n);
};

// Kernel set picked at first use: env SLIDEOPT_KERNELS=scalar|avx2|neon
// forces a set (silently falling back to scalar if unavailable), otherwise
// the best set the CPU supports wins.
const Ops& active_ops();
Isa active_isa();

const Ops& reference_ops();            // scalar, always available
const Ops* ops_for(Isa isa);           // nullptr if not built/supported
bool isa_available(Isa isa);
const char* isa_name(Isa isa);

}  // namespace kernels
}  // namespace slideopt

#endif  // SLIDEOPT_KERNELS_HPP
