#ifndef SLIDEOPT_KERNELS_DETAIL_HPP
#define SLIDEOPT_KERNELS_DETAIL_HPP

#include "slideopt/kernels.hpp"

// Internal: per-ISA tables live in separate translation units so each can be
// compiled with its own target flags.  availability is a compile-time fact,
// support is the runtime CPU check.

namespace slideopt {
namespace kernels {
namespace detail {

const Ops& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
#define SLIDEOPT_KERNELS_X86 1
const Ops& avx2_table();
bool avx2_supported();
#else
#define SLIDEOPT_KERNELS_X86 0
#endif

#if defined(__aarch64__)
#define SLIDEOPT_KERNELS_NEON 1
const Ops& neon_table();
#else
#define SLIDEOPT_KERNELS_NEON 0
#endif

}  // namespace detail
}  // namespace kernels
}  // namespace slideopt

#endif  // SLIDEOPT_KERNELS_DETAIL_HPP
