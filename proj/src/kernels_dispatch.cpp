#include <cstdlib>
#include <cstring>

#include "kernels_detail.hpp"

namespace slideopt {
namespace kernels {

namespace {

Isa pick_isa() {
  if (const char* force = std::getenv("SLIDEOPT_KERNELS")) {
    if (std::strcmp(force, "scalar") == 0) return Isa::scalar;
    if (std::strcmp(force, "avx2") == 0 && isa_available(Isa::avx2))
      return Isa::avx2;
    if (std::strcmp(force, "neon") == 0 && isa_available(Isa::neon))
      return Isa::neon;
    return Isa::scalar;  // unknown or unsupported request
  }
#if SLIDEOPT_KERNELS_X86
  if (detail::avx2_supported()) return Isa::avx2;
#endif
#if SLIDEOPT_KERNELS_NEON
  return Isa::neon;
#endif
  return Isa::scalar;
}

}  // namespace

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if SLIDEOPT_KERNELS_X86
      return detail::avx2_supported();
#else
      return false;
#endif
    case Isa::neon:
      return SLIDEOPT_KERNELS_NEON != 0;
  }
  return false;
}

const Ops* ops_for(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return &detail::scalar_table();
    case Isa::avx2:
#if SLIDEOPT_KERNELS_X86
      if (detail::avx2_supported()) return &detail::avx2_table();
#endif
      return nullptr;
    case Isa::neon:
#if SLIDEOPT_KERNELS_NEON
      return &detail::neon_table();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Isa active_isa() {
  static const Isa isa = pick_isa();
  return isa;
}

const Ops& active_ops() {
  static const Ops& ops = *ops_for(active_isa());
  return ops;
}

const Ops& reference_ops() { return detail::scalar_table(); }

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return "scalar";
    case Isa::avx2:
      return "avx2";
    case Isa::neon:
      return "neon";
  }
  return "?";
}

}  // namespace kernels
}  // namespace slideopt
