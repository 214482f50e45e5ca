#include <cstdlib>
#include <string_view>

#include "wnf/simd/kernels.hpp"

namespace wnf::simd {

#if defined(WNF_HAVE_AVX2)
const KernelTable* avx2_kernels_unchecked();
#endif
#if defined(WNF_HAVE_NEON)
const KernelTable* neon_kernels_unchecked();
#endif

const KernelTable* avx2_kernels() {
#if defined(WNF_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? avx2_kernels_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_kernels() {
#if defined(WNF_HAVE_NEON)
  // Advanced SIMD is mandatory on aarch64.
  return neon_kernels_unchecked();
#else
  return nullptr;
#endif
}

namespace {

const KernelTable& select() {
  const char* env = std::getenv("WNF_SIMD");
  const std::string_view want = env ? env : "auto";
  if (want == "scalar") return scalar_kernels();
  if (want == "avx2" || want == "auto") {
    if (const auto* t = avx2_kernels()) return *t;
  }
  if (want == "neon" || want == "auto") {
    if (const auto* t = neon_kernels()) return *t;
  }
  return scalar_kernels();
}

}  // namespace

const KernelTable& kernels() {
  static const KernelTable& active = select();
  return active;
}

}  // namespace wnf::simd
