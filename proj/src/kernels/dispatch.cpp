#include <cstdlib>
#include <string_view>

#include "rumorsim/kernels/kernels.hpp"

namespace rumorsim::kernels {

namespace detail {
#if defined(RUMORSIM_HAVE_AVX2)
const KernelTable& avx2_table_unchecked() noexcept;
#endif
#if defined(RUMORSIM_HAVE_NEON)
const KernelTable& neon_table_unchecked() noexcept;
#endif
}  // namespace detail

const KernelTable* avx2_table() noexcept {
#if defined(RUMORSIM_HAVE_AVX2)
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("popcnt");
  }();
  return supported ? &detail::avx2_table_unchecked() : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable* neon_table() noexcept {
#if defined(RUMORSIM_HAVE_NEON)
  return &detail::neon_table_unchecked();
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept {
  static const KernelTable& chosen = []() -> const KernelTable& {
    const char* forced = std::getenv("RUMORSIM_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_table();
    if (const auto* t = avx2_table()) return *t;
    if (const auto* t = neon_table()) return *t;
    return scalar_table();
  }();
  return chosen;
}

}  // namespace rumorsim::kernels
