#pragma once

// Data-parallel inner loops used by the graph statistics and the metrics.
//
// Every kernel has a scalar reference implementation. SIMD variants (AVX2 on
// x86-64, NEON on AArch64) are compiled when the toolchain supports them and
// picked at runtime after probing the CPU. RUMORSIM_KERNELS=scalar in the
// environment forces the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace rumorsim::kernels {

struct KernelTable {
  std::string_view name;
  /// popcount(a[i] & b[i]) summed over `words` 64-bit words.
  std::uint64_t (*and_popcount)(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words) noexcept;
  /// Number of entries with value >= threshold. NaN never counts.
  std::size_t (*count_at_least)(const double* values, std::size_t n,
                                double threshold) noexcept;
};

const KernelTable& scalar_table() noexcept;

/// Null when the variant is not compiled in or the CPU lacks the extension.
const KernelTable* avx2_table() noexcept;
const KernelTable* neon_table() noexcept;

/// The table selected for this process (resolved once, thread-safe).
const KernelTable& active() noexcept;

inline std::uint64_t and_popcount(std::span<const std::uint64_t> a,
                                  std::span<const std::uint64_t> b) noexcept {
  const std::size_t words = a.size() < b.size() ? a.size() : b.size();
  return active().and_popcount(a.data(), b.data(), words);
}

inline std::size_t count_at_least(std::span<const double> values, double threshold) noexcept {
  return active().count_at_least(values.data(), values.size(), threshold);
}

}  // namespace rumorsim::kernels
