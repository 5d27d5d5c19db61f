// AArch64 variant; NEON is part of the base ISA there, so no runtime probe.

#include <arm_neon.h>

#include "rumorsim/kernels/kernels.hpp"

namespace rumorsim::kernels::detail {

namespace {

std::uint64_t and_popcount_neon(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words) noexcept {
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= words; i += 2) {
    const uint8x16_t bytes = vreinterpretq_u8_u64(vandq_u64(vld1q_u64(a + i), vld1q_u64(b + i)));
    acc = vaddq_u64(acc, vpaddlq_u32(vpaddlq_u16(vpaddlq_u8(vcntq_u8(bytes)))));
  }
  std::uint64_t total = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < words; ++i) total += static_cast<std::uint64_t>(__builtin_popcountll(a[i] & b[i]));
  return total;
}

std::size_t count_at_least_neon(const double* values, std::size_t n, double threshold) noexcept {
  const float64x2_t t = vdupq_n_f64(threshold);
  uint64x2_t acc = vdupq_n_u64(0);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    // Compare yields all-ones lanes; shifting right by 63 turns them into 1.
    acc = vaddq_u64(acc, vshrq_n_u64(vcgeq_f64(vld1q_f64(values + i), t), 63));
  }
  std::size_t count = vgetq_lane_u64(acc, 0) + vgetq_lane_u64(acc, 1);
  for (; i < n; ++i) count += values[i] >= threshold ? 1 : 0;
  return count;
}

}  // namespace

const KernelTable& neon_table_unchecked() noexcept {
  static constexpr KernelTable table{"neon", &and_popcount_neon, &count_at_least_neon};
  return table;
}

}  // namespace rumorsim::kernels::detail
