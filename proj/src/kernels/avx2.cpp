// Compiled with -mavx2 -mpopcnt; only reached after a runtime CPU probe.

#include <immintrin.h>

#include <bit>

#include "rumorsim/kernels/kernels.hpp"

namespace rumorsim::kernels::detail {

namespace {

// Nibble-lookup popcount of each byte, summed into four 64-bit lanes.
inline __m256i popcount_lanes(__m256i v) noexcept {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts =
      _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

std::uint64_t and_popcount_avx2(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t words) noexcept {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(va, vb)));
  }
  alignas(32) std::uint64_t lanes[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes), acc);
  std::uint64_t total = lanes[0] + lanes[1] + lanes[2] + lanes[3];
  for (; i < words; ++i) total += static_cast<std::uint64_t>(_mm_popcnt_u64(a[i] & b[i]));
  return total;
}

std::size_t count_at_least_avx2(const double* values, std::size_t n, double threshold) noexcept {
  const __m256d t = _mm256_set1_pd(threshold);
  std::size_t count = 0;
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    // Ordered, non-signalling compare: NaN lanes are false.
    const __m256d ge = _mm256_cmp_pd(_mm256_loadu_pd(values + i), t, _CMP_GE_OQ);
    count += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(_mm256_movemask_pd(ge))));
  }
  for (; i < n; ++i) count += values[i] >= threshold ? 1 : 0;
  return count;
}

}  // namespace

const KernelTable& avx2_table_unchecked() noexcept {
  static constexpr KernelTable table{"avx2", &and_popcount_avx2, &count_at_least_avx2};
  return table;
}

}  // namespace rumorsim::kernels::detail
