#include <bit>

#include "rumorsim/kernels/kernels.hpp"

namespace rumorsim::kernels {

namespace {

std::uint64_t and_popcount_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                  std::size_t words) noexcept {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::size_t count_at_least_scalar(const double* values, std::size_t n, double threshold) noexcept {
  std::size_t count = 0;
  for (std::size_t i = 0; i < n; ++i) count += values[i] >= threshold ? 1 : 0;
  return count;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
  static constexpr KernelTable table{"scalar", &and_popcount_scalar, &count_at_least_scalar};
  return table;
}

}  // namespace rumorsim::kernels
