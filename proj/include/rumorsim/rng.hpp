#pragma once

// Portable seeded random streams.
//
// The generator is xoshiro256** seeded through SplitMix64. All derived
// quantities (bounded integers, unit doubles) are computed here instead of
// through <random> distributions, whose output is implementation-defined.

#include <cstdint>
#include <string_view>

namespace rumorsim {

/// One step of SplitMix64; advances `state` and returns the mixed output.
std::uint64_t splitmix64(std::uint64_t& state) noexcept;

/// 64-bit FNV-1a over the bytes of `text`.
std::uint64_t fnv1a64(std::string_view text) noexcept;

/// Seed of the stream named `label` under `master`. Streams with different
/// labels are independent, so adding draws to one never shifts another.
std::uint64_t derive_seed(std::uint64_t master, std::string_view label) noexcept;

class Rng {
 public:
  explicit Rng(std::uint64_t seed = 0) noexcept;

  std::uint64_t next() noexcept;

  /// Uniform double in [0, 1) with 53 bits of precision.
  double uniform01() noexcept;

  /// Uniform integer in [0, bound). `bound` must be non-zero.
  std::uint64_t uniform_below(std::uint64_t bound) noexcept;

  /// Uniform integer in [lo, hi].
  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) noexcept;

  bool bernoulli(double p) noexcept { return uniform01() < p; }

 private:
  std::uint64_t s_[4];
};

/// Convenience: the generator for stream `label` under `master`.
inline Rng stream(std::uint64_t master, std::string_view label) noexcept {
  return Rng(derive_seed(master, label));
}

}  // namespace rumorsim
