#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace rumorsim {

/// N×L matrix of beliefs in [0, 1]; entry (i, j) is agent i's belief in
/// rumor j. Stored rumor-major so each rumor's column is contiguous.
class BeliefMatrix {
 public:
  BeliefMatrix() = default;
  BeliefMatrix(std::size_t agents, std::size_t rumors);

  std::size_t agents() const noexcept { return agents_; }
  std::size_t rumors() const noexcept { return rumors_; }

  double at(std::size_t agent, std::size_t rumor) const;
  /// Throws ParameterError unless 0 <= value <= 1.
  void set(std::size_t agent, std::size_t rumor, double value);

  std::span<const double> rumor_column(std::size_t rumor) const;
  std::vector<double> agent_row(std::size_t agent) const;

  bool operator==(const BeliefMatrix&) const = default;

 private:
  std::size_t agents_ = 0;
  std::size_t rumors_ = 0;
  std::vector<double> values_;
};

}  // namespace rumorsim
