#include "rumorsim/beliefs.hpp"

#include <string>

#include "rumorsim/error.hpp"

namespace rumorsim {

BeliefMatrix::BeliefMatrix(std::size_t agents, std::size_t rumors)
    : agents_(agents), rumors_(rumors), values_(agents * rumors, 0.0) {}

double BeliefMatrix::at(std::size_t agent, std::size_t rumor) const {
  if (agent >= agents_ || rumor >= rumors_) throw ParameterError("belief index out of range");
  return values_[rumor * agents_ + agent];
}

void BeliefMatrix::set(std::size_t agent, std::size_t rumor, double value) {
  if (agent >= agents_ || rumor >= rumors_) throw ParameterError("belief index out of range");
  if (!(value >= 0.0 && value <= 1.0)) {
    throw ParameterError("belief " + std::to_string(value) + " outside [0, 1]");
  }
  values_[rumor * agents_ + agent] = value;
}

std::span<const double> BeliefMatrix::rumor_column(std::size_t rumor) const {
  if (rumor >= rumors_) throw ParameterError("rumor index out of range");
  return {values_.data() + rumor * agents_, agents_};
}

std::vector<double> BeliefMatrix::agent_row(std::size_t agent) const {
  std::vector<double> row(rumors_);
  for (std::size_t j = 0; j < rumors_; ++j) row[j] = at(agent, j);
  return row;
}

}  // namespace rumorsim
