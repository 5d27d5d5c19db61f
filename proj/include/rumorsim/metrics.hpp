#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rumorsim/beliefs.hpp"
#include "rumorsim/trace.hpp"

namespace rumorsim {

struct SeriesPoint {
  std::uint64_t iteration = 0;
  double fraction = 0.0;
  bool operator==(const SeriesPoint&) const = default;
};

/// Affected fraction over time, one list per rumor starting at t = 0.
struct AffectedSeries {
  std::vector<std::string> rumors;
  std::vector<std::vector<SeriesPoint>> points;
};

struct MaxAffected {
  double fraction = 0.0;
  std::uint64_t iteration = 0;  ///< earliest iteration reaching the maximum
  bool operator==(const MaxAffected&) const = default;
};

/// Rows are configuration labels, columns rumors, cells max affected fractions.
struct ComparisonMatrix {
  std::vector<std::string> rows;
  std::vector<std::string> rumors;
  std::vector<std::vector<double>> cells;
};

struct LabeledTrace {
  std::string label;
  const SimulationTrace* trace = nullptr;
};

/// |{i : B[i][j] >= threshold}| / N. Throws ParameterError unless 0 < threshold <= 1.
double affected_fraction(const BeliefMatrix& beliefs, std::size_t rumor, double threshold);

/// Beliefs rebuilt from the trace's step deltas.
BeliefMatrix replay_beliefs(const SimulationTrace& trace);

MaxAffected max_affected(const SimulationTrace& trace, std::size_t rumor, double threshold);
std::vector<MaxAffected> max_affected_all(const SimulationTrace& trace, double threshold);

AffectedSeries build_series(const SimulationTrace& trace, double threshold);

/// Throws AggregationError when the traces disagree on the rumor list.
ComparisonMatrix aggregate_matrix(std::span<const LabeledTrace> traces, double threshold);

/// Long format: config,rumor,iteration,fraction (rumor is 1-based).
void write_series_csv(std::ostream& out, const std::string& config, const AffectedSeries& series,
                      bool with_header = true);
/// config,rumor_1,...,rumor_L
void write_matrix_csv(std::ostream& out, const ComparisonMatrix& matrix);
/// Fixed-width text table with percentages.
void write_matrix_table(std::ostream& out, const ComparisonMatrix& matrix);

/// Per-run summary document (see docs/formats.md).
std::string summary_json(const SimulationTrace& trace, double threshold);

/// 0.8333 -> "83.3"
std::string format_percent(double fraction);

}  // namespace rumorsim
