#include "rumorsim/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <json.hpp>
#include <ostream>

#include "rumorsim/error.hpp"
#include "rumorsim/kernels/kernels.hpp"

namespace rumorsim {

namespace {

void check_threshold(double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) throw ParameterError("threshold must lie in (0, 1]");
}

std::string fixed6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

// Walks the trace keeping per-rumor believer counts, calling visit(t, counts)
// at t = 0 and after every step.
template <typename Visit>
void walk_counts(const SimulationTrace& trace, double threshold, Visit&& visit) {
  const std::size_t rumors = trace.header.rumors.size();
  std::vector<std::size_t> counts(rumors, 0);
  visit(std::uint64_t{0}, counts);
  for (const auto& s : trace.steps) {
    for (const auto& d : s.deltas) {
      if (d.rumor >= rumors) throw AggregationError("step delta names rumor " + std::to_string(d.rumor));
      const bool was = d.before >= threshold;
      const bool is = d.after >= threshold;
      if (is && !was) ++counts[d.rumor];
      if (was && !is) --counts[d.rumor];
    }
    visit(s.iteration, counts);
  }
}

}  // namespace

double affected_fraction(const BeliefMatrix& beliefs, std::size_t rumor, double threshold) {
  check_threshold(threshold);
  if (beliefs.agents() == 0) return 0.0;
  const auto hits = kernels::count_at_least(beliefs.rumor_column(rumor), threshold);
  return static_cast<double>(hits) / static_cast<double>(beliefs.agents());
}

BeliefMatrix replay_beliefs(const SimulationTrace& trace) {
  BeliefMatrix b(trace.header.agents, trace.header.rumors.size());
  for (const auto& s : trace.steps) {
    for (const auto& d : s.deltas) b.set(s.agent, d.rumor, d.after);
  }
  return b;
}

std::vector<MaxAffected> max_affected_all(const SimulationTrace& trace, double threshold) {
  check_threshold(threshold);
  const std::size_t rumors = trace.header.rumors.size();
  const double n = static_cast<double>(std::max<std::size_t>(trace.header.agents, 1));
  std::vector<std::size_t> best(rumors, 0);
  std::vector<MaxAffected> out(rumors);
  walk_counts(trace, threshold, [&](std::uint64_t t, const std::vector<std::size_t>& counts) {
    for (std::size_t j = 0; j < rumors; ++j) {
      if (t == 0 || counts[j] > best[j]) {
        best[j] = counts[j];
        out[j] = {static_cast<double>(counts[j]) / n, t};
      }
    }
  });
  return out;
}

MaxAffected max_affected(const SimulationTrace& trace, std::size_t rumor, double threshold) {
  const auto all = max_affected_all(trace, threshold);
  if (rumor >= all.size()) throw ParameterError("rumor index out of range");
  return all[rumor];
}

AffectedSeries build_series(const SimulationTrace& trace, double threshold) {
  check_threshold(threshold);
  const std::size_t rumors = trace.header.rumors.size();
  const double n = static_cast<double>(std::max<std::size_t>(trace.header.agents, 1));
  AffectedSeries series;
  series.rumors = trace.header.rumors;
  series.points.resize(rumors);
  for (auto& p : series.points) p.reserve(trace.steps.size() + 1);
  walk_counts(trace, threshold, [&](std::uint64_t t, const std::vector<std::size_t>& counts) {
    for (std::size_t j = 0; j < rumors; ++j) {
      series.points[j].push_back({t, static_cast<double>(counts[j]) / n});
    }
  });
  return series;
}

ComparisonMatrix aggregate_matrix(std::span<const LabeledTrace> traces, double threshold) {
  check_threshold(threshold);
  ComparisonMatrix m;
  if (traces.empty()) return m;
  m.rumors = traces.front().trace->header.rumors;
  for (const auto& lt : traces) {
    if (lt.trace->header.rumors != m.rumors) {
      throw AggregationError("trace '" + lt.label + "' has a different rumor list");
    }
    m.rows.push_back(lt.label);
    std::vector<double> row;
    for (const auto& ma : max_affected_all(*lt.trace, threshold)) row.push_back(ma.fraction);
    m.cells.push_back(std::move(row));
  }
  return m;
}

void write_series_csv(std::ostream& out, const std::string& config, const AffectedSeries& series,
                      bool with_header) {
  if (with_header) out << "config,rumor,iteration,fraction\n";
  for (std::size_t j = 0; j < series.points.size(); ++j) {
    for (const auto& p : series.points[j]) {
      out << config << ',' << (j + 1) << ',' << p.iteration << ',' << fixed6(p.fraction) << '\n';
    }
  }
}

void write_matrix_csv(std::ostream& out, const ComparisonMatrix& m) {
  out << "config";
  for (std::size_t j = 0; j < m.rumors.size(); ++j) out << ",rumor_" << (j + 1);
  out << '\n';
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    out << m.rows[r];
    for (double v : m.cells[r]) out << ',' << fixed6(v);
    out << '\n';
  }
}

void write_matrix_table(std::ostream& out, const ComparisonMatrix& m) {
  std::size_t width = 6;
  for (const auto& r : m.rows) width = std::max(width, r.size());
  auto pad = [](std::string s, std::size_t w) {
    if (s.size() < w) s.insert(0, w - s.size(), ' ');
    return s;
  };
  out << pad("config", width);
  for (std::size_t j = 0; j < m.rumors.size(); ++j) out << "  " << pad("#" + std::to_string(j + 1), 6);
  out << '\n';
  for (std::size_t r = 0; r < m.rows.size(); ++r) {
    out << pad(m.rows[r], width);
    for (double v : m.cells[r]) out << "  " << pad(format_percent(v), 6);
    out << '\n';
  }
}

std::string summary_json(const SimulationTrace& trace, double threshold) {
  nlohmann::json j;
  j["schema"] = "rumorsim-summary";
  j["version"] = 1;
  j["label"] = trace.header.label;
  j["agents"] = trace.header.agents;
  j["iterations"] = trace.steps.size();
  j["complete"] = trace.complete;
  j["threshold"] = threshold;
  std::size_t skipped = 0;
  std::size_t warnings = 0;
  for (const auto& s : trace.steps) {
    skipped += s.status == StepStatus::Skipped;
    warnings += s.warnings.size();
  }
  j["skipped_steps"] = skipped;
  j["consistency_warnings"] = warnings;
  const auto maxima = max_affected_all(trace, threshold);
  nlohmann::json rumors = nlohmann::json::array();
  for (std::size_t r = 0; r < maxima.size(); ++r) {
    const double final_fraction =
        trace.complete ? affected_fraction(trace.final_beliefs, r, threshold) : 0.0;
    rumors.push_back({{"rumor", r + 1},
                      {"text", trace.header.rumors[r]},
                      {"max_affected", maxima[r].fraction},
                      {"max_iteration", maxima[r].iteration},
                      {"final_affected", final_fraction}});
  }
  j["rumors"] = std::move(rumors);
  return j.dump(2) + "\n";
}

std::string format_percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
  return buf;
}

}  // namespace rumorsim
