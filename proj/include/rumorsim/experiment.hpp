#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "rumorsim/config.hpp"

namespace rumorsim {

struct CellOutcome {
  std::string label;
  bool reused = false;  ///< summary already present, cell not rerun
  bool ok = false;
  std::string error;
  double seconds = 0.0;
};

struct SweepOptions {
  bool resume = true;
  /// Overrides the spec's worker count when nonzero.
  std::size_t workers = 0;
  std::function<void(const CellOutcome&)> on_cell;
};

/// Files written for one cell inside `dir`:
///   <label>.trace.jsonl   full trace
///   <label>.summary.json  per-rumor maxima; written last, marks completion
///   <label>.timing.json   wall-clock data (the only nondeterministic output)
CellOutcome run_cell(const SweepCell& cell, const std::filesystem::path& dir, bool resume = true);

/// Runs every cell of the spec. Cells are independent single-threaded runs
/// spread over the worker threads. Never throws for a failing cell; the
/// error is reported in its outcome.
std::vector<CellOutcome> run_sweep(const ExperimentSpec& spec, const SweepOptions& options = {});

}  // namespace rumorsim
