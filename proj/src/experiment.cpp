#include "rumorsim/experiment.hpp"

#include <atomic>
#include <chrono>
#include <ctime>
#include <fstream>
#include <json.hpp>
#include <mutex>
#include <thread>

#include "rumorsim/error.hpp"
#include "rumorsim/metrics.hpp"

namespace rumorsim {

namespace fs = std::filesystem;

namespace {

std::string utc_now() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

void write_file(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".part";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot write " + tmp.string());
    out << content;
    if (!out) throw IoError("write failed for " + tmp.string());
  }
  fs::rename(tmp, path);
}

}  // namespace

CellOutcome run_cell(const SweepCell& cell, const fs::path& dir, bool resume) {
  CellOutcome outcome;
  outcome.label = cell.label;
  const fs::path trace_path = dir / (cell.label + ".trace.jsonl");
  const fs::path summary_path = dir / (cell.label + ".summary.json");
  const fs::path timing_path = dir / (cell.label + ".timing.json");

  if (resume && fs::exists(summary_path) && fs::exists(trace_path)) {
    outcome.reused = true;
    outcome.ok = true;
    return outcome;
  }

  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  const fs::path partial = trace_path.string() + ".part";
  try {
    fs::create_directories(dir);
    fs::remove(summary_path);
    auto backend = make_backend(cell.config.backend);
    SimulationTrace trace;
    {
      std::ofstream out(partial, std::ios::binary | std::ios::trunc);
      if (!out) throw IoError("cannot write " + partial.string());
      TraceWriter writer(out);
      trace = run(cell.config, *backend, &writer);
    }
    fs::rename(partial, trace_path);
    write_file(summary_path, summary_json(trace, cell.config.belief_threshold));
    outcome.ok = true;
  } catch (const std::exception& e) {
    outcome.error = e.what();
    std::error_code ec;
    // Keep the partial trace (it ends with an "aborted" record) for inspection.
    if (fs::exists(partial, ec)) fs::rename(partial, trace_path, ec);
  }
  outcome.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  nlohmann::json timing{{"label", cell.label},
                        {"started", started},
                        {"seconds", outcome.seconds},
                        {"ok", outcome.ok}};
  if (!outcome.ok) timing["error"] = outcome.error;
  try {
    write_file(timing_path, timing.dump(2) + "\n");
  } catch (const std::exception&) {
    // Timing data is advisory.
  }
  return outcome;
}

std::vector<CellOutcome> run_sweep(const ExperimentSpec& spec, const SweepOptions& options) {
  const auto cells = expand(spec);
  std::vector<CellOutcome> outcomes(cells.size());
  const std::size_t workers =
      std::max<std::size_t>(1, std::min(cells.size(), options.workers ? options.workers : spec.workers));
  std::atomic<std::size_t> next{0};
  std::mutex report;
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      outcomes[i] = run_cell(cells[i], spec.output_dir, options.resume);
      if (options.on_cell) {
        std::lock_guard lock(report);
        options.on_cell(outcomes[i]);
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  return outcomes;
}

}  // namespace rumorsim
