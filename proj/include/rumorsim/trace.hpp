#pragma once

// Simulation traces: in-memory records plus the line-delimited JSON form.
//
// File layout, one JSON object per line:
//   {"type":"header","schema":"rumorsim-trace","version":1,...}
//   {"type":"seed","rumor":j,"agent":i}                 one per seeded post
//   {"type":"step","iteration":t,...}                   one per iteration
//   {"type":"final","beliefs":[[...],...]}              row-major N×L
// A run stopped by an error ends with {"type":"aborted",...} instead.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rumorsim/beliefs.hpp"
#include "rumorsim/graph.hpp"
#include "rumorsim/response.hpp"

namespace rumorsim {

using AgentId = NodeId;

inline constexpr int kTraceVersion = 1;

struct TraceHeader {
  std::string label;
  std::size_t agents = 0;
  std::vector<std::string> agent_names;
  std::vector<std::string> rumors;
  std::uint64_t iterations = 0;
  std::uint64_t master_seed = 0;
  double belief_threshold = 0.5;
  std::string init_strategy;
  std::string activation_strategy;
  std::string backend;
  bool operator==(const TraceHeader&) const = default;
};

struct SeedRecord {
  std::size_t rumor = 0;
  AgentId agent = 0;
  bool operator==(const SeedRecord&) const = default;
};

struct BeliefDelta {
  std::size_t rumor = 0;
  double before = 0.0;
  double after = 0.0;
  bool operator==(const BeliefDelta&) const = default;
};

enum class StepStatus { Ok, Skipped };

struct StepRecord {
  std::uint64_t iteration = 0;
  AgentId agent = 0;
  std::string prompt_hash;
  StepStatus status = StepStatus::Ok;
  std::string post;
  std::vector<bool> checks;
  std::vector<BeliefDelta> deltas;
  std::vector<ConsistencyWarning> warnings;
  std::size_t backend_calls = 0;
  std::size_t visible_posts = 0;  ///< history entries shown in the prompt
  std::string error;              ///< parse error of a skipped step
  bool operator==(const StepRecord&) const = default;
};

struct SimulationTrace {
  TraceHeader header;
  std::vector<SeedRecord> seeds;
  std::vector<StepRecord> steps;
  BeliefMatrix final_beliefs;
  bool complete = false;
  std::string abort_reason;
  bool operator==(const SimulationTrace&) const = default;
};

/// Streams a trace as it is produced; every record is flushed.
class TraceWriter {
 public:
  explicit TraceWriter(std::ostream& out) : out_(out) {}
  void header(const TraceHeader& h);
  void seed(const SeedRecord& s);
  void step(const StepRecord& s);
  void final(const BeliefMatrix& beliefs);
  void aborted(std::uint64_t iteration, const std::string& reason);

 private:
  std::ostream& out_;
};

std::string to_jsonl(const SimulationTrace& trace);
void write_trace(std::ostream& out, const SimulationTrace& trace);
SimulationTrace read_trace(std::istream& in);
SimulationTrace read_trace(const std::filesystem::path& path);

std::string_view to_string(StepStatus s) noexcept;

}  // namespace rumorsim
