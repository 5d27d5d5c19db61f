#include "rumorsim/trace.hpp"

#include <fstream>
#include <istream>
#include <json.hpp>
#include <ostream>
#include <sstream>

#include "rumorsim/error.hpp"

namespace rumorsim {

using nlohmann::json;

namespace {

constexpr std::string_view kSchema = "rumorsim-trace";

json header_json(const TraceHeader& h) {
  return {{"type", "header"},
          {"schema", kSchema},
          {"version", kTraceVersion},
          {"label", h.label},
          {"agents", h.agents},
          {"agent_names", h.agent_names},
          {"rumors", h.rumors},
          {"iterations", h.iterations},
          {"master_seed", h.master_seed},
          {"belief_threshold", h.belief_threshold},
          {"init_strategy", h.init_strategy},
          {"activation_strategy", h.activation_strategy},
          {"backend", h.backend}};
}

json step_json(const StepRecord& s) {
  json deltas = json::array();
  for (const auto& d : s.deltas) deltas.push_back({d.rumor, d.before, d.after});
  json warnings = json::array();
  for (const auto& w : s.warnings) warnings.push_back({{"rumor", w.rumor}, {"message", w.message}});
  json j = {{"type", "step"},
            {"iteration", s.iteration},
            {"agent", s.agent},
            {"prompt_hash", s.prompt_hash},
            {"status", to_string(s.status)},
            {"backend_calls", s.backend_calls},
            {"visible_posts", s.visible_posts}};
  if (s.status == StepStatus::Ok) {
    j["post"] = s.post;
    j["checks"] = s.checks;
    j["deltas"] = std::move(deltas);
    j["warnings"] = std::move(warnings);
  } else {
    j["error"] = s.error;
  }
  return j;
}

json beliefs_json(const BeliefMatrix& b) {
  json rows = json::array();
  for (std::size_t i = 0; i < b.agents(); ++i) rows.push_back(b.agent_row(i));
  return rows;
}

StepRecord step_from_json(const json& j) {
  StepRecord s;
  s.iteration = j.at("iteration").get<std::uint64_t>();
  s.agent = j.at("agent").get<AgentId>();
  s.prompt_hash = j.at("prompt_hash").get<std::string>();
  const auto status = j.at("status").get<std::string>();
  if (status == "ok") {
    s.status = StepStatus::Ok;
  } else if (status == "skipped") {
    s.status = StepStatus::Skipped;
  } else {
    throw ParseError("trace: unknown step status '" + status + "'");
  }
  s.backend_calls = j.value("backend_calls", std::size_t{0});
  s.visible_posts = j.value("visible_posts", std::size_t{0});
  if (s.status == StepStatus::Ok) {
    s.post = j.at("post").get<std::string>();
    s.checks = j.at("checks").get<std::vector<bool>>();
    for (const auto& d : j.at("deltas")) {
      s.deltas.push_back({d.at(0).get<std::size_t>(), d.at(1).get<double>(), d.at(2).get<double>()});
    }
    for (const auto& w : j.at("warnings")) {
      s.warnings.push_back({w.at("rumor").get<std::size_t>(), w.at("message").get<std::string>()});
    }
  } else {
    s.error = j.value("error", "");
  }
  return s;
}

}  // namespace

std::string_view to_string(StepStatus s) noexcept { return s == StepStatus::Ok ? "ok" : "skipped"; }

void TraceWriter::header(const TraceHeader& h) { out_ << header_json(h).dump() << '\n' << std::flush; }

void TraceWriter::seed(const SeedRecord& s) {
  out_ << json{{"type", "seed"}, {"rumor", s.rumor}, {"agent", s.agent}}.dump() << '\n' << std::flush;
}

void TraceWriter::step(const StepRecord& s) { out_ << step_json(s).dump() << '\n' << std::flush; }

void TraceWriter::final(const BeliefMatrix& beliefs) {
  out_ << json{{"type", "final"}, {"beliefs", beliefs_json(beliefs)}}.dump() << '\n' << std::flush;
}

void TraceWriter::aborted(std::uint64_t iteration, const std::string& reason) {
  out_ << json{{"type", "aborted"}, {"iteration", iteration}, {"reason", reason}}.dump() << '\n' << std::flush;
}

void write_trace(std::ostream& out, const SimulationTrace& trace) {
  TraceWriter w(out);
  w.header(trace.header);
  for (const auto& s : trace.seeds) w.seed(s);
  for (const auto& s : trace.steps) w.step(s);
  if (trace.complete) {
    w.final(trace.final_beliefs);
  } else {
    w.aborted(trace.steps.empty() ? 0 : trace.steps.back().iteration, trace.abort_reason);
  }
}

std::string to_jsonl(const SimulationTrace& trace) {
  std::ostringstream out;
  write_trace(out, trace);
  return out.str();
}

SimulationTrace read_trace(std::istream& in) {
  SimulationTrace trace;
  bool saw_header = false;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      const json j = json::parse(line);
      const auto type = j.at("type").get<std::string>();
      if (type == "header") {
        if (j.at("schema") != kSchema) throw ParseError("trace: unexpected schema", line_no);
        if (j.at("version").get<int>() != kTraceVersion) throw ParseError("trace: unsupported version", line_no);
        auto& h = trace.header;
        h.label = j.value("label", "");
        h.agents = j.at("agents").get<std::size_t>();
        h.agent_names = j.value("agent_names", std::vector<std::string>{});
        h.rumors = j.at("rumors").get<std::vector<std::string>>();
        h.iterations = j.at("iterations").get<std::uint64_t>();
        h.master_seed = j.at("master_seed").get<std::uint64_t>();
        h.belief_threshold = j.at("belief_threshold").get<double>();
        h.init_strategy = j.value("init_strategy", "");
        h.activation_strategy = j.value("activation_strategy", "");
        h.backend = j.value("backend", "");
        saw_header = true;
      } else if (!saw_header) {
        throw ParseError("trace: record before header", line_no);
      } else if (type == "seed") {
        trace.seeds.push_back({j.at("rumor").get<std::size_t>(), j.at("agent").get<AgentId>()});
      } else if (type == "step") {
        trace.steps.push_back(step_from_json(j));
      } else if (type == "final") {
        const auto& rows = j.at("beliefs");
        BeliefMatrix b(trace.header.agents, trace.header.rumors.size());
        if (rows.size() != b.agents()) throw ParseError("trace: final belief row count mismatch", line_no);
        for (std::size_t i = 0; i < rows.size(); ++i) {
          if (rows[i].size() != b.rumors()) throw ParseError("trace: final belief column count mismatch", line_no);
          for (std::size_t r = 0; r < b.rumors(); ++r) b.set(i, r, rows[i][r].get<double>());
        }
        trace.final_beliefs = std::move(b);
        trace.complete = true;
      } else if (type == "aborted") {
        trace.abort_reason = j.value("reason", "");
      } else {
        throw ParseError("trace: unknown record type '" + type + "'", line_no);
      }
    } catch (const json::exception& e) {
      throw ParseError(std::string("trace: ") + e.what(), line_no);
    }
  }
  if (!saw_header) throw ParseError("trace: missing header");
  return trace;
}

SimulationTrace read_trace(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open trace '" + path.string() + "'");
  return read_trace(in);
}

}  // namespace rumorsim
