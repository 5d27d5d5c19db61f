#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "rumorsim/backend.hpp"
#include "rumorsim/beliefs.hpp"
#include "rumorsim/graph.hpp"
#include "rumorsim/persona.hpp"
#include "rumorsim/rng.hpp"
#include "rumorsim/text.hpp"
#include "rumorsim/trace.hpp"

namespace rumorsim {

enum class InitStrategy { Random, DegreeBased };
enum class ActivationStrategy { Uniform, DegreeProportional };
enum class ParseErrorPolicy { RetryOnceThenSkip, Abort };

std::string_view to_string(InitStrategy s) noexcept;
std::string_view to_string(ActivationStrategy s) noexcept;
std::string_view to_string(ParseErrorPolicy p) noexcept;
InitStrategy parse_init_strategy(std::string_view name);
ActivationStrategy parse_activation_strategy(std::string_view name);
ParseErrorPolicy parse_error_policy(std::string_view name);

struct GraphSpec {
  enum class Kind { ErdosRenyi, ScaleFree, SmallWorld, File };
  Kind kind = Kind::ScaleFree;
  std::size_t n = 100;
  double p = 0.08;
  std::size_t m = 4;
  std::size_t k = 4;
  double beta = 0.3;
  std::filesystem::path file;
  /// Generator seed; derived from the master seed when absent.
  std::optional<std::uint64_t> seed;
  bool operator==(const GraphSpec&) const = default;
};

struct RosterSpec {
  /// Persona document; when absent a roster is generated.
  std::optional<std::filesystem::path> file;
  ScalePolicy acceptance = ScalePolicy::uniform();
  ScalePolicy spread = ScalePolicy::uniform();
  bool operator==(const RosterSpec&) const = default;
};

struct SimulationConfig {
  GraphSpec graph;
  RosterSpec roster;
  std::vector<std::string> rumors;
  std::uint64_t iterations = 500;
  InitStrategy init_strategy = InitStrategy::Random;
  ActivationStrategy activation_strategy = ActivationStrategy::Uniform;
  std::size_t seeds_per_rumor = 1;
  double belief_threshold = 0.5;
  BackendConfig backend;
  std::uint64_t master_seed = 0;
  ParseErrorPolicy on_parse_error = ParseErrorPolicy::RetryOnceThenSkip;
  std::size_t filler_posts_per_agent = 2;
  bool shuffle_personas = true;
  /// Show only the newest K posts in the prompt; 0 shows the full history.
  std::size_t history_window = 0;
  std::string label;
};

/// The four rumors used in the reference experiments.
std::vector<std::string> default_rumors();

/// Fails with ConfigError on inconsistent settings.
void validate(const SimulationConfig& config);

Graph build_graph(const GraphSpec& spec, std::uint64_t master_seed);
std::vector<Persona> build_roster(const RosterSpec& spec, std::size_t agents, std::uint64_t master_seed);

struct Post {
  AgentId author = 0;
  std::string text;
  std::uint64_t iteration = 0;  ///< 0 for posts placed before the first step
};

struct Agent {
  Persona persona;
  std::vector<AgentId> friends;  ///< graph neighbors, ascending
};

struct SimulationState {
  Graph graph;
  std::vector<Agent> agents;
  std::vector<std::string> rumors;
  MentionDetector detector{std::vector<std::string>{}};
  std::vector<Post> posts;
  /// Append-only indices into `posts`, one list per agent.
  std::vector<std::vector<std::uint32_t>> histories;
  BeliefMatrix beliefs;
  std::uint64_t iteration = 0;
  Rng activation_rng;
  /// degree_prefix[i] = deg(0) + ... + deg(i).
  std::vector<std::uint64_t> degree_prefix;

  std::size_t total_history_entries() const;
};

/// Binds personas to nodes, builds friend lists, zeroes the beliefs and
/// places the neutral filler posts.
SimulationState initialize(const SimulationConfig& config, Graph graph, std::vector<Persona> roster);

/// Appends each rumor's text to the histories of its seed agents.
std::vector<SeedRecord> seed_rumors(SimulationState& state, const SimulationConfig& config);

/// Uniform: 1/N each. Degree-proportional: deg(i)/2E, uniform when E = 0.
AgentId select_agent(const SimulationState& state, ActivationStrategy strategy, Rng& rng);

/// What agent `agent` sees right now.
PromptContext build_context(const SimulationState& state, AgentId agent, const SimulationConfig& config);

/// One iteration: activate, prompt, parse, propagate, update beliefs.
StepRecord step(SimulationState& state, Backend& backend, const SimulationConfig& config);

TraceHeader make_header(const SimulationConfig& config, const SimulationState& state);

/// Full run on explicit inputs. Records are streamed to `writer` when given;
/// on an error an "aborted" record is written before the exception escapes.
SimulationTrace run(const SimulationConfig& config, Graph graph, std::vector<Persona> roster, Backend& backend,
                    TraceWriter* writer = nullptr);

/// Full run with graph and roster built from the config's specs.
SimulationTrace run(const SimulationConfig& config, Backend& backend, TraceWriter* writer = nullptr);

}  // namespace rumorsim
