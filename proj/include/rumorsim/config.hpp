#pragma once

// JSON documents for simulation configs and experiment specs. The schema is
// described in docs/formats.md. Unknown keys are rejected.

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "rumorsim/engine.hpp"

namespace rumorsim {

struct PersonaRegime {
  std::string label;
  RosterSpec roster;
};

struct NetworkChoice {
  std::string label;
  GraphSpec graph;
};

struct ExperimentSpec {
  SimulationConfig base;
  // Sweep axes. An empty axis keeps the base value and adds nothing to labels.
  std::vector<InitStrategy> init_strategies;
  std::vector<ActivationStrategy> activation_strategies;
  std::vector<PersonaRegime> personas;
  std::vector<NetworkChoice> networks;
  std::vector<std::uint64_t> master_seeds;
  std::filesystem::path output_dir = "out";
  std::size_t workers = 1;
};

struct SweepCell {
  std::string label;
  SimulationConfig config;
};

std::string_view to_string(GraphSpec::Kind kind) noexcept;
GraphSpec::Kind parse_graph_kind(std::string_view name);

/// Relative paths inside the document resolve against `base_dir`.
ExperimentSpec parse_experiment(std::string_view json_text, const std::filesystem::path& base_dir = {});
ExperimentSpec load_experiment(const std::filesystem::path& path);

/// Canonical JSON for a single simulation config (stable key order).
std::string config_json(const SimulationConfig& config);

/// Product of the non-empty axis lengths.
std::size_t sweep_size(const ExperimentSpec& spec);

/// Cartesian expansion, in axis order init, activation, persona, network, seed.
std::vector<SweepCell> expand(const ExperimentSpec& spec);

}  // namespace rumorsim
