#include "rumorsim/engine.hpp"

#include <algorithm>
#include <numeric>

#include "rumorsim/error.hpp"
#include "rumorsim/generators.hpp"
#include "rumorsim/graph_io.hpp"

namespace rumorsim {

std::string_view to_string(InitStrategy s) noexcept { return s == InitStrategy::Random ? "random" : "degree"; }

std::string_view to_string(ActivationStrategy s) noexcept {
  return s == ActivationStrategy::Uniform ? "uniform" : "degree";
}

std::string_view to_string(ParseErrorPolicy p) noexcept {
  return p == ParseErrorPolicy::Abort ? "abort" : "retry-once-then-skip";
}

InitStrategy parse_init_strategy(std::string_view name) {
  if (name == "random") return InitStrategy::Random;
  if (name == "degree" || name == "degree-based") return InitStrategy::DegreeBased;
  throw ConfigError("unknown init strategy '" + std::string(name) + "' (random, degree)");
}

ActivationStrategy parse_activation_strategy(std::string_view name) {
  if (name == "uniform" || name == "random") return ActivationStrategy::Uniform;
  if (name == "degree" || name == "degree-proportional") return ActivationStrategy::DegreeProportional;
  throw ConfigError("unknown activation strategy '" + std::string(name) + "' (uniform, degree)");
}

ParseErrorPolicy parse_error_policy(std::string_view name) {
  if (name == "retry-once-then-skip") return ParseErrorPolicy::RetryOnceThenSkip;
  if (name == "abort") return ParseErrorPolicy::Abort;
  throw ConfigError("unknown parse-error policy '" + std::string(name) + "'");
}

std::vector<std::string> default_rumors() {
  return {"Nicolae Ceaușescu is not dead!", "A living dinosaur is found in Yellowstone National Park.",
          "Large Language Models are manned by real people acting as agents.",
          "Drinking 3 ales a day can heal cancer!"};
}

void validate(const SimulationConfig& c) {
  if (c.rumors.empty()) throw ConfigError("at least one rumor is required");
  if (!(c.belief_threshold > 0.0 && c.belief_threshold <= 1.0)) {
    throw ConfigError("belief_threshold must lie in (0, 1]");
  }
  if (c.seeds_per_rumor < 1) throw ConfigError("seeds_per_rumor must be >= 1");
  if (c.backend.remote.max_retries < 0) throw ConfigError("remote.max_retries must be >= 0");
  if (c.backend.remote.temperature < 0) throw ConfigError("remote.temperature must be >= 0");
}

Graph build_graph(const GraphSpec& spec, std::uint64_t master_seed) {
  const std::uint64_t seed = spec.seed.value_or(derive_seed(master_seed, "graph"));
  switch (spec.kind) {
    case GraphSpec::Kind::ErdosRenyi: return erdos_renyi(spec.n, spec.p, seed);
    case GraphSpec::Kind::ScaleFree: return scale_free(spec.n, spec.m, seed);
    case GraphSpec::Kind::SmallWorld: return small_world(spec.n, spec.k, spec.beta, seed);
    case GraphSpec::Kind::File: return load_graph_file(spec.file);
  }
  throw ConfigError("unknown graph kind");
}

std::vector<Persona> build_roster(const RosterSpec& spec, std::size_t agents, std::uint64_t master_seed) {
  if (spec.file) return load_personas(*spec.file);
  return generate_personas(agents, derive_seed(master_seed, "personas"), spec.acceptance, spec.spread);
}

std::size_t SimulationState::total_history_entries() const {
  return std::accumulate(histories.begin(), histories.end(), std::size_t{0},
                         [](std::size_t acc, const auto& h) { return acc + h.size(); });
}

SimulationState initialize(const SimulationConfig& config, Graph graph, std::vector<Persona> roster) {
  validate(config);
  const std::size_t n = graph.node_count();
  if (roster.size() != n) {
    throw ConfigError("roster has " + std::to_string(roster.size()) + " personas but the graph has " +
                      std::to_string(n) + " nodes");
  }
  if (n == 0) throw ConfigError("graph has no nodes");
  for (const auto& p : roster) validate_persona(p);

  if (config.shuffle_personas) {
    Rng rng = stream(config.master_seed, "persona-shuffle");
    for (std::size_t i = n; i > 1; --i) std::swap(roster[i - 1], roster[rng.uniform_below(i)]);
  }

  SimulationState state;
  state.rumors = config.rumors;
  state.detector = MentionDetector(state.rumors);
  state.agents.resize(n);
  std::vector<std::string> names(n);
  for (AgentId i = 0; i < n; ++i) {
    state.agents[i].persona = std::move(roster[i]);
    const auto nb = graph.neighbors(i);
    state.agents[i].friends.assign(nb.begin(), nb.end());
    names[i] = state.agents[i].persona.name;
  }
  graph.set_labels(std::move(names));
  state.graph = std::move(graph);
  state.beliefs = BeliefMatrix(n, state.rumors.size());
  state.histories.resize(n);
  state.activation_rng = stream(config.master_seed, "activation");
  state.degree_prefix.resize(n);
  std::uint64_t running = 0;
  for (AgentId i = 0; i < n; ++i) state.degree_prefix[i] = running += state.graph.degree(i);

  if (config.filler_posts_per_agent > 0) {
    // Fillers must not count as exposure to any rumor.
    std::vector<std::string> pool;
    for (const auto& s : filler_pool()) {
      const auto hit = state.detector.mentioned(s);
      if (std::find(hit.begin(), hit.end(), true) == hit.end()) pool.push_back(s);
    }
    if (pool.empty()) throw ConfigError("every filler post mentions a rumor; no neutral fillers left");
    Rng rng = stream(config.master_seed, "filler");
    for (AgentId i = 0; i < n; ++i) {
      for (std::size_t f = 0; f < config.filler_posts_per_agent; ++f) {
        state.histories[i].push_back(static_cast<std::uint32_t>(state.posts.size()));
        state.posts.push_back({i, pool[rng.uniform_below(pool.size())], 0});
      }
    }
  }
  return state;
}

std::vector<SeedRecord> seed_rumors(SimulationState& state, const SimulationConfig& config) {
  const std::size_t n = state.agents.size();
  const std::size_t k = config.seeds_per_rumor;
  if (k > n) {
    throw ConfigError("seeds_per_rumor " + std::to_string(k) + " exceeds agent count " + std::to_string(n));
  }
  std::vector<AgentId> by_degree(n);
  std::iota(by_degree.begin(), by_degree.end(), AgentId{0});
  std::stable_sort(by_degree.begin(), by_degree.end(), [&](AgentId a, AgentId b) {
    return state.graph.degree(a) > state.graph.degree(b);
  });

  Rng rng = stream(config.master_seed, "seeding");
  std::vector<SeedRecord> seeds;
  std::vector<AgentId> pool(n);
  for (std::size_t j = 0; j < state.rumors.size(); ++j) {
    std::vector<AgentId> chosen;
    if (config.init_strategy == InitStrategy::DegreeBased) {
      chosen.assign(by_degree.begin(), by_degree.begin() + static_cast<std::ptrdiff_t>(k));
    } else {
      std::iota(pool.begin(), pool.end(), AgentId{0});
      for (std::size_t s = 0; s < k; ++s) {
        std::swap(pool[s], pool[s + rng.uniform_below(n - s)]);
        chosen.push_back(pool[s]);
      }
    }
    for (AgentId a : chosen) {
      state.histories[a].push_back(static_cast<std::uint32_t>(state.posts.size()));
      state.posts.push_back({a, state.rumors[j], 0});
      seeds.push_back({j, a});
    }
  }
  return seeds;
}

AgentId select_agent(const SimulationState& state, ActivationStrategy strategy, Rng& rng) {
  const std::size_t n = state.agents.size();
  const std::uint64_t total_degree = state.degree_prefix.empty() ? 0 : state.degree_prefix.back();
  if (strategy == ActivationStrategy::Uniform || total_degree == 0) {
    return static_cast<AgentId>(rng.uniform_below(n));
  }
  const std::uint64_t r = rng.uniform_below(total_degree);
  const auto it = std::upper_bound(state.degree_prefix.begin(), state.degree_prefix.end(), r);
  return static_cast<AgentId>(it - state.degree_prefix.begin());
}

PromptContext build_context(const SimulationState& state, AgentId agent, const SimulationConfig& config) {
  const Agent& a = state.agents.at(agent);
  PromptContext ctx;
  ctx.persona = a.persona;
  ctx.friend_names.reserve(a.friends.size());
  for (AgentId f : a.friends) ctx.friend_names.push_back(state.agents[f].persona.name);
  for (std::size_t j = 0; j < state.rumors.size(); ++j) {
    if (state.beliefs.at(agent, j) >= config.belief_threshold) ctx.believed_rumors.push_back(state.rumors[j]);
  }
  const auto& history = state.histories[agent];
  const std::size_t begin =
      config.history_window > 0 && history.size() > config.history_window ? history.size() - config.history_window : 0;
  ctx.post_history.reserve(history.size() - begin);
  for (std::size_t h = begin; h < history.size(); ++h) {
    const Post& post = state.posts[history[h]];
    ctx.post_history.push_back({state.agents[post.author].persona.name, post.text});
  }
  ctx.rumor_list = state.rumors;
  return ctx;
}

StepRecord step(SimulationState& state, Backend& backend, const SimulationConfig& config) {
  StepRecord record;
  record.iteration = ++state.iteration;
  const AgentId agent = select_agent(state, config.activation_strategy, state.activation_rng);
  record.agent = agent;

  const PromptContext ctx = build_context(state, agent, config);
  record.visible_posts = ctx.post_history.size();
  const PromptMessages messages = build_prompt(ctx);
  record.prompt_hash = request_hash(messages);

  const int budget = config.on_parse_error == ParseErrorPolicy::RetryOnceThenSkip ? 2 : 1;
  ParsedResponse parsed = ResponseError{ResponseErrorKind::MissingPost, "no response"};
  for (int call = 0; call < budget; ++call) {
    const std::string raw = backend.respond(messages, ctx, record.iteration);
    ++record.backend_calls;
    parsed = parse_response(raw, state.rumors);
    if (std::holds_alternative<AgentAction>(parsed)) break;
  }

  if (const auto* err = std::get_if<ResponseError>(&parsed)) {
    const std::string reason = std::string(to_string(err->kind)) + ": " + err->detail;
    if (config.on_parse_error == ParseErrorPolicy::Abort) {
      throw ResponseParseFailure("iteration " + std::to_string(record.iteration) + ": " + reason);
    }
    record.status = StepStatus::Skipped;
    record.error = reason;
    return record;
  }

  auto& action = std::get<AgentAction>(parsed);
  const auto post_index = static_cast<std::uint32_t>(state.posts.size());
  state.posts.push_back({agent, action.post, record.iteration});
  state.histories[agent].push_back(post_index);
  for (AgentId f : state.agents[agent].friends) state.histories[f].push_back(post_index);

  for (std::size_t j = 0; j < state.rumors.size(); ++j) {
    const double before = state.beliefs.at(agent, j);
    const double after = action.checks[j] ? 1.0 : 0.0;
    if (before != after) {
      state.beliefs.set(agent, j, after);
      record.deltas.push_back({j, before, after});
    }
  }
  record.warnings = mention_consistency(action.post, action.checks, state.detector);
  record.post = std::move(action.post);
  record.checks = std::move(action.checks);
  return record;
}

TraceHeader make_header(const SimulationConfig& config, const SimulationState& state) {
  TraceHeader h;
  h.label = config.label;
  h.agents = state.agents.size();
  for (const auto& a : state.agents) h.agent_names.push_back(a.persona.name);
  h.rumors = state.rumors;
  h.iterations = config.iterations;
  h.master_seed = config.master_seed;
  h.belief_threshold = config.belief_threshold;
  h.init_strategy = std::string(to_string(config.init_strategy));
  h.activation_strategy = std::string(to_string(config.activation_strategy));
  switch (config.backend.kind) {
    case BackendKind::Rule: h.backend = "rule"; break;
    case BackendKind::Remote: h.backend = "remote"; break;
    case BackendKind::Replay: h.backend = "replay"; break;
  }
  return h;
}

SimulationTrace run(const SimulationConfig& config, Graph graph, std::vector<Persona> roster, Backend& backend,
                    TraceWriter* writer) {
  SimulationState state = initialize(config, std::move(graph), std::move(roster));
  SimulationTrace trace;
  trace.header = make_header(config, state);
  if (writer) writer->header(trace.header);

  trace.seeds = seed_rumors(state, config);
  if (writer) {
    for (const auto& s : trace.seeds) writer->seed(s);
  }

  trace.steps.reserve(config.iterations);
  try {
    for (std::uint64_t t = 0; t < config.iterations; ++t) {
      trace.steps.push_back(step(state, backend, config));
      if (writer) writer->step(trace.steps.back());
    }
  } catch (const std::exception& e) {
    if (writer) writer->aborted(state.iteration, e.what());
    throw;
  }
  trace.final_beliefs = state.beliefs;
  trace.complete = true;
  if (writer) writer->final(trace.final_beliefs);
  return trace;
}

SimulationTrace run(const SimulationConfig& config, Backend& backend, TraceWriter* writer) {
  validate(config);
  Graph graph = build_graph(config.graph, config.master_seed);
  auto roster = build_roster(config.roster, graph.node_count(), config.master_seed);
  return run(config, std::move(graph), std::move(roster), backend, writer);
}

}  // namespace rumorsim
