#include "rumorsim/config.hpp"

#include <fstream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "rumorsim/error.hpp"

namespace rumorsim {

using nlohmann::json;

namespace {

void only_keys(const json& j, std::string_view where, std::initializer_list<std::string_view> allowed) {
  if (!j.is_object()) throw ConfigError(std::string(where) + " must be an object");
  for (const auto& [key, _] : j.items()) {
    bool ok = false;
    for (auto a : allowed) ok = ok || key == a;
    if (!ok) throw ConfigError("unknown key '" + key + "' in " + std::string(where));
  }
}

template <typename T>
void get_to(const json& j, const char* key, T& out, std::string_view where) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ConfigError(std::string(where) + "." + key + " has the wrong type");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p) {
  std::filesystem::path path(p);
  return path.is_relative() && !base.empty() ? base / path : path;
}

ScalePolicy parse_policy(const json& j, std::string_view where) {
  if (j.is_string() && j.get<std::string>() == "uniform") return ScalePolicy::uniform();
  if (j.is_number_integer()) return ScalePolicy::fixed(j.get<int>());
  if (j.is_array()) {
    std::vector<int> values;
    for (const auto& v : j) {
      if (!v.is_number_integer()) throw ConfigError(std::string(where) + " list must hold integers");
      values.push_back(v.get<int>());
    }
    return ScalePolicy::per_agent(std::move(values));
  }
  throw ConfigError(std::string(where) + " must be \"uniform\", an integer or a list of integers");
}

json policy_json(const ScalePolicy& p) {
  switch (p.kind()) {
    case ScalePolicy::Kind::Uniform: return "uniform";
    case ScalePolicy::Kind::Fixed: return p.value();
    case ScalePolicy::Kind::PerAgent: return p.values();
  }
  return nullptr;
}

std::string policy_label(const ScalePolicy& p) {
  switch (p.kind()) {
    case ScalePolicy::Kind::Uniform: return "uniform";
    case ScalePolicy::Kind::Fixed: return "fixed" + std::to_string(p.value());
    case ScalePolicy::Kind::PerAgent: return "custom";
  }
  return "?";
}

GraphSpec parse_graph(const json& j, const std::filesystem::path& base, std::string_view where,
                      bool allow_label = false) {
  if (allow_label) {
    only_keys(j, where, {"label", "type", "n", "p", "m", "k", "beta", "file", "seed"});
  } else {
    only_keys(j, where, {"type", "n", "p", "m", "k", "beta", "file", "seed"});
  }
  GraphSpec g;
  std::string type = std::string(to_string(g.kind));
  get_to(j, "type", type, where);
  g.kind = parse_graph_kind(type);
  get_to(j, "n", g.n, where);
  get_to(j, "p", g.p, where);
  get_to(j, "m", g.m, where);
  get_to(j, "k", g.k, where);
  get_to(j, "beta", g.beta, where);
  if (j.contains("file")) {
    std::string f;
    get_to(j, "file", f, where);
    g.file = resolve(base, f);
  }
  if (j.contains("seed")) {
    std::uint64_t s = 0;
    get_to(j, "seed", s, where);
    g.seed = s;
  }
  if (g.kind == GraphSpec::Kind::File && g.file.empty()) {
    throw ConfigError(std::string(where) + ": type \"file\" needs a \"file\" entry");
  }
  return g;
}

json graph_json(const GraphSpec& g) {
  json j;
  j["type"] = to_string(g.kind);
  switch (g.kind) {
    case GraphSpec::Kind::ErdosRenyi: j["n"] = g.n; j["p"] = g.p; break;
    case GraphSpec::Kind::ScaleFree: j["n"] = g.n; j["m"] = g.m; break;
    case GraphSpec::Kind::SmallWorld: j["n"] = g.n; j["k"] = g.k; j["beta"] = g.beta; break;
    case GraphSpec::Kind::File: j["file"] = g.file.generic_string(); break;
  }
  if (g.seed) j["seed"] = *g.seed;
  return j;
}

RosterSpec parse_roster(const json& j, const std::filesystem::path& base, std::string_view where,
                        bool allow_label = false) {
  if (allow_label) {
    only_keys(j, where, {"label", "file", "acceptance", "spread"});
  } else {
    only_keys(j, where, {"file", "acceptance", "spread"});
  }
  RosterSpec r;
  if (j.contains("file")) {
    std::string f;
    get_to(j, "file", f, where);
    r.file = resolve(base, f);
  }
  if (j.contains("acceptance")) r.acceptance = parse_policy(j["acceptance"], std::string(where) + ".acceptance");
  if (j.contains("spread")) r.spread = parse_policy(j["spread"], std::string(where) + ".spread");
  return r;
}

json roster_json(const RosterSpec& r) {
  json j;
  if (r.file) j["file"] = r.file->generic_string();
  j["acceptance"] = policy_json(r.acceptance);
  j["spread"] = policy_json(r.spread);
  return j;
}

BackendConfig parse_backend(const json& j, const std::filesystem::path& base) {
  only_keys(j, "backend", {"kind", "remote", "rule", "replay", "record_to"});
  BackendConfig b;
  std::string kind = "rule";
  get_to(j, "kind", kind, "backend");
  if (kind == "rule") {
    b.kind = BackendKind::Rule;
  } else if (kind == "remote") {
    b.kind = BackendKind::Remote;
  } else if (kind == "replay") {
    b.kind = BackendKind::Replay;
  } else {
    throw ConfigError("unknown backend kind '" + kind + "' (rule, remote, replay)");
  }
  if (j.contains("remote")) {
    const auto& r = j["remote"];
    only_keys(r, "backend.remote", {"base_url", "model", "temperature", "timeout_ms", "max_retries", "api_key_env",
                                    "initial_backoff_ms", "max_backoff_ms"});
    get_to(r, "base_url", b.remote.base_url, "backend.remote");
    get_to(r, "model", b.remote.model, "backend.remote");
    get_to(r, "temperature", b.remote.temperature, "backend.remote");
    get_to(r, "max_retries", b.remote.max_retries, "backend.remote");
    get_to(r, "api_key_env", b.remote.api_key_env, "backend.remote");
    std::int64_t ms = b.remote.timeout.count();
    get_to(r, "timeout_ms", ms, "backend.remote");
    b.remote.timeout = std::chrono::milliseconds(ms);
    ms = b.remote.initial_backoff.count();
    get_to(r, "initial_backoff_ms", ms, "backend.remote");
    b.remote.initial_backoff = std::chrono::milliseconds(ms);
    ms = b.remote.max_backoff.count();
    get_to(r, "max_backoff_ms", ms, "backend.remote");
    b.remote.max_backoff = std::chrono::milliseconds(ms);
  }
  if (j.contains("rule")) {
    const auto& r = j["rule"];
    only_keys(r, "backend.rule", {"accept_threshold", "min_spread_to_post", "post_policy", "neutral_post"});
    if (r.contains("accept_threshold")) {
      const auto& a = r["accept_threshold"];
      if (!a.is_array() || a.size() != 4) throw ConfigError("backend.rule.accept_threshold needs 4 entries");
      for (std::size_t i = 0; i < 4; ++i) {
        if (a[i].is_null()) {
          b.rule.accept_threshold[i].reset();
        } else if (a[i].is_number_unsigned()) {
          b.rule.accept_threshold[i] = a[i].get<std::size_t>();
        } else {
          throw ConfigError("backend.rule.accept_threshold entries must be null or non-negative integers");
        }
      }
    }
    get_to(r, "min_spread_to_post", b.rule.min_spread_to_post, "backend.rule");
    get_to(r, "neutral_post", b.rule.neutral_post, "backend.rule");
    std::string policy = "most-seen";
    get_to(r, "post_policy", policy, "backend.rule");
    if (policy == "most-seen") {
      b.rule.post_policy = PostPolicy::MostSeen;
    } else if (policy == "all-believed") {
      b.rule.post_policy = PostPolicy::AllBelieved;
    } else {
      throw ConfigError("unknown post_policy '" + policy + "' (most-seen, all-believed)");
    }
  }
  if (j.contains("replay")) {
    only_keys(j["replay"], "backend.replay", {"transcript"});
    std::string t;
    get_to(j["replay"], "transcript", t, "backend.replay");
    b.replay.transcript = resolve(base, t);
  }
  if (j.contains("record_to")) {
    std::string t;
    get_to(j, "record_to", t, "backend");
    b.record_to = resolve(base, t);
  }
  if (b.kind == BackendKind::Replay && b.replay.transcript.empty()) {
    throw ConfigError("replay backend needs backend.replay.transcript");
  }
  return b;
}

json backend_json(const BackendConfig& b) {
  json j;
  j["kind"] = b.kind == BackendKind::Rule ? "rule" : b.kind == BackendKind::Remote ? "remote" : "replay";
  if (b.kind == BackendKind::Remote) {
    j["remote"] = {{"base_url", b.remote.base_url},
                   {"model", b.remote.model},
                   {"temperature", b.remote.temperature},
                   {"timeout_ms", b.remote.timeout.count()},
                   {"max_retries", b.remote.max_retries},
                   {"api_key_env", b.remote.api_key_env},
                   {"initial_backoff_ms", b.remote.initial_backoff.count()},
                   {"max_backoff_ms", b.remote.max_backoff.count()}};
  }
  if (b.kind == BackendKind::Rule) {
    json acc = json::array();
    for (const auto& a : b.rule.accept_threshold) acc.push_back(a ? json(*a) : json(nullptr));
    j["rule"] = {{"accept_threshold", acc},
                 {"min_spread_to_post", b.rule.min_spread_to_post},
                 {"post_policy", b.rule.post_policy == PostPolicy::MostSeen ? "most-seen" : "all-believed"},
                 {"neutral_post", b.rule.neutral_post}};
  }
  if (b.kind == BackendKind::Replay) j["replay"] = {{"transcript", b.replay.transcript.generic_string()}};
  if (b.record_to) j["record_to"] = b.record_to->generic_string();
  return j;
}

template <typename T, typename Parse>
std::vector<T> parse_list(const json& j, const char* key, Parse&& parse) {
  std::vector<T> out;
  if (!j.contains(key)) return out;
  if (!j[key].is_array()) throw ConfigError(std::string("sweep.") + key + " must be a list");
  for (const auto& item : j[key]) out.push_back(parse(item));
  return out;
}

std::string require_string(const json& j, std::string_view where) {
  if (!j.is_string()) throw ConfigError(std::string(where) + " entries must be strings");
  return j.get<std::string>();
}

}  // namespace

std::string_view to_string(GraphSpec::Kind kind) noexcept {
  switch (kind) {
    case GraphSpec::Kind::ErdosRenyi: return "erdos-renyi";
    case GraphSpec::Kind::ScaleFree: return "scale-free";
    case GraphSpec::Kind::SmallWorld: return "small-world";
    case GraphSpec::Kind::File: return "file";
  }
  return "?";
}

GraphSpec::Kind parse_graph_kind(std::string_view name) {
  if (name == "erdos-renyi" || name == "er") return GraphSpec::Kind::ErdosRenyi;
  if (name == "scale-free" || name == "ba") return GraphSpec::Kind::ScaleFree;
  if (name == "small-world" || name == "ws") return GraphSpec::Kind::SmallWorld;
  if (name == "file") return GraphSpec::Kind::File;
  throw ConfigError("unknown network type '" + std::string(name) +
                    "' (erdos-renyi, scale-free, small-world, file)");
}

ExperimentSpec parse_experiment(std::string_view text, const std::filesystem::path& base) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("spec is not valid JSON: ") + e.what());
  }
  only_keys(j, "spec",
            {"label", "graph", "roster", "rumors", "iterations", "init_strategy", "activation_strategy",
             "seeds_per_rumor", "belief_threshold", "backend", "master_seed", "on_parse_error",
             "filler_posts_per_agent", "shuffle_personas", "history_window", "sweep", "output_dir", "workers"});
  ExperimentSpec spec;
  SimulationConfig& c = spec.base;
  get_to(j, "label", c.label, "spec");
  if (j.contains("graph")) c.graph = parse_graph(j["graph"], base, "graph");
  if (j.contains("roster")) c.roster = parse_roster(j["roster"], base, "roster");
  c.rumors = default_rumors();
  get_to(j, "rumors", c.rumors, "spec");
  get_to(j, "iterations", c.iterations, "spec");
  std::string s;
  if (j.contains("init_strategy")) {
    get_to(j, "init_strategy", s, "spec");
    c.init_strategy = parse_init_strategy(s);
  }
  if (j.contains("activation_strategy")) {
    get_to(j, "activation_strategy", s, "spec");
    c.activation_strategy = parse_activation_strategy(s);
  }
  get_to(j, "seeds_per_rumor", c.seeds_per_rumor, "spec");
  get_to(j, "belief_threshold", c.belief_threshold, "spec");
  if (j.contains("backend")) c.backend = parse_backend(j["backend"], base);
  get_to(j, "master_seed", c.master_seed, "spec");
  if (j.contains("on_parse_error")) {
    get_to(j, "on_parse_error", s, "spec");
    c.on_parse_error = parse_error_policy(s);
  }
  get_to(j, "filler_posts_per_agent", c.filler_posts_per_agent, "spec");
  get_to(j, "shuffle_personas", c.shuffle_personas, "spec");
  get_to(j, "history_window", c.history_window, "spec");
  s = spec.output_dir.string();
  get_to(j, "output_dir", s, "spec");
  spec.output_dir = resolve(base, s);
  get_to(j, "workers", spec.workers, "spec");
  if (spec.workers == 0) throw ConfigError("workers must be >= 1");

  if (j.contains("sweep")) {
    const auto& w = j["sweep"];
    only_keys(w, "sweep", {"init_strategies", "activation_strategies", "personas", "networks", "master_seeds"});
    spec.init_strategies = parse_list<InitStrategy>(
        w, "init_strategies", [](const json& v) { return parse_init_strategy(require_string(v, "init_strategies")); });
    spec.activation_strategies = parse_list<ActivationStrategy>(w, "activation_strategies", [](const json& v) {
      return parse_activation_strategy(require_string(v, "activation_strategies"));
    });
    spec.personas = parse_list<PersonaRegime>(w, "personas", [&](const json& v) {
      PersonaRegime r{"", parse_roster(v, base, "sweep.personas[]", true)};
      if (v.contains("label")) {
        r.label = require_string(v["label"], "sweep.personas[].label");
      } else {
        r.label = r.roster.file ? r.roster.file->stem().string()
                                : "acc-" + policy_label(r.roster.acceptance) + "_spread-" +
                                      policy_label(r.roster.spread);
      }
      return r;
    });
    spec.networks = parse_list<NetworkChoice>(w, "networks", [&](const json& v) {
      NetworkChoice n{"", parse_graph(v, base, "sweep.networks[]", true)};
      n.label = v.contains("label") ? require_string(v["label"], "sweep.networks[].label")
                                    : std::string(to_string(n.graph.kind));
      return n;
    });
    spec.master_seeds = parse_list<std::uint64_t>(w, "master_seeds", [](const json& v) {
      if (!v.is_number_unsigned()) throw ConfigError("sweep.master_seeds entries must be non-negative integers");
      return v.get<std::uint64_t>();
    });
    std::set<std::string> seen;
    for (const auto& p : spec.personas) {
      if (!seen.insert("p:" + p.label).second) throw ConfigError("duplicate persona label '" + p.label + "'");
    }
    for (const auto& n : spec.networks) {
      if (!seen.insert("n:" + n.label).second) throw ConfigError("duplicate network label '" + n.label + "'");
    }
  }
  validate(c);
  return spec;
}

ExperimentSpec load_experiment(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open spec " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_experiment(ss.str(), path.parent_path());
}

std::string config_json(const SimulationConfig& c) {
  json j;
  j["label"] = c.label;
  j["graph"] = graph_json(c.graph);
  j["roster"] = roster_json(c.roster);
  j["rumors"] = c.rumors;
  j["iterations"] = c.iterations;
  j["init_strategy"] = to_string(c.init_strategy);
  j["activation_strategy"] = to_string(c.activation_strategy);
  j["seeds_per_rumor"] = c.seeds_per_rumor;
  j["belief_threshold"] = c.belief_threshold;
  j["backend"] = backend_json(c.backend);
  j["master_seed"] = c.master_seed;
  j["on_parse_error"] = to_string(c.on_parse_error);
  j["filler_posts_per_agent"] = c.filler_posts_per_agent;
  j["shuffle_personas"] = c.shuffle_personas;
  j["history_window"] = c.history_window;
  return j.dump(2) + "\n";
}

std::size_t sweep_size(const ExperimentSpec& s) {
  auto len = [](std::size_t n) { return n == 0 ? std::size_t{1} : n; };
  return len(s.init_strategies.size()) * len(s.activation_strategies.size()) * len(s.personas.size()) *
         len(s.networks.size()) * len(s.master_seeds.size());
}

std::vector<SweepCell> expand(const ExperimentSpec& s) {
  const SimulationConfig& base = s.base;
  auto axis = [](std::size_t n) { return n == 0 ? std::size_t{1} : n; };
  std::vector<SweepCell> cells;
  cells.reserve(sweep_size(s));
  for (std::size_t a = 0; a < axis(s.init_strategies.size()); ++a) {
    for (std::size_t b = 0; b < axis(s.activation_strategies.size()); ++b) {
      for (std::size_t p = 0; p < axis(s.personas.size()); ++p) {
        for (std::size_t n = 0; n < axis(s.networks.size()); ++n) {
          for (std::size_t m = 0; m < axis(s.master_seeds.size()); ++m) {
            SweepCell cell{"", base};
            std::vector<std::string> parts;
            if (!base.label.empty()) parts.push_back(base.label);
            if (!s.init_strategies.empty()) {
              cell.config.init_strategy = s.init_strategies[a];
              parts.push_back("init-" + std::string(to_string(s.init_strategies[a])));
            }
            if (!s.activation_strategies.empty()) {
              cell.config.activation_strategy = s.activation_strategies[b];
              parts.push_back("act-" + std::string(to_string(s.activation_strategies[b])));
            }
            if (!s.personas.empty()) {
              cell.config.roster = s.personas[p].roster;
              parts.push_back("persona-" + s.personas[p].label);
            }
            if (!s.networks.empty()) {
              cell.config.graph = s.networks[n].graph;
              parts.push_back("net-" + s.networks[n].label);
            }
            if (!s.master_seeds.empty()) {
              cell.config.master_seed = s.master_seeds[m];
              parts.push_back("seed-" + std::to_string(s.master_seeds[m]));
            }
            if (parts.empty()) parts.push_back("run");
            for (std::size_t i = 0; i < parts.size(); ++i) cell.label += (i ? "_" : "") + parts[i];
            cell.config.label = cell.label;
            if (cell.config.backend.record_to && sweep_size(s) > 1) {
              auto path = *cell.config.backend.record_to;
              auto name = path.stem().string() + "." + cell.label + path.extension().string();
              cell.config.backend.record_to = path.parent_path() / name;
            }
            cells.push_back(std::move(cell));
          }
        }
      }
    }
  }
  return cells;
}

}  // namespace rumorsim
