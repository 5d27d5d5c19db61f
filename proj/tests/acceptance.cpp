// Acceptance checks, one line per criterion:
//
//   rumorsim_acceptance            run everything
//   rumorsim_acceptance <name>     run one criterion (exit 0 pass, 1 fail, 77 skip)
//   rumorsim_acceptance --report   run everything, always exit 0
//
// Criteria that need the Facebook ego network #686 read it from
// $RUMORSIM_FACEBOOK_686 or data/facebook/686.edges and are skipped when the
// file is absent.

#include <sys/resource.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>

#include "oracle/brute_force.hpp"
#include "rumorsim/backend.hpp"
#include "rumorsim/engine.hpp"
#include "rumorsim/error.hpp"
#include "rumorsim/generators.hpp"
#include "rumorsim/graph_io.hpp"
#include "rumorsim/metrics.hpp"
#include "rumorsim/properties.hpp"
#include "rumorsim/response.hpp"
#include "stub_server.hpp"

using namespace rumorsim;
namespace fs = std::filesystem;

namespace {

enum class Verdict { Pass, Fail, Skip };

struct Outcome {
  Verdict verdict;
  std::string detail;
};

Outcome pass(std::string d) { return {Verdict::Pass, std::move(d)}; }
Outcome fail(std::string d) { return {Verdict::Fail, std::move(d)}; }
Outcome skip(std::string d) { return {Verdict::Skip, std::move(d)}; }

class Checks {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) failures_.push_back(what);
  }
  bool ok() const { return failures_.empty(); }
  std::string failures() const {
    std::string s;
    for (const auto& f : failures_) s += (s.empty() ? "" : "; ") + f;
    return s;
  }
  Outcome result(const std::string& summary) const { return ok() ? pass(summary) : fail(failures() + " | " + summary); }

 private:
  std::vector<std::string> failures_;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string num(double v, int digits = 4) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::optional<fs::path> facebook_path() {
  if (const char* env = std::getenv("RUMORSIM_FACEBOOK_686"); env && *env) return fs::path(env);
  const fs::path p = fs::path(RUMORSIM_SOURCE_DIR) / "data" / "facebook" / "686.edges";
  if (fs::exists(p)) return p;
  return std::nullopt;
}

std::vector<Persona> credulous(std::size_t n, std::uint64_t seed) {
  return generate_personas(n, seed, ScalePolicy::fixed(4), ScalePolicy::fixed(3));
}

double mean_max_affected(const SimulationTrace& t, double threshold) {
  const auto m = max_affected_all(t, threshold);
  double s = 0;
  for (const auto& x : m) s += x.fraction;
  return m.empty() ? 0.0 : s / static_cast<double>(m.size());
}

long peak_rss_kib() {
  rusage u{};
  getrusage(RUSAGE_SELF, &u);
  return u.ru_maxrss;
}

// --------------------------------------------------------------------------

Outcome c1_table_synthetic() {
  const auto t0 = std::chrono::steady_clock::now();
  Checks c;
  for (double beta : {0.0, 0.1, 0.3, 0.5, 1.0}) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const auto p = network_properties(small_world(100, 4, beta, seed));
      c.expect(p.edge_count == 200, "WS beta=" + num(beta, 1) + " has " + std::to_string(p.edge_count) + " edges");
      c.expect(num(p.avg_degree, 2) == "4.00", "WS avg degree " + num(p.avg_degree, 2));
    }
  }
  double total = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) total += static_cast<double>(erdos_renyi(100, 0.08, seed).edge_count());
  const double mean = total / 100;
  c.expect(std::abs(mean - 396.0) <= 20.0, "ER mean edges " + num(mean, 2));
  const double secs = seconds_since(t0);
  c.expect(secs < 30.0, "runtime " + num(secs, 2) + " s");
  return c.result("WS(100,4,beta) 200 edges, avg degree 4.00; ER(100,0.08) mean edges " + num(mean, 2) +
                  " (396 +/- 20); " + num(secs, 2) + " s");
}

Outcome c1_table_facebook() {
  const auto path = facebook_path();
  if (!path) return skip("Facebook ego network #686 not available (set RUMORSIM_FACEBOOK_686)");
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = load_graph_file(*path);
  const auto p = network_properties(g);
  Checks c;
  c.expect(p.node_count == 168, "nodes " + std::to_string(p.node_count));
  c.expect(p.edge_count == 1656, "edges " + std::to_string(p.edge_count));
  c.expect(std::abs(p.avg_degree - 19.71) <= 0.01, "avg degree " + num(p.avg_degree));
  c.expect(std::abs(p.avg_path_length - 2.43) <= 0.01, "avg path length " + num(p.avg_path_length));
  c.expect(p.diameter == 6, "diameter " + std::to_string(p.diameter));
  c.expect(std::abs(p.avg_clustering - 0.53) <= 0.01, "avg clustering " + num(p.avg_clustering));
  const double secs = seconds_since(t0);
  c.expect(secs < 30.0, "runtime " + num(secs, 2) + " s");
  return c.result(std::to_string(p.node_count) + " nodes, " + std::to_string(p.edge_count) + " edges, degree " +
                  num(p.avg_degree, 2) + ", path " + num(p.avg_path_length, 2) + ", diameter " +
                  std::to_string(p.diameter) + ", clustering " + num(p.avg_clustering, 2));
}

Outcome c2_parser() {
  const std::vector<std::string> rumors{"COVID-19 now named as COVID-114514.",
                                        "Donald Trump will be president of Greece."};
  const std::string ex1 =
      "POST\n\nI just read that Donald Trump will be president of Greece! OMG! That's interesting.\n\nCHECK\n\n"
      "False COVID-19 now named as COVID-114514.\n\nTrue Donald Trump will be president of Greece.\n";
  const std::string ex2 =
      "POST\n\nWhat a nice day! I enjoy my job as a teacher.\n\nCHECK\n\n"
      "False COVID-19 now named as COVID-114514.\n\nFalse Donald Trump will be president of Greece.\n";
  Checks c;
  const auto a = parse_response(ex1, rumors);
  const auto b = parse_response(ex2, rumors);
  c.expect(std::holds_alternative<AgentAction>(a) &&
               std::get<AgentAction>(a) ==
                   AgentAction{"I just read that Donald Trump will be president of Greece! OMG! That's interesting.",
                               {false, true}},
           "Example#1");
  c.expect(std::holds_alternative<AgentAction>(b) &&
               std::get<AgentAction>(b) == AgentAction{"What a nice day! I enjoy my job as a teacher.", {false, false}},
           "Example#2");

  Rng r(0xF022);
  std::size_t errors = 0;
  std::size_t actions = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string s(r.uniform_below(200), '\0');
    for (auto& ch : s) ch = static_cast<char>(r.uniform_below(256));
    if (i % 4 == 0) s = "POST\n" + s;
    if (i % 8 == 0) s += "\nCHECK\nTrue x\nFalse y\n";
    try {
      const auto parsed = parse_response(s, rumors);
      if (std::holds_alternative<AgentAction>(parsed)) {
        ++actions;
      } else {
        ++errors;
      }
    } catch (...) {
      c.expect(false, "parse_response threw on fuzz input " + std::to_string(i));
      break;
    }
  }
  return c.result("examples -> [false,true] / [false,false]; fuzz 100000 inputs: " + std::to_string(errors) +
                  " typed errors, " + std::to_string(actions) + " actions, no exceptions");
}

Outcome c3_prompt() {
  PromptContext ctx;
  ctx.persona = Persona{3, "Leo", 35, "Software Developer", {"Analytical", "Persistent"}, 3, 3};
  ctx.friend_names = {"Olivia"};
  ctx.rumor_list = default_rumors();
  ctx.believed_rumors = {ctx.rumor_list[1], ctx.rumor_list[2]};
  ctx.post_history = {{"Olivia", ctx.rumor_list[1]}};
  const auto m = build_prompt(ctx);
  const std::string worked =
      "Example#1:\n\nPOST\n\nI just read that Donald Trump will be president of Greece! OMG! That's interesting.\n\n"
      "CHECK\n\nFalse COVID-19 now named as COVID-114514.\n\nTrue Donald Trump will be president of Greece.\n\n"
      "Example#2:\n\nPOST\n\nWhat a nice day! I enjoy my job as a teacher.\n\nCHECK\n\n"
      "False COVID-19 now named as COVID-114514.\n\nFalse Donald Trump will be president of Greece.\n";
  Checks c;
  c.expect(m.system == "You are a helpful assistant.", "system line");
  c.expect(m.user.find("You will accept any new information unless there is significant controversy or criticism") !=
               std::string::npos,
           "acc=3 phrase");
  c.expect(m.user.find(worked) != std::string::npos, "worked examples");
  std::size_t lines = 0;
  for (auto pos = m.user.find("You used to believe "); pos != std::string::npos;
       pos = m.user.find("You used to believe ", pos + 1)) {
    ++lines;
  }
  c.expect(lines == 2, "believed lines " + std::to_string(lines));
  for (const auto& r : ctx.believed_rumors) {
    c.expect(m.user.find("You used to believe " + r + " is True\n") != std::string::npos, "line for " + r);
  }
  return c.result("system line, acc=3 phrase, both worked examples, 2 believed-rumor lines present byte-exact");
}

Outcome c4_oracle() {
  const auto t0 = std::chrono::steady_clock::now();
  Checks c;
  Rng pick(20240601);
  std::size_t cells = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + pick.uniform_below(6);
    const auto g = erdos_renyi(n, 0.3 + 0.5 * pick.uniform01(), pick.next());
    SimulationConfig cfg;
    cfg.rumors = default_rumors();
    cfg.iterations = 20 + pick.uniform_below(80);
    cfg.master_seed = pick.next();
    cfg.shuffle_personas = false;
    cfg.init_strategy = pick.bernoulli(0.5) ? InitStrategy::DegreeBased : InitStrategy::Random;
    cfg.activation_strategy = pick.bernoulli(0.5) ? ActivationStrategy::DegreeProportional : ActivationStrategy::Uniform;
    const auto roster = generate_personas(n, pick.next(), ScalePolicy::uniform(), ScalePolicy::uniform());
    RuleBackend backend;
    const auto t = run(cfg, g, roster, backend);

    auto s = oracle::from_graph(g);
    for (const auto& p : roster) s.agents.push_back({p.rumors_acc, p.rumors_spread});
    s.rumors = cfg.rumors.size();
    s.iterations = cfg.iterations;
    s.master_seed = cfg.master_seed;
    s.degree_init = cfg.init_strategy == InitStrategy::DegreeBased;
    s.degree_activation = cfg.activation_strategy == ActivationStrategy::DegreeProportional;
    const auto o = oracle::simulate(s);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < cfg.rumors.size(); ++j) {
        ++cells;
        c.expect(t.final_beliefs.at(i, j) == o.beliefs[i][j],
                 "trial " + std::to_string(trial) + " B[" + std::to_string(i) + "][" + std::to_string(j) + "]");
      }
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs < 10.0, "runtime " + num(secs, 2) + " s");
  return c.result("20 graphs with N <= 6: " + std::to_string(cells) + " belief cells identical to the oracle; " +
                  num(secs, 2) + " s");
}

Outcome c5_activation() {
  Graph g(5);
  for (NodeId i = 1; i < 5; ++i) g.add_edge(0, i);
  SimulationConfig cfg;
  cfg.rumors = default_rumors();
  const auto state = initialize(cfg, g, credulous(5, 1));
  Rng r(555);
  const int draws = 100000;
  std::vector<int> hits(5, 0);
  for (int i = 0; i < draws; ++i) ++hits[select_agent(state, ActivationStrategy::DegreeProportional, r)];
  Checks c;
  std::string freq;
  for (int i = 0; i < 5; ++i) {
    const double expect = i == 0 ? 0.5 : 0.125;
    const double sigma = std::sqrt(expect * (1 - expect) / draws);
    const double f = hits[i] / static_cast<double>(draws);
    c.expect(std::abs(f - expect) <= 3 * sigma, "agent " + std::to_string(i) + " frequency " + num(f));
    freq += (i ? ", " : "") + num(f);
  }
  return c.result("S4 frequencies {" + freq + "} vs {0.5, 0.125 x4} within 3 sigma");
}

Outcome c6_strategy_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  double sum_dd = 0;
  double sum_rr = 0;
  int strictly = 0;
  std::string per_seed;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    SimulationConfig cfg;
    cfg.rumors = default_rumors();
    cfg.iterations = 500;
    cfg.master_seed = seed;
    cfg.graph = GraphSpec{GraphSpec::Kind::ScaleFree, 100, 0.08, 4, 4, 0.3, {}, std::nullopt};
    cfg.roster.acceptance = ScalePolicy::fixed(4);
    cfg.roster.spread = ScalePolicy::fixed(3);
    auto dd = cfg;
    dd.init_strategy = InitStrategy::DegreeBased;
    dd.activation_strategy = ActivationStrategy::DegreeProportional;
    auto rr = cfg;
    rr.init_strategy = InitStrategy::Random;
    rr.activation_strategy = ActivationStrategy::Uniform;
    RuleBackend b1;
    RuleBackend b2;
    const double a = mean_max_affected(run(dd, b1), dd.belief_threshold);
    const double b = mean_max_affected(run(rr, b2), rr.belief_threshold);
    sum_dd += a;
    sum_rr += b;
    strictly += a > b;
    per_seed += (seed > 1 ? " " : "") + num(a, 3) + "/" + num(b, 3);
  }
  const double secs = seconds_since(t0);
  Checks c;
  c.expect(sum_dd >= sum_rr, "mean degree/degree " + num(sum_dd / 10, 3) + " < random/random " + num(sum_rr / 10, 3));
  c.expect(strictly >= 8, "degree/degree strictly ahead in " + std::to_string(strictly) + "/10 seeds (need 8)");
  c.expect(secs < 120.0, "runtime " + num(secs, 2) + " s");
  return c.result("SF(100,4) credulous T=500: mean max affected degree/degree " + num(sum_dd / 10, 3) +
                  " vs random/random " + num(sum_rr / 10, 3) + ", strictly greater " + std::to_string(strictly) +
                  "/10 [dd/rr per seed: " + per_seed + "]; " + num(secs, 1) + " s");
}

Outcome c7_persona_trend() {
  const auto t0 = std::chrono::steady_clock::now();
  const auto g = scale_free(100, 4, 686);
  const std::map<std::string, ScalePolicy> regimes{
      {"fixed4", ScalePolicy::fixed(4)}, {"random", ScalePolicy::uniform()}, {"fixed1", ScalePolicy::fixed(1)}};
  std::map<std::string, double> mean;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    for (const auto& [name, policy] : regimes) {
      SimulationConfig cfg;
      cfg.rumors = default_rumors();
      cfg.iterations = 500;
      cfg.master_seed = seed;
      const auto roster = generate_personas(100, derive_seed(seed, "personas"), policy, ScalePolicy::uniform());
      RuleBackend b;
      mean[name] += mean_max_affected(run(cfg, g, roster, b), cfg.belief_threshold) / 10.0;
    }
  }
  const double secs = seconds_since(t0);
  Checks c;
  c.expect(mean["fixed4"] >= mean["random"], "fixed(4) below random");
  c.expect(mean["random"] >= mean["fixed1"], "random below fixed(1)");
  c.expect(mean["fixed1"] == 0.0, "fixed(1) not zero");
  c.expect(secs < 120.0, "runtime " + num(secs, 2) + " s");
  return c.result("mean max affected fixed(4) " + num(mean["fixed4"], 3) + " >= random " + num(mean["random"], 3) +
                  " >= fixed(1) " + num(mean["fixed1"], 3) + "; " + num(secs, 1) + " s");
}

// SHA-256 of the trace of the reference rule run below, frozen on
// x86-64 Linux. Any platform must reproduce it byte for byte.
constexpr const char* kReferenceTraceHash = "521361c24e023450f882bc6797f91e658ec6f41c789569c3813a44a5d40b3468";

Outcome c8_determinism() {
  Checks c;
  SimulationConfig cfg;
  cfg.rumors = default_rumors();
  cfg.iterations = 8;
  cfg.master_seed = 8;
  cfg.graph = GraphSpec{GraphSpec::Kind::SmallWorld, 12, 0.08, 4, 4, 0.3, {}, std::nullopt};

  // Record a run against a stub chat endpoint, then replay it.
  StubServer stub([](std::size_t n) {
    const bool yes = n % 3 == 0;
    return std::pair{200, std::string("POST\nDay ") + std::to_string(n) + " of my life.\nCHECK\n" +
                              (yes ? "True" : "False") + "\nFalse\n" + (n % 2 ? "True" : "False") + "\nFalse\n"};
  });
  RemoteConfig remote;
  remote.base_url = stub.base_url();
  std::ostringstream transcript;
  std::string live;
  {
    RecordingBackend rec(std::make_unique<RemoteBackend>(remote, ""), transcript);
    live = to_jsonl(run(cfg, rec));
  }
  std::istringstream in(transcript.str());
  ReplayBackend replay(load_transcript(in));
  const auto replayed = to_jsonl(run(cfg, replay));
  c.expect(replayed == live, "replayed trace differs from the recorded run");
  c.expect(stub.requests() == cfg.iterations, "stub saw " + std::to_string(stub.requests()) + " requests");

  // Rule run, three executions, compared with the frozen reference.
  SimulationConfig rule = cfg;
  rule.iterations = 200;
  rule.master_seed = 20250101;
  rule.graph = GraphSpec{GraphSpec::Kind::ScaleFree, 40, 0.08, 3, 4, 0.3, {}, std::nullopt};
  std::string first;
  for (int rep = 0; rep < 3; ++rep) {
    RuleBackend b;
    const auto text = to_jsonl(run(rule, b));
    if (rep == 0) first = text;
    c.expect(text == first, "rule run " + std::to_string(rep) + " differs");
  }
  const auto hash = request_hash(PromptMessages{"", first});
  c.expect(hash == kReferenceTraceHash, "rule trace hash " + hash + " differs from the reference");
  return c.result("record/replay byte-identical (" + std::to_string(live.size()) +
                  " bytes); rule run identical x3, hash " + hash.substr(0, 16) +
                  " matches the reference (other platforms not exercised here)");
}

struct ScaleRun {
  double seconds = 0;
  double per_step = 0;
  double work = 0;  // mean of N + visible history per step
};

ScaleRun timed_run(const Graph& g, std::uint64_t iterations, std::uint64_t seed) {
  SimulationConfig cfg;
  cfg.rumors = default_rumors();
  cfg.iterations = iterations;
  cfg.master_seed = seed;
  const auto roster = generate_personas(g.node_count(), seed, ScalePolicy::uniform(), ScalePolicy::uniform());
  RuleBackend b;
  const auto t0 = std::chrono::steady_clock::now();
  const auto t = run(cfg, g, roster, b);
  ScaleRun r;
  r.seconds = seconds_since(t0);
  r.per_step = r.seconds / static_cast<double>(iterations);
  double visible = 0;
  for (const auto& s : t.steps) visible += static_cast<double>(s.visible_posts);
  r.work = static_cast<double>(g.node_count()) + visible / static_cast<double>(t.steps.size());
  return r;
}

Outcome c9_scale_facebook() {
  const auto path = facebook_path();
  if (!path) return skip("Facebook ego network #686 not available (set RUMORSIM_FACEBOOK_686)");
  const auto g = load_graph_file(*path);
  const auto r = timed_run(g, 500, 686);
  const double mib = static_cast<double>(peak_rss_kib()) / 1024.0;
  Checks c;
  c.expect(r.seconds < 60.0, "runtime " + num(r.seconds, 2) + " s");
  c.expect(mib < 1024.0, "peak memory " + num(mib, 1) + " MiB");
  return c.result(std::to_string(g.node_count()) + " nodes, " + std::to_string(g.edge_count()) +
                  " edges, T=500: " + num(r.seconds, 2) + " s, peak RSS " + num(mib, 1) + " MiB");
}

Outcome c9_scaling() {
  // Doubling experiment on scale-free graphs with the Facebook graph's mean
  // degree; cost per step against N + visible history.
  const std::uint64_t steps = 3000;
  timed_run(scale_free(200, 10, 1), 200, 1);  // warm-up
  ScaleRun small{1e9, 1e9, 0};
  ScaleRun large{1e9, 1e9, 0};
  for (int rep = 0; rep < 3; ++rep) {
    const auto a = timed_run(scale_free(200, 10, 1), steps, 7);
    const auto b = timed_run(scale_free(400, 10, 1), 2 * steps, 7);
    if (a.per_step < small.per_step) small = a;
    if (b.per_step < large.per_step) large = b;
  }
  const double cost_ratio = large.per_step / small.per_step;
  const double work_ratio = large.work / small.work;
  const double mib = static_cast<double>(peak_rss_kib()) / 1024.0;
  Checks c;
  c.expect(cost_ratio <= 1.5 * work_ratio,
           "per-step cost grew x" + num(cost_ratio, 2) + " for x" + num(work_ratio, 2) + " work");
  c.expect(mib < 1024.0, "peak memory " + num(mib, 1) + " MiB");
  return c.result("N 200->400, T 3000->6000: per-step cost x" + num(cost_ratio, 2) + " vs (N + history) x" +
                  num(work_ratio, 2) + " (limit 1.5 x work ratio); peak RSS " + num(mib, 1) + " MiB");
}

const std::vector<std::pair<std::string, std::function<Outcome()>>> kCriteria{
    {"c1_table_synthetic", c1_table_synthetic}, {"c1_table_facebook", c1_table_facebook},
    {"c2_parser", c2_parser},                   {"c3_prompt", c3_prompt},
    {"c4_oracle", c4_oracle},                   {"c5_activation", c5_activation},
    {"c6_strategy_trend", c6_strategy_trend},   {"c7_persona_trend", c7_persona_trend},
    {"c8_determinism", c8_determinism},         {"c9_scale_facebook", c9_scale_facebook},
    {"c9_scaling", c9_scaling}};

Outcome guarded(const std::function<Outcome()>& f) {
  try {
    return f();
  } catch (const std::exception& e) {
    return fail(std::string("exception: ") + e.what());
  }
}

void print(const std::string& name, const Outcome& o) {
  const char* tag = o.verdict == Verdict::Pass ? "PASS" : o.verdict == Verdict::Fail ? "FAIL" : "SKIP";
  std::cout << tag << "  " << name << "  " << o.detail << std::endl;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 2) {
    std::cerr << "usage: rumorsim_acceptance [criterion]\n";
    return 2;
  }
  const bool report_only = argc == 2 && std::string_view(argv[1]) == "--report";
  if (argc == 2 && !report_only) {
    for (const auto& [name, f] : kCriteria) {
      if (name != argv[1]) continue;
      const auto o = guarded(f);
      print(name, o);
      return o.verdict == Verdict::Pass ? 0 : o.verdict == Verdict::Skip ? 77 : 1;
    }
    std::cerr << "unknown criterion '" << argv[1] << "'\n";
    return 2;
  }
  int failed = 0;
  for (const auto& [name, f] : kCriteria) {
    const auto o = guarded(f);
    print(name, o);
    failed += o.verdict == Verdict::Fail;
  }
  std::cout << (failed == 0 ? "all criteria passed or skipped" : std::to_string(failed) + " criterion(s) failed")
            << std::endl;
  return report_only || failed == 0 ? 0 : 1;
}
