// rumorsim command-line front end.
//
//   rumorsim gen-network --type small-world --n 100 --k 4 --beta 0.3 --seed 7 --out ws.edges
//   rumorsim props ws.edges
//   rumorsim run configs/desk/strategies.json
//   rumorsim report out/strategies --threshold 0.5

#include <CLI11.hpp>
#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <optional>
#include <sstream>

#include "rumorsim/config.hpp"
#include "rumorsim/error.hpp"
#include "rumorsim/experiment.hpp"
#include "rumorsim/generators.hpp"
#include "rumorsim/graph_io.hpp"
#include "rumorsim/metrics.hpp"
#include "rumorsim/properties.hpp"

namespace fs = std::filesystem;
using namespace rumorsim;

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

void print_properties(std::ostream& out, const NetworkProperties& p) {
  out << "nodes              " << p.node_count << '\n'
      << "edges              " << p.edge_count << '\n'
      << "avg degree         " << fmt("%.2f", p.avg_degree) << '\n'
      << "avg path length    " << fmt("%.2f", p.avg_path_length) << '\n'
      << "diameter           " << p.diameter << '\n'
      << "avg clustering     " << fmt("%.2f", p.avg_clustering) << '\n'
      << "components         " << p.component_count << '\n'
      << "largest component  " << p.largest_component_size << '\n';
}

nlohmann::json properties_json(const NetworkProperties& p) {
  return {{"nodes", p.node_count},
          {"edges", p.edge_count},
          {"avg_degree", p.avg_degree},
          {"avg_path_length", p.avg_path_length},
          {"diameter", p.diameter},
          {"avg_clustering", p.avg_clustering},
          {"components", p.component_count},
          {"largest_component", p.largest_component_size}};
}

void write_text(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

struct GenArgs {
  std::string type;
  std::size_t n = 100;
  double p = 0.08;
  std::size_t m = 4;
  std::size_t k = 4;
  double beta = 0.3;
  std::uint64_t seed = 0;
  std::string out;
  std::string export_path;
  bool json = false;
};

int cmd_gen_network(const GenArgs& a) {
  Graph g;
  switch (parse_graph_kind(a.type)) {
    case GraphSpec::Kind::ErdosRenyi: g = erdos_renyi(a.n, a.p, a.seed); break;
    case GraphSpec::Kind::ScaleFree: g = scale_free(a.n, a.m, a.seed); break;
    case GraphSpec::Kind::SmallWorld: g = small_world(a.n, a.k, a.beta, a.seed); break;
    case GraphSpec::Kind::File: throw ParameterError("gen-network cannot generate type 'file'");
  }
  std::ostringstream edges;
  write_edge_list(edges, g);
  if (a.out.empty()) {
    std::cout << edges.str();
  } else {
    write_text(a.out, edges.str());
  }
  if (!a.export_path.empty()) {
    const auto ext = fs::path(a.export_path).extension().string();
    write_text(a.export_path, export_graph(g, parse_graph_format(ext == ".gv" ? "dot" : ext.substr(ext.empty() ? 0 : 1))));
  }
  const auto props = network_properties(g);
  auto& summary = a.out.empty() ? std::cerr : std::cout;
  if (a.json) {
    summary << properties_json(props).dump(2) << '\n';
  } else {
    print_properties(summary, props);
  }
  return 0;
}

int cmd_props(const std::string& path, bool json) {
  if (!fs::exists(path)) throw IoError("no such file: " + path);
  const Graph g = load_graph_file(path);
  const auto props = network_properties(g);
  if (json) {
    std::cout << properties_json(props).dump(2) << '\n';
  } else {
    print_properties(std::cout, props);
  }
  return 0;
}

struct RunArgs {
  std::string spec;
  std::optional<std::uint64_t> iterations;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::size_t workers = 0;
  bool no_resume = false;
  std::string backend;
  std::string transcript;
  std::string record;
};

int cmd_run(const RunArgs& a) {
  ExperimentSpec spec = load_experiment(a.spec);
  if (a.iterations) spec.base.iterations = *a.iterations;
  if (a.seed) {
    spec.base.master_seed = *a.seed;
    spec.master_seeds.clear();
  }
  if (!a.out.empty()) spec.output_dir = a.out;
  if (!a.backend.empty()) {
    if (a.backend == "rule") {
      spec.base.backend.kind = BackendKind::Rule;
    } else if (a.backend == "remote") {
      spec.base.backend.kind = BackendKind::Remote;
    } else if (a.backend == "replay") {
      spec.base.backend.kind = BackendKind::Replay;
    } else {
      throw ConfigError("unknown backend '" + a.backend + "'");
    }
  }
  if (!a.transcript.empty()) spec.base.backend.replay.transcript = a.transcript;
  if (!a.record.empty()) spec.base.backend.record_to = fs::path(a.record);
  if (spec.base.backend.kind == BackendKind::Replay && spec.base.backend.replay.transcript.empty()) {
    throw ConfigError("replay backend needs a transcript (--transcript)");
  }
  validate(spec.base);

  const auto cells = expand(spec);
  // Fail on configuration problems (missing API key, bad files) before any work.
  if (spec.base.backend.kind == BackendKind::Remote) make_backend(spec.base.backend);

  std::cerr << "sweep: " << cells.size() << " cell(s) -> " << spec.output_dir.string() << '\n';
  SweepOptions options;
  options.resume = !a.no_resume;
  options.workers = a.workers;
  options.on_cell = [](const CellOutcome& o) {
    if (o.reused) {
      std::cerr << "  " << o.label << ": already done\n";
    } else if (o.ok) {
      std::cerr << "  " << o.label << ": ok (" << fmt("%.2f", o.seconds) << " s)\n";
    } else {
      std::cerr << "  " << o.label << ": FAILED: " << o.error << '\n';
    }
  };
  const auto outcomes = run_sweep(spec, options);
  const auto failed = std::count_if(outcomes.begin(), outcomes.end(), [](const auto& o) { return !o.ok; });
  if (failed > 0) {
    std::cerr << failed << " of " << outcomes.size() << " cell(s) failed\n";
    return 1;
  }
  return 0;
}

int cmd_report(const std::string& dir, double threshold, const std::string& out_path, bool table) {
  if (!fs::is_directory(dir)) throw IoError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir)) {
    const auto name = e.path().filename().string();
    if (e.is_regular_file() && name.size() > 12 && name.ends_with(".trace.jsonl")) files.push_back(e.path());
  }
  if (files.empty()) throw IoError("no *.trace.jsonl files in " + dir);
  std::sort(files.begin(), files.end());

  std::vector<SimulationTrace> traces;
  std::vector<LabeledTrace> labeled;
  traces.reserve(files.size());
  for (const auto& f : files) {
    traces.push_back(read_trace(f));
    const auto name = f.filename().string();
    if (!traces.back().complete) throw AggregationError("trace " + name + " is incomplete");
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    const auto name = files[i].filename().string();
    labeled.push_back({name.substr(0, name.size() - 12), &traces[i]});
  }

  std::ostringstream out;
  if (traces.size() == 1) {
    write_series_csv(out, labeled[0].label, build_series(traces[0], threshold));
  } else {
    const auto matrix = aggregate_matrix(labeled, threshold);
    if (table) {
      write_matrix_table(out, matrix);
    } else {
      write_matrix_csv(out, matrix);
    }
  }
  if (out_path.empty()) {
    std::cout << out.str();
  } else {
    write_text(out_path, out.str());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-based rumor propagation simulator"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* g = app.add_subcommand("gen-network", "Generate a synthetic network and print its properties");
  g->add_option("--type", gen.type, "erdos-renyi | scale-free | small-world")->required();
  g->add_option("--n", gen.n, "Node count");
  g->add_option("--p", gen.p, "Edge probability (erdos-renyi)");
  g->add_option("--m", gen.m, "Edges per arrival (scale-free)");
  g->add_option("--k", gen.k, "Lattice degree (small-world)");
  g->add_option("--beta", gen.beta, "Rewiring probability (small-world)");
  g->add_option("--seed", gen.seed, "Generator seed");
  g->add_option("--out", gen.out, "Edge-list output path (stdout when omitted)");
  g->add_option("--export", gen.export_path, "Also write a .graphml or .dot file");
  g->add_flag("--json", gen.json, "Properties as JSON");

  std::string props_path;
  bool props_json = false;
  auto* p = app.add_subcommand("props", "Structural statistics of an edge list, GraphML or DOT file");
  p->add_option("path", props_path)->required();
  p->add_flag("--json", props_json, "JSON output");

  RunArgs run;
  auto* r = app.add_subcommand("run", "Run a simulation or sweep from a JSON spec");
  r->add_option("spec", run.spec)->required();
  r->add_option("--iterations", run.iterations, "Override iterations");
  r->add_option("--seed", run.seed, "Override the master seed (drops a seed sweep)");
  r->add_option("--out", run.out, "Override the output directory");
  r->add_option("--workers", run.workers, "Worker threads");
  r->add_flag("--no-resume", run.no_resume, "Rerun cells that already have output");
  r->add_option("--backend", run.backend, "rule | remote | replay");
  r->add_option("--transcript", run.transcript, "Transcript for the replay backend");
  r->add_option("--record", run.record, "Record backend exchanges to this transcript");

  std::string report_dir;
  double threshold = 0.5;
  std::string report_out;
  bool report_table = false;
  auto* rep = app.add_subcommand("report", "Series CSV (one trace) or comparison matrix (several)");
  rep->add_option("dir", report_dir)->required();
  rep->add_option("--threshold", threshold, "Belief threshold")->check(CLI::Range(0.0, 1.0));
  rep->add_option("--out", report_out, "Output file (stdout when omitted)");
  rep->add_flag("--table", report_table, "Text table with percentages instead of CSV");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*g) return cmd_gen_network(gen);
    if (*p) return cmd_props(props_path, props_json);
    if (*r) return cmd_run(run);
    if (*rep) return cmd_report(report_dir, threshold, report_out, report_table);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
