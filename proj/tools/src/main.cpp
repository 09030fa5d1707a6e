// homonet: command-line front end for the network formation engine.
//
// Subcommands:
//   check      exact / eps-approximate pairwise stability of a graph file
//   enumerate  exhaustive search for all pairwise stable graphs (n <= 8)
//   construct  materialize a catalogued stable network
//   metrics    segregation and structure metrics of a graph file
//   gen        seeded initial network generation
//   simulate   one best-response dynamics run
//   batch      replicated experiment grid driven by a JSON config
//   stats      five-number summaries from a per-run summary CSV
//
// Exit codes: 0 success (check: stable), 1 check found the graph unstable,
// 2 usage/config/runtime error, 3 batch exceeded its non-convergence budget.

#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "homonet/constructions.hpp"
#include "homonet/cost.hpp"
#include "homonet/distance.hpp"
#include "homonet/dynamics.hpp"
#include "homonet/experiment.hpp"
#include "homonet/generators.hpp"
#include "homonet/graph.hpp"
#include "homonet/graph_io.hpp"
#include "homonet/metrics.hpp"
#include "homonet/population.hpp"
#include "homonet/rational.hpp"
#include "homonet/stability.hpp"

namespace {

using namespace homonet;

std::vector<int> parse_counts(const std::string& text) {
  std::vector<int> counts;
  std::stringstream stream(text);
  std::string field;
  while (std::getline(stream, field, ',')) {
    std::size_t used = 0;
    const int value = std::stoi(field, &used);
    if (used != field.size()) throw std::invalid_argument("bad count '" + field + "'");
    counts.push_back(value);
  }
  if (counts.empty()) throw std::invalid_argument("--counts must list at least one type size");
  return counts;
}

struct TopologyArg {
  InitSpec::Topology topology = InitSpec::Topology::random_tree;
  int rows = 0;
  int cols = 0;
};

// "tree" / "random_tree" or "grid:RxC" (e.g. "grid:20x50").
TopologyArg parse_topology_arg(const std::string& text) {
  TopologyArg arg;
  const auto colon = text.find(':');
  const std::string head = text.substr(0, colon);
  arg.topology = parse_topology(head);
  if (arg.topology == InitSpec::Topology::grid) {
    if (colon == std::string::npos)
      throw std::invalid_argument("grid topology needs dimensions, e.g. grid:20x50");
    const std::string dims = text.substr(colon + 1);
    const auto x = dims.find('x');
    if (x == std::string::npos) throw std::invalid_argument("bad grid dimensions '" + dims + "'");
    arg.rows = std::stoi(dims.substr(0, x));
    arg.cols = std::stoi(dims.substr(x + 1));
  } else if (colon != std::string::npos) {
    throw std::invalid_argument("only grid topologies take dimensions");
  }
  return arg;
}

std::string delta_to_string(const CostDelta& delta) {
  switch (delta.kind) {
    case DistDelta::Kind::reconnect:
      return "-infinity (reconnects an unreachable agent)";
    case DistDelta::Kind::disconnect:
      return "+infinity (disconnects a reachable agent)";
    case DistDelta::Kind::finite:
      return format_rational(delta.value);
  }
  return "?";
}

void print_witness(std::ostream& out, const StabilityWitness& witness) {
  out << "agent: " << witness.agent << '\n';
  out << "move: " << move_to_string(witness.move) << '\n';
  out << "delta_agent: " << delta_to_string(witness.delta_agent) << '\n';
  if (witness.delta_partner)
    out << "delta_partner: " << delta_to_string(*witness.delta_partner) << '\n';
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::string yes_no(bool value) { return value ? "true" : "false"; }

// ---------------------------------------------------------------- check ----

struct CheckArgs {
  std::string graph_path;
  std::string model;
  std::string alpha;
  std::string epsilon = "1";
};

int run_check(const CheckArgs& args) {
  const TypedGraph tg = read_graph_file(args.graph_path);
  CostParams params{parse_model(args.model), parse_rational(args.alpha)};
  params.validate();
  const Rational epsilon = parse_rational(args.epsilon);
  if (epsilon < 1) throw std::invalid_argument("--epsilon must be >= 1");

  const StabilityReport report = is_approx_stable(params, tg.pop, tg.graph, epsilon);
  std::cout << "graph: " << args.graph_path << '\n';
  std::cout << "model: " << model_name(params.model) << '\n';
  std::cout << "alpha: " << format_rational(params.alpha) << '\n';
  std::cout << "epsilon: " << format_rational(epsilon) << '\n';
  std::cout << "stable: " << yes_no(report.stable) << '\n';
  if (!report.stable) {
    print_witness(std::cout, *report.witness);
    return 1;
  }
  return 0;
}

// ------------------------------------------------------------ enumerate ----

struct EnumerateArgs {
  std::string counts;
  int n = -1;
  std::string model;
  std::string alpha;
  std::string report_path;
};

int run_enumerate(const EnumerateArgs& args) {
  const Population pop = Population::from_counts(parse_counts(args.counts));
  if (args.n >= 0 && args.n != pop.n())
    throw std::invalid_argument("--n disagrees with the sum of --counts");
  CostParams params{parse_model(args.model), parse_rational(args.alpha)};
  params.validate();

  const std::vector<Graph> stable = enumerate_stable_graphs(params, pop);
  const int pairs = pop.n() * (pop.n() - 1) / 2;
  std::cout << "population: " << args.counts << '\n';
  std::cout << "model: " << model_name(params.model) << '\n';
  std::cout << "alpha: " << format_rational(params.alpha) << '\n';
  std::cout << "searched: " << (std::int64_t{1} << pairs) << '\n';
  std::cout << "stable_count: " << stable.size() << '\n';
  for (std::size_t i = 0; i < stable.size(); ++i)
    std::cout << "stable[" << i << "]: m=" << stable[i].m() << '\n';

  if (!args.report_path.empty()) {
    auto out = open_output(args.report_path);
    for (const Graph& g : stable) out << graph_to_json(g, pop) << '\n';
    std::cout << "report: " << args.report_path << '\n';
  }
  return 0;
}

// ------------------------------------------------------------ construct ----

struct ConstructArgs {
  std::string id;
  std::string counts;
  std::string alpha;
  std::string policy = "lexicographic";
  std::uint64_t seed = 0;
  std::string out_path;
};

Algo1Policy parse_policy(const std::string& name) {
  if (name == "lexicographic" || name == "lex") return Algo1Policy::lexicographic;
  if (name == "random" || name == "seeded_random") return Algo1Policy::seeded_random;
  throw std::invalid_argument("unknown policy '" + name + "' (lexicographic|random)");
}

int run_construct(const ConstructArgs& args) {
  const ConstructionId id = parse_construction_id(args.id);
  const Population pop = Population::from_counts(parse_counts(args.counts));
  std::optional<Rational> alpha;
  if (!args.alpha.empty()) alpha = parse_rational(args.alpha);

  Graph g = id == ConstructionId::dei_algo1
                ? dei_algorithm1(pop, parse_policy(args.policy), args.seed)
                : build_construction(id, pop, alpha);

  std::cout << "construction: " << construction_name(id) << '\n';
  std::cout << "n: " << g.n() << '\n';
  std::cout << "m: " << g.m() << '\n';
  for (const Model model : construction_models(id)) {
    const ValidityInterval interval = validity_interval(id, pop, model);
    std::cout << "stable_interval[" << model_name(model) << "]: " << interval.str() << '\n';
    if (alpha && !interval.contains(*alpha)) {
      std::cerr << "warning: alpha " << format_rational(*alpha) << " is outside the "
                << model_name(model) << " interval " << interval.str() << '\n';
    }
  }
  write_graph_file(args.out_path, g, pop);
  std::cout << "out: " << args.out_path << '\n';
  return 0;
}

// -------------------------------------------------------------- metrics ----

struct MetricsArgs {
  std::string graph_path;
  bool csv = false;
};

int run_metrics(const MetricsArgs& args) {
  const TypedGraph tg = read_graph_file(args.graph_path);
  const Graph& g = tg.graph;
  const Population& pop = tg.pop;

  std::optional<Rational> ls, gs;
  try {
    ls = local_segregation(g, pop);
  } catch (const std::domain_error&) {
  }
  try {
    gs = global_segregation(g, pop);
  } catch (const std::domain_error&) {
  }
  const std::size_t curious = curious_agents(g, pop).size();
  const std::size_t curious_type_count = curious_types(g, pop).size();
  const bool intra = is_fully_intra_connected(g, pop);
  const ExtInt diam = diameter(g);
  const std::string diam_text = diam.is_infinite() ? "inf" : std::to_string(diam.value());

  if (args.csv) {
    std::cout << "n,m,ls,gs,curious_agents,curious_types,fully_intra_connected,diameter\n";
    std::cout << g.n() << ',' << g.m() << ','
              << (ls ? format_double(to_double(*ls)) : std::string()) << ','
              << (gs ? format_double(to_double(*gs)) : std::string()) << ',' << curious << ','
              << curious_type_count << ',' << (intra ? '1' : '0') << ',' << diam_text << '\n';
    return 0;
  }
  std::cout << "n: " << g.n() << '\n';
  std::cout << "m: " << g.m() << '\n';
  if (ls)
    std::cout << "ls: " << format_rational(*ls) << " (" << format_double(to_double(*ls)) << ")\n";
  else
    std::cout << "ls: undefined (isolated agent)\n";
  if (gs)
    std::cout << "gs: " << format_rational(*gs) << " (" << format_double(to_double(*gs)) << ")\n";
  else
    std::cout << "gs: undefined (no edges)\n";
  std::cout << "curious_agents: " << curious << '\n';
  std::cout << "curious_types: " << curious_type_count << '\n';
  std::cout << "fully_intra_connected: " << yes_no(intra) << '\n';
  std::cout << "diameter: " << diam_text << '\n';
  return 0;
}

// ------------------------------------------------------------------ gen ----

struct GenArgs {
  std::string topology;
  std::string coloring;
  std::string counts;
  std::uint64_t seed = 0;
  int split_rows = -1;
  std::string out_path;
};

InitSpec make_init_spec(const std::string& topology, const std::string& coloring,
                        const std::string& counts, std::uint64_t seed, int split_rows) {
  const TopologyArg topo = parse_topology_arg(topology);
  InitSpec spec;
  spec.topology = topo.topology;
  spec.rows = topo.rows;
  spec.cols = topo.cols;
  spec.coloring = parse_coloring(coloring);
  spec.counts = parse_counts(counts);
  spec.seed = seed;
  if (split_rows >= 0) spec.split_rows = split_rows;
  return spec;
}

int run_gen(const GenArgs& args) {
  const InitSpec spec =
      make_init_spec(args.topology, args.coloring, args.counts, args.seed, args.split_rows);
  const TypedGraph tg = build_init(spec);
  std::cout << "topology: " << topology_name(spec.topology) << '\n';
  std::cout << "coloring: " << coloring_name(spec.coloring) << '\n';
  std::cout << "n: " << tg.graph.n() << '\n';
  std::cout << "m: " << tg.graph.m() << '\n';
  write_graph_file(args.out_path, tg.graph, tg.pop);
  std::cout << "out: " << args.out_path << '\n';
  return 0;
}

// ------------------------------------------------------------- simulate ----

struct SimulateArgs {
  std::string model;
  std::string alpha;
  std::string epsilon = "1";
  std::string mode = "best";
  std::string topology;
  std::string coloring;
  std::string counts;
  std::uint64_t seed = 0;
  std::int64_t max_steps = 5'000'000;
  std::int64_t stride = 0;
  int split_rows = -1;
  std::string timeline_path;
  std::string summary_path;
  std::string final_path;
};

int run_simulate(const SimulateArgs& args) {
  DynamicsConfig config;
  config.params = CostParams{parse_model(args.model), parse_rational(args.alpha)};
  config.params.validate();
  config.mode = parse_move_mode(args.mode);
  config.epsilon = parse_rational(args.epsilon);
  config.init =
      make_init_spec(args.topology, args.coloring, args.counts, args.seed, args.split_rows);
  config.max_steps = args.max_steps;
  config.sample_stride = args.stride;
  config.seed = args.seed;

  const RunRecord record = run_dynamics(config);

  if (!args.timeline_path.empty()) {
    auto out = open_output(args.timeline_path);
    write_timeline_csv(out, record.timeline);
  }
  if (!args.final_path.empty())
    write_graph_file(args.final_path, record.final_state.graph, record.final_state.pop);

  std::ostringstream summary;
  summary << "n: " << record.summary.n << '\n';
  summary << "m: " << record.summary.m << '\n';
  summary << "steps: " << record.steps_taken << '\n';
  summary << "applied_moves: " << record.applied_moves << '\n';
  summary << "converged: " << yes_no(record.converged) << '\n';
  summary << "final_ls: " << format_double(record.summary.ls) << '\n';
  summary << "final_gs: " << format_double(record.summary.gs) << '\n';
  summary << "diameter: " << record.summary.diameter << '\n';
  summary << "seed: " << record.seed << '\n';
  if (args.summary_path.empty()) {
    std::cout << summary.str();
  } else {
    auto out = open_output(args.summary_path);
    out << summary.str();
    std::cout << "summary: " << args.summary_path << '\n';
  }
  if (!args.timeline_path.empty()) std::cout << "timeline: " << args.timeline_path << '\n';
  if (!args.final_path.empty()) std::cout << "final_graph: " << args.final_path << '\n';
  return 0;
}

// ---------------------------------------------------------------- batch ----

int run_batch_cmd(const std::string& config_path) {
  BatchConfig config;
  try {
    config = load_batch_config_file(config_path);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  }
  BatchResult result;
  try {
    result = run_batch(config);
  } catch (const ConfigError& err) {
    std::cerr << "config error: " << err.what() << '\n';
    return 2;
  }

  std::int64_t total = 0;
  std::int64_t nonconverged = 0;
  for (const CellResult& cell : result.cells) {
    for (const RunRecord& run : cell.runs) {
      ++total;
      if (!run.converged) ++nonconverged;
    }
  }
  if (!config.summary_out.empty()) {
    auto out = open_output(config.summary_out);
    write_summary_csv(out, summary_rows(result));
    std::cout << "summary_csv: " << config.summary_out << '\n';
  }
  if (!config.stats_out.empty()) {
    auto out = open_output(config.stats_out);
    write_stats_csv(out, stats_rows(result));
    std::cout << "stats_csv: " << config.stats_out << '\n';
  }
  std::cout << "cells: " << result.cells.size() << '\n';
  std::cout << "runs: " << total << '\n';
  std::cout << "nonconverged: " << nonconverged << '\n';

  const double fraction = total == 0 ? 0.0 : static_cast<double>(nonconverged) / total;
  if (fraction > config.max_nonconverged_fraction) {
    std::cerr << "error: non-converged fraction " << format_double(fraction)
              << " exceeds budget " << format_double(config.max_nonconverged_fraction) << '\n';
    return 3;
  }
  return 0;
}

// ---------------------------------------------------------------- stats ----

int run_stats(const std::string& in_path, const std::string& out_path) {
  auto in = open_input(in_path);
  const std::vector<SummaryRow> rows = read_summary_csv(in);
  const std::vector<StatsRow> stats = stats_rows_from_summary(rows);
  auto out = open_output(out_path);
  write_stats_csv(out, stats);
  std::cout << "rows_in: " << rows.size() << '\n';
  std::cout << "rows_out: " << stats.size() << '\n';
  std::cout << "out: " << out_path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bilateral network formation with homophilic agents"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "homonet 1.0.0");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Check pairwise stability of a graph file");
  check->add_option("--graph", check_args.graph_path, "Graph JSON file")->required();
  check->add_option("--model", check_args.model, "Cost model: icf or dei")->required();
  check->add_option("--alpha", check_args.alpha, "Edge cost (decimal or fraction)")->required();
  check->add_option("--epsilon", check_args.epsilon,
                    "Approximation factor >= 1 (default 1: exact)");

  EnumerateArgs enum_args;
  auto* enumerate =
      app.add_subcommand("enumerate", "List all pairwise stable graphs on a population (n <= 8)");
  enumerate->add_option("--counts", enum_args.counts, "Type sizes, e.g. 2,3")->required();
  enumerate->add_option("--n", enum_args.n, "Total agents (validated against --counts)");
  enumerate->add_option("--model", enum_args.model, "Cost model: icf or dei")->required();
  enumerate->add_option("--alpha", enum_args.alpha, "Edge cost")->required();
  enumerate->add_option("--report", enum_args.report_path,
                        "Write each stable graph as one JSON line");

  ConstructArgs construct_args;
  auto* construct = app.add_subcommand("construct", "Build a catalogued stable network");
  construct->add_option("--id", construct_args.id, "Construction name (e.g. complete, star)")
      ->required();
  construct->add_option("--counts", construct_args.counts, "Type sizes")->required();
  construct->add_option("--alpha", construct_args.alpha,
                        "Edge cost; required by alpha-dependent constructions");
  construct->add_option("--policy", construct_args.policy,
                        "dei_algo1 pair selection: lexicographic or random");
  construct->add_option("--seed", construct_args.seed, "Seed for --policy random");
  construct->add_option("--out", construct_args.out_path, "Output graph file")->required();

  MetricsArgs metrics_args;
  auto* metrics = app.add_subcommand("metrics", "Print segregation metrics of a graph file");
  metrics->add_option("--graph", metrics_args.graph_path, "Graph JSON file")->required();
  metrics->add_flag("--csv", metrics_args.csv, "Emit a CSV header + row instead of a text block");

  GenArgs gen_args;
  auto* gen = app.add_subcommand("gen", "Generate a seeded initial network");
  gen->add_option("--topology", gen_args.topology, "tree or grid:RxC")->required();
  gen->add_option("--coloring", gen_args.coloring, "integrated or segregated")->required();
  gen->add_option("--counts", gen_args.counts, "Type sizes, e.g. 100,100")->required();
  gen->add_option("--seed", gen_args.seed, "RNG seed");
  gen->add_option("--split-rows", gen_args.split_rows,
                  "Rows given to the first type in a segregated grid (default rows/2)");
  gen->add_option("--out", gen_args.out_path, "Output graph file")->required();

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "Run seeded best-response dynamics");
  simulate->add_option("--model", sim_args.model, "Cost model: icf or dei")->required();
  simulate->add_option("--alpha", sim_args.alpha, "Edge cost")->required();
  simulate->add_option("--epsilon", sim_args.epsilon, "Approximation factor >= 1");
  simulate->add_option("--mode", sim_args.mode, "best or add-only");
  simulate->add_option("--topology", sim_args.topology, "tree or grid:RxC")->required();
  simulate->add_option("--coloring", sim_args.coloring, "integrated or segregated")->required();
  simulate->add_option("--counts", sim_args.counts, "Type sizes")->required();
  simulate->add_option("--seed", sim_args.seed, "RNG seed (also seeds the initial network)");
  simulate->add_option("--max-steps", sim_args.max_steps, "Activation budget");
  simulate->add_option("--stride", sim_args.stride,
                       "Timeline sampling stride (0 = one sample per ~n activations)");
  simulate->add_option("--split-rows", sim_args.split_rows, "Segregated grid split");
  simulate->add_option("--timeline", sim_args.timeline_path, "Timeline CSV output");
  simulate->add_option("--summary", sim_args.summary_path,
                       "Summary text output (default: stdout)");
  simulate->add_option("--final-graph", sim_args.final_path, "Write the terminal graph");

  std::string batch_config_path;
  auto* batch = app.add_subcommand("batch", "Run a replicated experiment grid");
  batch->add_option("--config", batch_config_path, "JSON config file")->required();

  std::string stats_in, stats_out;
  auto* stats = app.add_subcommand("stats", "Box stats per cell from a summary CSV");
  stats->add_option("--in", stats_in, "Per-run summary CSV")->required();
  stats->add_option("--out", stats_out, "Per-cell stats CSV")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) return run_check(check_args);
    if (enumerate->parsed()) return run_enumerate(enum_args);
    if (construct->parsed()) return run_construct(construct_args);
    if (metrics->parsed()) return run_metrics(metrics_args);
    if (gen->parsed()) return run_gen(gen_args);
    if (simulate->parsed()) return run_simulate(sim_args);
    if (batch->parsed()) return run_batch_cmd(batch_config_path);
    if (stats->parsed()) return run_stats(stats_in, stats_out);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return 2;
  }
  return 2;
}
