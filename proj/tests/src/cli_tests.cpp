#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "homonet/experiment.hpp"
#include "homonet/graph_io.hpp"
#include "homonet/metrics.hpp"

using namespace homonet;
namespace fs = std::filesystem;

namespace {

// Scratch directory shared by all cases in this binary, removed at exit.
const fs::path& scratch_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("homonet_cli_" + std::to_string(static_cast<long>(::getpid())));
    fs::create_directories(d);
    static struct Cleanup {
      fs::path path;
      ~Cleanup() {
        std::error_code ec;
        fs::remove_all(path, ec);
      }
    } cleanup{d};
    return d;
  }();
  return dir;
}

std::string path_in_scratch(const std::string& name) { return (scratch_dir() / name).string(); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(in), "cannot read " << path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  REQUIRE_MESSAGE(bool(out), "cannot write " << path);
  out << content;
}

struct CliResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

// Runs the binary under test with the given arguments, capturing both streams.
CliResult run_cli(const std::string& args) {
  static int invocation = 0;
  const std::string out_path = path_in_scratch("stdout_" + std::to_string(invocation));
  const std::string err_path = path_in_scratch("stderr_" + std::to_string(invocation));
  ++invocation;
  const std::string command =
      std::string(HOMONET_CLI_PATH) + " " + args + " > " + out_path + " 2> " + err_path;
  const int status = std::system(command.c_str());
  CliResult result;
  REQUIRE(status != -1);
  REQUIRE(WIFEXITED(status));
  result.exit_code = WEXITSTATUS(status);
  result.out = read_file(out_path);
  result.err = read_file(err_path);
  return result;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("version flag reports the tool identity") {
  const CliResult r = run_cli("--version");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "homonet 1.0.0"));
}

TEST_CASE("missing required options exit with the usage error code") {
  CHECK(run_cli("check").exit_code == 106);                       // no --graph/--model/--alpha
  CHECK(run_cli("construct --id complete").exit_code == 106);     // no --counts/--out
  CHECK(run_cli("").exit_code == 106);                            // no subcommand at all
}

TEST_CASE("check distinguishes stable from unstable graphs by exit code") {
  const std::string graph = path_in_scratch("complete.json");
  const CliResult built =
      run_cli("construct --id complete --counts 2,3 --alpha 1/2 --out " + graph);
  REQUIRE(built.exit_code == 0);
  CHECK(contains(built.out, "construction: complete"));
  CHECK(contains(built.out, "n: 5"));
  CHECK(contains(built.out, "m: 10"));

  SUBCASE("inside the stable interval") {
    const CliResult r = run_cli("check --graph " + graph + " --model icf --alpha 1/2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "stable: true"));
  }
  SUBCASE("price too high: some clique edge is worth dropping") {
    const CliResult r = run_cli("check --graph " + graph + " --model icf --alpha 9/10");
    CHECK(r.exit_code == 1);
    CHECK(contains(r.out, "stable: false"));
    CHECK(contains(r.out, "agent: "));
    CHECK(contains(r.out, "move: "));
    CHECK(contains(r.out, "delta_agent: "));
  }
  SUBCASE("a generous approximation factor forgives the same instability") {
    const CliResult r =
        run_cli("check --graph " + graph + " --model icf --alpha 9/10 --epsilon 2");
    CHECK(r.exit_code == 0);
    CHECK(contains(r.out, "stable: true"));
  }
  SUBCASE("nonsense model is a usage error") {
    const CliResult r = run_cli("check --graph " + graph + " --model foo --alpha 1/2");
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "error:"));
  }
}

TEST_CASE("construct then metrics pipeline agrees with the library") {
  const std::string graph = path_in_scratch("star.json");
  REQUIRE(run_cli("construct --id star --counts 2,3 --out " + graph).exit_code == 0);

  const TypedGraph tg = read_graph_file(graph);
  const CliResult csv = run_cli("metrics --graph " + graph + " --csv");
  REQUIRE(csv.exit_code == 0);
  std::istringstream lines(csv.out);
  std::string header, row;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK(header == "n,m,ls,gs,curious_agents,curious_types,fully_intra_connected,diameter");
  const std::string expected_row =
      std::to_string(tg.graph.n()) + "," + std::to_string(tg.graph.m()) + "," +
      format_double(local_segregation_f64(tg.graph, tg.pop)) + "," +
      format_double(global_segregation_f64(tg.graph, tg.pop)) + "," +
      std::to_string(curious_agents(tg.graph, tg.pop).size()) + "," +
      std::to_string(curious_types(tg.graph, tg.pop).size()) + "," +
      (is_fully_intra_connected(tg.graph, tg.pop) ? "1" : "0") + "," +
      std::to_string(diameter(tg.graph).value());
  CHECK(row == expected_row);

  const CliResult text = run_cli("metrics --graph " + graph);
  CHECK(text.exit_code == 0);
  CHECK(contains(text.out, "ls: 1/4 (0.25)"));
  CHECK(contains(text.out, "gs: 1/4 (0.25)"));
  CHECK(contains(text.out, "diameter: 2"));
}

TEST_CASE("enumerate reports the unique dense equilibrium on five agents") {
  const CliResult r = run_cli("enumerate --counts 2,3 --model icf --alpha 1/2");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.out, "searched: 1024"));
  CHECK(contains(r.out, "stable_count: 1"));
  CHECK(contains(r.out, "stable[0]: m=10"));
}

TEST_CASE("gen is deterministic per seed and writes loadable graphs") {
  const std::string a = path_in_scratch("gen_a.json");
  const std::string b = path_in_scratch("gen_b.json");
  const std::string c = path_in_scratch("gen_c.json");
  REQUIRE(run_cli("gen --topology tree --coloring integrated --counts 10,15 --seed 7 --out " +
                  a).exit_code == 0);
  REQUIRE(run_cli("gen --topology tree --coloring integrated --counts 10,15 --seed 7 --out " +
                  b).exit_code == 0);
  REQUIRE(run_cli("gen --topology tree --coloring integrated --counts 10,15 --seed 8 --out " +
                  c).exit_code == 0);
  CHECK(read_file(a) == read_file(b));
  CHECK(read_file(a) != read_file(c));

  const TypedGraph tg = read_graph_file(a);
  CHECK(tg.graph.n() == 25);
  CHECK(tg.graph.m() == 24);

  const std::string grid = path_in_scratch("gen_grid.json");
  const CliResult g = run_cli(
      "gen --topology grid:2x5 --coloring segregated --counts 5,5 --split-rows 1 --out " + grid);
  REQUIRE(g.exit_code == 0);
  CHECK(contains(g.out, "topology: grid"));
  const TypedGraph gg = read_graph_file(grid);
  CHECK(gg.graph.n() == 10);
  CHECK(gg.graph.m() == 13);  // 2x5 grid: 5 + 8 lattice edges
}

TEST_CASE("simulate converges and its terminal graph passes an exact check") {
  const std::string final_graph = path_in_scratch("final.json");
  const std::string timeline = path_in_scratch("timeline.csv");
  const CliResult r = run_cli(
      "simulate --model icf --alpha 1/2 --topology tree --coloring integrated --counts 4,4 "
      "--seed 5 --timeline " +
      timeline + " --final-graph " + final_graph);
  REQUIRE(r.exit_code == 0);
  CHECK(contains(r.out, "converged: true"));
  CHECK(contains(r.out, "seed: 5"));

  const std::string tl = read_file(timeline);
  CHECK(tl.rfind("step,ls,gs\n", 0) == 0);

  const CliResult check = run_cli("check --graph " + final_graph + " --model icf --alpha 1/2");
  CHECK(check.exit_code == 0);  // converged at epsilon 1 means exactly stable
}

TEST_CASE("construct with the randomized policy is seed-deterministic") {
  const std::string a = path_in_scratch("algo1_a.json");
  const std::string b = path_in_scratch("algo1_b.json");
  REQUIRE(run_cli("construct --id dei_algo1 --counts 2,3,5 --policy random --seed 11 --out " +
                  a).exit_code == 0);
  REQUIRE(run_cli("construct --id dei_algo1 --counts 2,3,5 --policy random --seed 11 --out " +
                  b).exit_code == 0);
  CHECK(read_file(a) == read_file(b));
}

TEST_CASE("batch surfaces config errors, budget violations, and writes its CSVs") {
  SUBCASE("malformed config file exits 2") {
    const std::string cfg = path_in_scratch("bad.json");
    write_file(cfg, "{ not json");
    const CliResult r = run_cli("batch --config " + cfg);
    CHECK(r.exit_code == 2);
    CHECK(contains(r.err, "config error"));
  }
  SUBCASE("float alpha exits 2") {
    const std::string cfg = path_in_scratch("float_alpha.json");
    write_file(cfg, R"({"models":["icf"],"alphas":[1.01],"topologies":["random_tree"],
      "colorings":["integrated"],"modes":["best_move"],"runs_per_cell":1,"counts":[3,3]})");
    CHECK(run_cli("batch --config " + cfg).exit_code == 2);
  }
  SUBCASE("nonconvergence budget enforcement") {
    const std::string strict = path_in_scratch("strict.json");
    write_file(strict, R"({"models":["icf"],"alphas":["1/2"],"topologies":["random_tree"],
      "colorings":["integrated"],"modes":["best_move"],"runs_per_cell":2,"counts":[3,3],
      "base_seed":7,"max_steps":1})");
    const CliResult r = run_cli("batch --config " + strict);
    CHECK(r.exit_code == 3);
    CHECK(contains(r.out, "nonconverged: 2"));
    CHECK(contains(r.err, "exceeds budget"));

    const std::string lenient = path_in_scratch("lenient.json");
    write_file(lenient, R"({"models":["icf"],"alphas":["1/2"],"topologies":["random_tree"],
      "colorings":["integrated"],"modes":["best_move"],"runs_per_cell":2,"counts":[3,3],
      "base_seed":7,"max_steps":1,"max_nonconverged_fraction":1.0})");
    CHECK(run_cli("batch --config " + lenient).exit_code == 0);
  }
  SUBCASE("summary and stats files round-trip through the stats subcommand") {
    const std::string summary = path_in_scratch("runs.csv");
    const std::string stats = path_in_scratch("cells.csv");
    const std::string cfg = path_in_scratch("grid.json");
    write_file(cfg, R"({"models":["icf","dei"],"alphas":["1/2","3"],
      "topologies":["random_tree"],"colorings":["integrated"],"modes":["best_move"],
      "runs_per_cell":3,"counts":[3,3],"base_seed":20240817,
      "summary_out":")" + summary + R"(","stats_out":")" + stats + R"("})");
    const CliResult r = run_cli("batch --config " + cfg);
    REQUIRE(r.exit_code == 0);
    CHECK(contains(r.out, "cells: 4"));
    CHECK(contains(r.out, "runs: 12"));
    CHECK(contains(r.out, "nonconverged: 0"));

    // Recomputing per-cell stats from the per-run CSV reproduces the batch's
    // own stats file byte for byte.
    const std::string recomputed = path_in_scratch("cells2.csv");
    const CliResult s = run_cli("stats --in " + summary + " --out " + recomputed);
    REQUIRE(s.exit_code == 0);
    CHECK(contains(s.out, "rows_in: 12"));
    CHECK(contains(s.out, "rows_out: 8"));
    CHECK(read_file(recomputed) == read_file(stats));

    // And a re-run of the same batch reproduces the summary byte for byte.
    const std::string summary2 = path_in_scratch("runs2.csv");
    const std::string cfg2 = path_in_scratch("grid2.json");
    write_file(cfg2, R"({"models":["icf","dei"],"alphas":["1/2","3"],
      "topologies":["random_tree"],"colorings":["integrated"],"modes":["best_move"],
      "runs_per_cell":3,"counts":[3,3],"base_seed":20240817,"threads":4,
      "summary_out":")" + summary2 + R"("})");
    REQUIRE(run_cli("batch --config " + cfg2).exit_code == 0);
    CHECK(read_file(summary2) == read_file(summary));
  }
}
