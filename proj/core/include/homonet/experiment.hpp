#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homonet/dynamics.hpp"

namespace homonet {

std::string move_mode_name(MoveMode mode);
MoveMode parse_move_mode(const std::string& name);

/// Cartesian batch over model x alpha x topology x coloring x mode (cells
/// nested in exactly that order; the linear cell index feeds seed derivation).
struct BatchConfig {
  std::vector<Model> models;
  std::vector<Rational> alphas;
  std::vector<InitSpec::Topology> topologies;
  std::vector<InitSpec::Coloring> colorings;
  std::vector<MoveMode> modes;
  int runs_per_cell = 1;
  std::vector<int> counts;
  int rows = 0;  // grid topologies only
  int cols = 0;
  std::optional<int> split_rows;  // segregated grid; default rows/2
  Rational epsilon = 1;
  std::uint64_t base_seed = 0;
  std::int64_t max_steps = 5'000'000;
  std::int64_t sample_stride = 0;
  int threads = 1;  // 0 = hardware concurrency
  double max_nonconverged_fraction = 0.0;
  std::string summary_out;  // per-run CSV path; empty = do not write
  std::string stats_out;    // per-cell box-stats CSV path; empty = do not write
};

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parse a JSON config (field names match BatchConfig). Alphas and epsilon
/// must be strings or integers so they stay exact ("1.01" -> 101/100); JSON
/// floats are rejected. Throws ConfigError with the offending field.
BatchConfig load_batch_config(const std::string& json_text);
BatchConfig load_batch_config_file(const std::string& path);

/// Five-number summary. Quartiles use linear interpolation between closest
/// ranks on the sorted sample (the "type 7" convention): at probability p the
/// value is x[floor(h)] + (h - floor(h)) * (x[floor(h)+1] - x[floor(h)]) with
/// h = (count-1) * p.
struct BoxStats {
  double min = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double max = 0.0;
  std::size_t count = 0;
};

BoxStats box_stats(std::vector<double> values);  // throws on empty input

/// Avalanche mix of (base, cell, run) into a per-run seed; pure integer
/// arithmetic, platform independent.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell_index, std::uint64_t run_index);

struct CellKey {
  Model model = Model::icf;
  Rational alpha;
  InitSpec::Topology topology = InitSpec::Topology::random_tree;
  InitSpec::Coloring coloring = InitSpec::Coloring::integrated;
  MoveMode mode = MoveMode::full;
};

struct CellResult {
  CellKey key;
  std::vector<RunRecord> runs;  // indexed by run number
  BoxStats ls_stats;
  BoxStats gs_stats;
};

struct BatchResult {
  std::vector<CellResult> cells;  // in cell-index order
};

/// Execute every (cell, run) pair; work is distributed over config.threads
/// threads but results are aggregated by index, so output is identical to a
/// sequential execution. Throws ConfigError on an invalid config.
BatchResult run_batch(const BatchConfig& config);

/// One row of the per-run summary CSV (schema:
/// model,alpha,topology,coloring,mode,run,seed,steps,converged,final_ls,final_gs).
struct SummaryRow {
  CellKey key;
  int run = 0;
  std::uint64_t seed = 0;
  std::int64_t steps = 0;
  bool converged = false;
  double final_ls = 0.0;
  double final_gs = 0.0;
};

/// One row of the per-cell stats CSV (schema:
/// model,alpha,topology,coloring,mode,metric,min,q1,median,q3,max,count).
struct StatsRow {
  CellKey key;
  std::string metric;  // "ls" or "gs"
  BoxStats stats;
};

std::vector<SummaryRow> summary_rows(const BatchResult& result);
std::vector<StatsRow> stats_rows(const BatchResult& result);

/// Regroup per-run rows (e.g. read back from a summary CSV) by cell key, in
/// first-appearance order, and compute five-number summaries of final_ls and
/// final_gs per cell. Throws on an empty input.
std::vector<StatsRow> stats_rows_from_summary(const std::vector<SummaryRow>& rows);

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);
std::vector<SummaryRow> read_summary_csv(std::istream& in);
void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows);
std::vector<StatsRow> read_stats_csv(std::istream& in);
void write_timeline_csv(std::ostream& out, const std::vector<TimelinePoint>& timeline);

/// Shortest round-trip decimal rendering (std::to_chars), the float format
/// used in every CSV.
std::string format_double(double value);

}  // namespace homonet
