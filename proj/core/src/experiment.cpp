#include "homonet/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace homonet {

namespace {

constexpr const char* kSummaryHeader =
    "model,alpha,topology,coloring,mode,run,seed,steps,converged,final_ls,final_gs";
constexpr const char* kStatsHeader =
    "model,alpha,topology,coloring,mode,metric,min,q1,median,q3,max,count";

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

double parse_double_field(const std::string& text) {
  double value = 0.0;
  const auto* begin = text.data();
  const auto* end = text.data() + text.size();
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end) {
    throw std::invalid_argument("malformed float field: " + text);
  }
  return value;
}

std::string key_prefix(const CellKey& key) {
  return model_name(key.model) + "," + format_rational(key.alpha) + "," +
         topology_name(key.topology) + "," + coloring_name(key.coloring) + "," +
         move_mode_name(key.mode);
}

CellKey parse_key_fields(const std::vector<std::string>& fields) {
  CellKey key;
  key.model = parse_model(fields[0]);
  key.alpha = parse_rational(fields[1]);
  key.topology = parse_topology(fields[2]);
  key.coloring = parse_coloring(fields[3]);
  key.mode = parse_move_mode(fields[4]);
  return key;
}

std::vector<CellKey> enumerate_cells(const BatchConfig& config) {
  std::vector<CellKey> cells;
  for (const Model model : config.models) {
    for (const Rational& alpha : config.alphas) {
      for (const InitSpec::Topology topology : config.topologies) {
        for (const InitSpec::Coloring coloring : config.colorings) {
          for (const MoveMode mode : config.modes) {
            cells.push_back(CellKey{model, alpha, topology, coloring, mode});
          }
        }
      }
    }
  }
  return cells;
}

InitSpec init_spec_for(const BatchConfig& config, const CellKey& key, std::uint64_t seed) {
  InitSpec init;
  init.topology = key.topology;
  init.coloring = key.coloring;
  init.counts = config.counts;
  init.rows = config.rows;
  init.cols = config.cols;
  init.split_rows = config.split_rows;
  init.seed = seed;
  return init;
}

DynamicsConfig dynamics_config_for(const BatchConfig& config, const CellKey& key,
                                   std::uint64_t seed) {
  DynamicsConfig dc;
  dc.params.model = key.model;
  dc.params.alpha = key.alpha;
  dc.mode = key.mode;
  dc.epsilon = config.epsilon;
  dc.init = init_spec_for(config, key, seed);
  dc.max_steps = config.max_steps;
  dc.sample_stride = config.sample_stride;
  dc.seed = seed;
  return dc;
}

void validate(const BatchConfig& config) {
  const auto fail = [](const std::string& msg) { throw ConfigError("invalid config: " + msg); };
  if (config.models.empty()) fail("models must be non-empty");
  if (config.alphas.empty()) fail("alphas must be non-empty");
  if (config.topologies.empty()) fail("topologies must be non-empty");
  if (config.colorings.empty()) fail("colorings must be non-empty");
  if (config.modes.empty()) fail("modes must be non-empty");
  if (config.runs_per_cell < 1) fail("runs_per_cell must be >= 1");
  if (config.max_steps < 1) fail("max_steps must be >= 1");
  if (config.epsilon < 1) fail("epsilon must be >= 1");
  if (config.threads < 0) fail("threads must be >= 0");
  if (config.max_nonconverged_fraction < 0 || config.max_nonconverged_fraction > 1) {
    fail("max_nonconverged_fraction must lie in [0, 1]");
  }
  for (const Rational& alpha : config.alphas) {
    if (alpha <= 0) fail("alphas must be positive");
  }
  // Exercise each (topology, coloring) combination once so structural
  // problems (bad counts, grid shape) surface before any thread starts.
  for (const InitSpec::Topology topology : config.topologies) {
    for (const InitSpec::Coloring coloring : config.colorings) {
      CellKey probe;
      probe.topology = topology;
      probe.coloring = coloring;
      try {
        build_init(init_spec_for(config, probe, 0));
      } catch (const std::exception& e) {
        fail(std::string("cannot build ") + topology_name(topology) + "/" +
             coloring_name(coloring) + " initial network: " + e.what());
      }
    }
  }
}

Rational json_rational(const nlohmann::json& value, const std::string& field) {
  if (value.is_string()) return parse_rational(value.get<std::string>());
  if (value.is_number_integer()) return Rational(value.get<long long>());
  if (value.is_number_unsigned()) return Rational(value.get<unsigned long long>());
  throw ConfigError("field '" + field +
                    "' must be a string or integer (strings keep \"1.01\" exact; JSON floats "
                    "would not)");
}

}  // namespace

std::string move_mode_name(MoveMode mode) {
  return mode == MoveMode::full ? "best_move" : "add_only";
}

MoveMode parse_move_mode(const std::string& name) {
  if (name == "best_move" || name == "best") return MoveMode::full;
  if (name == "add_only" || name == "add-only") return MoveMode::add_only;
  throw std::invalid_argument("unknown mode: " + name);
}

BatchConfig load_batch_config(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  BatchConfig config;
  try {
    if (!j.is_object()) throw ConfigError("config root must be a JSON object");
    for (const auto& name : j.at("models")) {
      config.models.push_back(parse_model(name.get<std::string>()));
    }
    for (const auto& a : j.at("alphas")) config.alphas.push_back(json_rational(a, "alphas"));
    for (const auto& t : j.at("topologies")) {
      config.topologies.push_back(parse_topology(t.get<std::string>()));
    }
    for (const auto& c : j.at("colorings")) {
      config.colorings.push_back(parse_coloring(c.get<std::string>()));
    }
    for (const auto& m : j.at("modes")) {
      config.modes.push_back(parse_move_mode(m.get<std::string>()));
    }
    config.runs_per_cell = j.at("runs_per_cell").get<int>();
    config.counts = j.at("counts").get<std::vector<int>>();
    config.rows = j.value("rows", 0);
    config.cols = j.value("cols", 0);
    if (j.contains("split_rows")) config.split_rows = j.at("split_rows").get<int>();
    if (j.contains("epsilon")) config.epsilon = json_rational(j.at("epsilon"), "epsilon");
    config.base_seed = j.value("base_seed", std::uint64_t{0});
    config.max_steps = j.value("max_steps", std::int64_t{5'000'000});
    config.sample_stride = j.value("sample_stride", std::int64_t{0});
    config.threads = j.value("threads", 1);
    config.max_nonconverged_fraction = j.value("max_nonconverged_fraction", 0.0);
    config.summary_out = j.value("summary_out", std::string{});
    config.stats_out = j.value("stats_out", std::string{});
  } catch (const ConfigError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigError(std::string("invalid config: ") + e.what());
  }
  return config;
}

BatchConfig load_batch_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_batch_config(buffer.str());
}

BoxStats box_stats(std::vector<double> values) {
  if (values.empty()) throw std::invalid_argument("box stats need at least one value");
  std::sort(values.begin(), values.end());
  const auto quantile = [&](double p) {
    const double h = static_cast<double>(values.size() - 1) * p;
    const auto lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    if (lo + 1 >= values.size()) return values.back();
    return values[lo] + frac * (values[lo + 1] - values[lo]);
  };
  BoxStats stats;
  stats.min = values.front();
  stats.q1 = quantile(0.25);
  stats.median = quantile(0.5);
  stats.q3 = quantile(0.75);
  stats.max = values.back();
  stats.count = values.size();
  return stats;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t cell_index,
                          std::uint64_t run_index) {
  return combine_seed(combine_seed(base, cell_index), run_index);
}

BatchResult run_batch(const BatchConfig& config) {
  validate(config);
  const std::vector<CellKey> cells = enumerate_cells(config);
  const std::size_t runs = static_cast<std::size_t>(config.runs_per_cell);
  const std::size_t task_count = cells.size() * runs;

  std::vector<std::optional<RunRecord>> slots(task_count);
  const auto execute = [&](std::size_t task) {
    const std::size_t cell = task / runs;
    const std::size_t run = task % runs;
    const std::uint64_t seed = derive_seed(config.base_seed, cell, run);
    slots[task] = run_dynamics(dynamics_config_for(config, cells[cell], seed));
  };

  unsigned thread_count = config.threads == 0
                              ? std::max(1u, std::thread::hardware_concurrency())
                              : static_cast<unsigned>(config.threads);
  thread_count = std::min<unsigned>(thread_count, static_cast<unsigned>(task_count));
  if (thread_count <= 1) {
    for (std::size_t task = 0; task < task_count; ++task) execute(task);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> workers;
    workers.reserve(thread_count);
    for (unsigned t = 0; t < thread_count; ++t) {
      workers.emplace_back([&]() {
        while (true) {
          const std::size_t task = next.fetch_add(1);
          if (task >= task_count) return;
          try {
            execute(task);
          } catch (...) {
            std::lock_guard<std::mutex> lock(error_mutex);
            if (!first_error) first_error = std::current_exception();
            return;
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  BatchResult result;
  result.cells.reserve(cells.size());
  for (std::size_t c = 0; c < cells.size(); ++c) {
    CellResult cell;
    cell.key = cells[c];
    std::vector<double> ls_values;
    std::vector<double> gs_values;
    for (std::size_t r = 0; r < runs; ++r) {
      RunRecord& record = *slots[c * runs + r];
      ls_values.push_back(record.summary.ls);
      gs_values.push_back(record.summary.gs);
      cell.runs.push_back(std::move(record));
    }
    cell.ls_stats = box_stats(ls_values);
    cell.gs_stats = box_stats(gs_values);
    result.cells.push_back(std::move(cell));
  }
  return result;
}

std::vector<SummaryRow> summary_rows(const BatchResult& result) {
  std::vector<SummaryRow> rows;
  for (const CellResult& cell : result.cells) {
    for (std::size_t r = 0; r < cell.runs.size(); ++r) {
      const RunRecord& record = cell.runs[r];
      SummaryRow row;
      row.key = cell.key;
      row.run = static_cast<int>(r);
      row.seed = record.seed;
      row.steps = record.steps_taken;
      row.converged = record.converged;
      row.final_ls = record.summary.ls;
      row.final_gs = record.summary.gs;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<StatsRow> stats_rows(const BatchResult& result) {
  std::vector<StatsRow> rows;
  for (const CellResult& cell : result.cells) {
    rows.push_back(StatsRow{cell.key, "ls", cell.ls_stats});
    rows.push_back(StatsRow{cell.key, "gs", cell.gs_stats});
  }
  return rows;
}

std::vector<StatsRow> stats_rows_from_summary(const std::vector<SummaryRow>& rows) {
  if (rows.empty()) throw std::invalid_argument("stats_rows_from_summary: no rows");
  std::vector<std::string> order;
  std::map<std::string, std::pair<const CellKey*, std::pair<std::vector<double>, std::vector<double>>>>
      groups;
  for (const SummaryRow& row : rows) {
    const std::string prefix = key_prefix(row.key);
    auto [it, inserted] = groups.try_emplace(prefix);
    if (inserted) {
      order.push_back(prefix);
      it->second.first = &row.key;
    }
    it->second.second.first.push_back(row.final_ls);
    it->second.second.second.push_back(row.final_gs);
  }
  std::vector<StatsRow> out;
  out.reserve(2 * order.size());
  for (const std::string& prefix : order) {
    auto& [key, values] = groups.at(prefix);
    out.push_back(StatsRow{*key, "ls", box_stats(std::move(values.first))});
    out.push_back(StatsRow{*key, "gs", box_stats(std::move(values.second))});
  }
  return out;
}

std::string format_double(double value) {
  char buffer[32];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << kSummaryHeader << '\n';
  for (const SummaryRow& row : rows) {
    out << key_prefix(row.key) << ',' << row.run << ',' << row.seed << ',' << row.steps << ','
        << (row.converged ? '1' : '0') << ',' << format_double(row.final_ls) << ','
        << format_double(row.final_gs) << '\n';
  }
}

std::vector<SummaryRow> read_summary_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kSummaryHeader) {
    throw std::invalid_argument("missing or unexpected summary CSV header");
  }
  std::vector<SummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 11) {
      throw std::invalid_argument("summary row needs 11 fields, got " +
                                  std::to_string(fields.size()));
    }
    SummaryRow row;
    row.key = parse_key_fields(fields);
    row.run = std::stoi(fields[5]);
    row.seed = std::stoull(fields[6]);
    row.steps = std::stoll(fields[7]);
    if (fields[8] != "0" && fields[8] != "1") {
      throw std::invalid_argument("converged flag must be 0 or 1");
    }
    row.converged = fields[8] == "1";
    row.final_ls = parse_double_field(fields[9]);
    row.final_gs = parse_double_field(fields[10]);
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_stats_csv(std::ostream& out, const std::vector<StatsRow>& rows) {
  out << kStatsHeader << '\n';
  for (const StatsRow& row : rows) {
    out << key_prefix(row.key) << ',' << row.metric << ',' << format_double(row.stats.min) << ','
        << format_double(row.stats.q1) << ',' << format_double(row.stats.median) << ','
        << format_double(row.stats.q3) << ',' << format_double(row.stats.max) << ','
        << row.stats.count << '\n';
  }
}

std::vector<StatsRow> read_stats_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kStatsHeader) {
    throw std::invalid_argument("missing or unexpected stats CSV header");
  }
  std::vector<StatsRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 12) {
      throw std::invalid_argument("stats row needs 12 fields, got " +
                                  std::to_string(fields.size()));
    }
    StatsRow row;
    row.key = parse_key_fields(fields);
    row.metric = fields[5];
    row.stats.min = parse_double_field(fields[6]);
    row.stats.q1 = parse_double_field(fields[7]);
    row.stats.median = parse_double_field(fields[8]);
    row.stats.q3 = parse_double_field(fields[9]);
    row.stats.max = parse_double_field(fields[10]);
    row.stats.count = static_cast<std::size_t>(std::stoull(fields[11]));
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_timeline_csv(std::ostream& out, const std::vector<TimelinePoint>& timeline) {
  out << "step,ls,gs\n";
  for (const TimelinePoint& point : timeline) {
    out << point.step << ',' << format_double(point.ls) << ',' << format_double(point.gs)
        << '\n';
  }
}

}  // namespace homonet
