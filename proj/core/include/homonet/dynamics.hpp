#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "homonet/cost.hpp"
#include "homonet/distance.hpp"
#include "homonet/generators.hpp"
#include "homonet/graph.hpp"
#include "homonet/graph_io.hpp"
#include "homonet/population.hpp"
#include "homonet/rng.hpp"
#include "homonet/stability.hpp"

namespace homonet {

/// Random-activation improvement dynamics: all agents start marked; each step
/// activates a uniformly chosen marked agent, which plays its best improving
/// move (by more than factor epsilon) or passes. A pass unmarks the agent; an
/// applied move re-marks everyone. The process stops when nobody is marked.
struct DynamicsConfig {
  CostParams params;
  MoveMode mode = MoveMode::full;
  Rational epsilon = 1;  // >= 1
  InitSpec init;
  std::int64_t max_steps = 5'000'000;
  std::int64_t sample_stride = 0;  // 0: auto = n * ceil(n / 232)
  std::uint64_t seed = 0;          // drives init AND activation from one stream
};

struct TimelinePoint {
  std::int64_t step = 0;
  double ls = 0.0;
  double gs = 0.0;
};

struct GraphSummary {
  int n = 0;
  long m = 0;
  double ls = 0.0;
  double gs = 0.0;
  std::int64_t diameter = 0;
};

struct RunRecord {
  std::vector<TimelinePoint> timeline;
  GraphSummary summary;
  TypedGraph final_state;
  bool converged = false;
  std::int64_t steps_taken = 0;
  std::int64_t applied_moves = 0;
  std::uint64_t seed = 0;
};

/// One activation's outcome (exposed for testing).
struct StepResult {
  bool terminal = false;  // marked set was empty; nothing happened
  bool applied = false;   // false means the chosen agent passed
  int agent = -1;
  Move move = Move::pass();
};

/// Incremental driver for the process. Candidate evaluation runs in floating
/// point (absolute tolerance 1e-9 on cost gains) against a maintained
/// all-pairs distance matrix; additions update the matrix in closed form and
/// deletions trigger a BFS refresh. `run` re-verifies the converged state
/// with exact arithmetic and resumes if the float pass missed a move.
class DynamicsState {
 public:
  explicit DynamicsState(const DynamicsConfig& config);

  StepResult step();

  bool terminal() const { return marked_count_ == 0; }
  const TypedGraph& state() const { return current_; }
  std::int64_t steps_taken() const { return steps_; }
  std::int64_t applied_moves() const { return applied_; }
  int marked_count() const { return marked_count_; }
  void mark_all();

  /// Best improving move for `agent` under the float engine, or Pass.
  /// Exposed so tests can compare against the exact-arithmetic oracle.
  Move best_float_move(int agent) const;

  /// Apply a move found by the exact checker (counts as one activation and
  /// re-marks everyone). Used when the float pass misses a borderline move.
  void force_exact_move(const Move& move);

 private:
  struct Candidate {
    double delta;  // total-cost change for the mover (negative = improvement)
    Move move;
  };

  double total_cost_f64(int u) const;
  double harmonic_f64(int e) const;
  std::optional<double> deletion_distance_increase(int u, int v, double budget) const;
  void apply(const Move& move);

  DynamicsConfig config_;
  Xoshiro256ss rng_;     // initialized before current_: init draws come first
  TypedGraph current_;   // built from the same stream the activations use
  DistanceMatrix dm_;
  std::vector<char> marked_;
  int marked_count_ = 0;
  std::int64_t steps_ = 0;
  std::int64_t applied_ = 0;
  double alpha_f64_ = 0.0;
  double eps_f64_ = 1.0;
  mutable std::vector<double> harmonic_;
  // Scratch for deletion evaluation (Dial buckets over distance levels).
  mutable std::vector<std::vector<int>> buckets_;
  mutable std::vector<Dist> new_dist_;
};

/// Execute the full protocol; throws std::invalid_argument when the initial
/// network is disconnected (all costs would be infinite).
RunRecord run_dynamics(const DynamicsConfig& config);

}  // namespace homonet
