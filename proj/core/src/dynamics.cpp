#include "homonet/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "homonet/metrics.hpp"

namespace homonet {

namespace {

// Absolute tolerance on float cost gains. A candidate must clear its
// improvement threshold by more than this; borderline moves the float pass
// misses are recovered by the exact re-verification in run_dynamics.
constexpr double kGainTol = 1e-9;

std::int64_t default_stride(int n) {
  const std::int64_t blocks = (n + 231) / 232;
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(n) * blocks);
}

double segregation_ls(const TypedGraph& tg) { return local_segregation_f64(tg.graph, tg.pop); }
double segregation_gs(const TypedGraph& tg) { return global_segregation_f64(tg.graph, tg.pop); }

/// First exactly-improving move under the configured move set (agents
/// ascending), or nullopt when the state is stable for that move set. Unlike
/// is_approx_stable this respects add_only mode, so the re-verification can
/// never smuggle a deletion into an additions-only run.
std::optional<Move> exact_witness_move(const CostParams& params, const TypedGraph& tg,
                                       MoveMode mode, const Rational& epsilon) {
  DistanceMatrix dm;
  dm.refresh(tg.graph);
  HarmonicTable table;
  for (int u = 0; u < tg.graph.n(); ++u) {
    const Move m = best_response(params, tg.pop, tg.graph, dm, u, mode, epsilon, table);
    if (!m.is_pass()) return m;
  }
  return std::nullopt;
}

}  // namespace

DynamicsState::DynamicsState(const DynamicsConfig& config)
    : config_(config), rng_(config.seed), current_(build_init(config_.init, rng_)) {
  config_.params.validate();
  if (config_.epsilon < 1) throw std::invalid_argument("epsilon must be >= 1");
  if (config_.max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");

  const int n = current_.graph.n();
  if (n < 2) throw std::invalid_argument("dynamics needs at least two agents");
  dm_.refresh(current_.graph);
  if (distance_sum(dm_.rows[0]).is_infinite()) {
    throw std::invalid_argument("initial network is disconnected: all costs would be infinite");
  }
  marked_.assign(static_cast<std::size_t>(n), 1);
  marked_count_ = n;
  alpha_f64_ = to_double(config_.params.alpha);
  eps_f64_ = to_double(config_.epsilon);
}

void DynamicsState::mark_all() {
  std::fill(marked_.begin(), marked_.end(), 1);
  marked_count_ = current_.graph.n();
}

double DynamicsState::harmonic_f64(int e) const {
  while (static_cast<int>(harmonic_.size()) <= e) {
    if (harmonic_.empty()) harmonic_.push_back(0.0);
    harmonic_.push_back(harmonic_.back() + 1.0 / static_cast<double>(harmonic_.size()));
  }
  return harmonic_[static_cast<std::size_t>(e)];
}

double DynamicsState::total_cost_f64(int u) const {
  const NeighborhoodProfile p = neighborhood_profile(current_.graph, current_.pop, u);
  const double a =
      neighborhood_cost_t<double>(config_.params.model, alpha_f64_, p, harmonic_f64(p.other_type));
  std::int64_t dist_sum = 0;
  for (Dist d : dm_.rows[static_cast<std::size_t>(u)]) dist_sum += d;
  return a + static_cast<double>(dist_sum);
}

std::optional<double> DynamicsState::deletion_distance_increase(int u, int v,
                                                                double budget) const {
  const Graph& g = current_.graph;
  const int n = g.n();
  const auto& row_u = dm_.rows[static_cast<std::size_t>(u)];
  const auto& row_v = dm_.rows[static_cast<std::size_t>(v)];

  // Only agents whose every shortest path from u starts with the edge uv can
  // move further away; they all satisfy d(u,x) = 1 + d(v,x).
  if (new_dist_.size() < static_cast<std::size_t>(n)) new_dist_.resize(static_cast<std::size_t>(n));
  std::vector<int> affected;
  for (int x = 0; x < n; ++x) {
    if (row_u[static_cast<std::size_t>(x)] ==
        static_cast<Dist>(1 + row_v[static_cast<std::size_t>(x)])) {
      new_dist_[static_cast<std::size_t>(x)] = kUnreachable;
      affected.push_back(x);
    } else {
      new_dist_[static_cast<std::size_t>(x)] = row_u[static_cast<std::size_t>(x)];
    }
  }

  // Dial relaxation restricted to the affected set: every other agent keeps
  // its old distance and acts as a fixed-source anchor.
  if (buckets_.size() < static_cast<std::size_t>(n) + 2) {
    buckets_.resize(static_cast<std::size_t>(n) + 2);
  }
  int max_level = 0;
  auto push = [&](int node, int level) {
    buckets_[static_cast<std::size_t>(level)].push_back(node);
    max_level = std::max(max_level, level);
  };
  for (int a : affected) {
    Dist base = kUnreachable;
    for (int w : g.neighbors(a)) {
      if (a == v && w == u) continue;  // the deleted edge
      const Dist dw = new_dist_[static_cast<std::size_t>(w)];
      if (dw != kUnreachable && static_cast<Dist>(dw + 1) < base) {
        base = static_cast<Dist>(dw + 1);
      }
    }
    // Anchored neighbors in the affected set contribute later, via relaxation.
    if (base != kUnreachable && base < static_cast<Dist>(n)) {
      // store tentative level; dedupe happens at pop time
      if (base < new_dist_[static_cast<std::size_t>(a)]) {
        new_dist_[static_cast<std::size_t>(a)] = base;
        push(a, base);
      }
    }
  }

  double increase = 0.0;
  std::size_t settled = 0;
  for (int level = 0; level <= max_level; ++level) {
    auto& bucket = buckets_[static_cast<std::size_t>(level)];
    for (std::size_t i = 0; i < bucket.size(); ++i) {
      const int x = bucket[i];
      if (new_dist_[static_cast<std::size_t>(x)] != static_cast<Dist>(level)) continue;  // stale
      ++settled;
      increase += static_cast<double>(level) -
                  static_cast<double>(row_u[static_cast<std::size_t>(x)]);
      if (increase >= budget) {  // cannot qualify anymore; increments only grow
        for (int l = 0; l <= max_level; ++l) buckets_[static_cast<std::size_t>(l)].clear();
        return std::nullopt;
      }
      for (int y : g.neighbors(x)) {
        if (x == v && y == u) continue;
        auto& dy = new_dist_[static_cast<std::size_t>(y)];
        if (dy > static_cast<Dist>(level + 1)) {
          dy = static_cast<Dist>(level + 1);
          push(y, level + 1);
        }
      }
    }
    bucket.clear();
  }
  for (int l = 0; l <= max_level; ++l) buckets_[static_cast<std::size_t>(l)].clear();

  if (settled < affected.size()) return std::nullopt;  // deletion disconnects u's side
  return increase;
}

Move DynamicsState::best_float_move(int agent) const {
  const Graph& g = current_.graph;
  const Population& pop = current_.pop;
  const int n = g.n();
  const auto& row = dm_.rows[static_cast<std::size_t>(agent)];
  const NeighborhoodProfile p = neighborhood_profile(g, pop, agent);
  const Model model = config_.params.model;

  const double total = total_cost_f64(agent);
  // new * eps < old  <=>  gain > old * (eps - 1) / eps
  const double required_gain = total * (eps_f64_ - 1.0) / eps_f64_;

  double best_delta = std::numeric_limits<double>::infinity();
  Move best = Move::pass();

  if (config_.mode == MoveMode::full) {
    for (int v : g.neighbors(agent)) {
      const EdgeKind kind = pop.same_type(agent, v) ? EdgeKind::mono : EdgeKind::bi;
      const double gain_neigh =
          -delta_neighborhood_t<double>(model, alpha_f64_, p, kind, EdgeAction::remove);
      const double budget = gain_neigh - required_gain - kGainTol;
      if (budget <= 1.0) continue;  // distances increase by at least 1
      const auto inc = deletion_distance_increase(agent, v, budget);
      if (!inc) continue;  // disconnects or cannot qualify
      const double delta = *inc - gain_neigh;
      if (delta < best_delta) {
        best_delta = delta;
        best = Move::remove(agent, v);
      }
    }
  }

  const double delta_mono =
      delta_neighborhood_t<double>(model, alpha_f64_, p, EdgeKind::mono, EdgeAction::add);
  const double delta_bi =
      delta_neighborhood_t<double>(model, alpha_f64_, p, EdgeKind::bi, EdgeAction::add);
  const double theta_mono = delta_mono + required_gain + kGainTol;
  const double theta_bi = delta_bi + required_gain + kGainTol;

  // Distance gain of any single addition is at most S = sum (d(agent,x)-1)+.
  std::int64_t reach_slack = 0;
  for (Dist d : row) {
    if (d > 1) reach_slack += d - 1;
  }
  const double s_u = static_cast<double>(reach_slack);
  if (s_u > theta_mono || s_u > theta_bi) {
    for (int v = 0; v < n; ++v) {
      if (v == agent || row[static_cast<std::size_t>(v)] == 1) continue;
      const EdgeKind kind = pop.same_type(agent, v) ? EdgeKind::mono : EdgeKind::bi;
      const double theta = kind == EdgeKind::mono ? theta_mono : theta_bi;
      if (s_u <= theta) continue;
      const auto& row_v = dm_.rows[static_cast<std::size_t>(v)];
      std::int64_t gain_uv = 0;
      for (int x = 0; x < n; ++x) {
        const int diff = static_cast<int>(row[static_cast<std::size_t>(x)]) - 1 -
                         static_cast<int>(row_v[static_cast<std::size_t>(x)]);
        if (diff > 0) gain_uv += diff;
      }
      if (static_cast<double>(gain_uv) <= theta) continue;
      // Bilateral consent: the partner must strictly improve (factor 1).
      const NeighborhoodProfile pv = neighborhood_profile(g, pop, v);
      const double delta_v =
          delta_neighborhood_t<double>(model, alpha_f64_, pv, kind, EdgeAction::add);
      std::int64_t gain_vu = 0;
      for (int x = 0; x < n; ++x) {
        const int diff = static_cast<int>(row_v[static_cast<std::size_t>(x)]) - 1 -
                         static_cast<int>(row[static_cast<std::size_t>(x)]);
        if (diff > 0) gain_vu += diff;
      }
      if (static_cast<double>(gain_vu) - delta_v <= kGainTol) continue;
      const double delta =
          (kind == EdgeKind::mono ? delta_mono : delta_bi) - static_cast<double>(gain_uv);
      if (delta < best_delta) {
        best_delta = delta;
        best = Move::add(agent, v);
      }
    }
  }

  return best;
}

void DynamicsState::force_exact_move(const Move& move) {
  ++steps_;
  apply(move);
}

void DynamicsState::apply(const Move& move) {
  if (move.kind == Move::Kind::add) {
    current_.graph.add_edge(move.u, move.v);
    dm_.apply_add(move.u, move.v);
  } else {
    current_.graph.delete_edge(move.u, move.v);
    dm_.refresh(current_.graph);
  }
  ++applied_;
  mark_all();
}

StepResult DynamicsState::step() {
  StepResult result;
  if (marked_count_ == 0) {
    result.terminal = true;
    return result;
  }
  std::uint64_t pick = rng_.bounded(static_cast<std::uint64_t>(marked_count_));
  int agent = -1;
  for (int i = 0; i < current_.graph.n(); ++i) {
    if (marked_[static_cast<std::size_t>(i)] && pick-- == 0) {
      agent = i;
      break;
    }
  }
  ++steps_;
  result.agent = agent;
  result.move = best_float_move(agent);
  if (result.move.is_pass()) {
    marked_[static_cast<std::size_t>(agent)] = 0;
    --marked_count_;
  } else {
    apply(result.move);
    result.applied = true;
  }
  return result;
}

RunRecord run_dynamics(const DynamicsConfig& config) {
  DynamicsState st(config);
  const int n = st.state().graph.n();
  const std::int64_t stride =
      config.sample_stride > 0 ? config.sample_stride : default_stride(n);

  std::vector<TimelinePoint> timeline;
  timeline.push_back(TimelinePoint{0, segregation_ls(st.state()), segregation_gs(st.state())});

  const auto sample_if_due = [&]() {
    if (st.steps_taken() % stride == 0) {
      timeline.push_back(TimelinePoint{st.steps_taken(), segregation_ls(st.state()),
                                       segregation_gs(st.state())});
    }
  };

  while (!st.terminal() && st.steps_taken() < config.max_steps) {
    st.step();
    sample_if_due();
  }

  // The float engine may skip a move whose exact margin is inside the float
  // tolerance. Re-verify exactly; if a witness exists, apply it (one exact
  // activation), and let the float engine drain the re-marked agents again.
  while (st.terminal() && st.steps_taken() < config.max_steps) {
    const auto witness =
        exact_witness_move(config.params, st.state(), config.mode, config.epsilon);
    if (!witness) break;
    st.force_exact_move(*witness);
    sample_if_due();
    while (!st.terminal() && st.steps_taken() < config.max_steps) {
      st.step();
      sample_if_due();
    }
  }

  if (timeline.back().step != st.steps_taken()) {
    timeline.push_back(TimelinePoint{st.steps_taken(), segregation_ls(st.state()),
                                     segregation_gs(st.state())});
  }
  GraphSummary summary{n, static_cast<long>(st.state().graph.m()), timeline.back().ls,
                       timeline.back().gs, diameter(st.state().graph).value()};
  return RunRecord{std::move(timeline), summary,          st.state(),
                   st.terminal(),       st.steps_taken(), st.applied_moves(),
                   config.seed};
}

}  // namespace homonet
