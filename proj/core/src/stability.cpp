#include "homonet/stability.hpp"

#include <stdexcept>

namespace homonet {
namespace {

void check_epsilon(const Rational& epsilon) {
  if (epsilon < 1) throw std::invalid_argument("epsilon must be >= 1");
}

// Mover-side test of the improvement rule given the old finite-part total and
// the move's delta. `old_infinite` = u had unreachable agents before.
bool improves_by_factor(const Rational& old_total, bool old_infinite, const CostDelta& delta,
                        const Rational& epsilon) {
  switch (delta.kind) {
    case DistDelta::Kind::reconnect:
      return true;
    case DistDelta::Kind::disconnect:
      return false;
    case DistDelta::Kind::finite:
      break;
  }
  if (old_infinite) return false;  // reachable set unchanged and still short
  return (old_total + delta.value) * epsilon < old_total;
}

}  // namespace

std::vector<MoveOption> available_moves(const CostParams& params, const Population& pop,
                                        const Graph& g, const DistanceMatrix& distances, int u,
                                        MoveMode mode, const Rational& epsilon,
                                        HarmonicTable& table) {
  params.validate();
  check_epsilon(epsilon);
  const int n = g.n();
  const NeighborhoodProfile prof_u = neighborhood_profile(g, pop, u);
  const ExtInt dist_u = distance_sum(distances.rows[u]);
  const bool inf_u = dist_u.is_infinite();
  // Finite part of the total; when inf_u only the reconnect rule can fire, so
  // the value is never consulted.
  const Rational total_u =
      neighborhood_cost(params, prof_u, table) + Rational(inf_u ? 0 : dist_u.value());

  std::vector<MoveOption> options;

  if (mode == MoveMode::full) {
    for (int v : g.neighbors(u)) {
      const EdgeKind kind = pop.same_type(u, v) ? EdgeKind::mono : EdgeKind::bi;
      const Rational dn = delta_neighborhood(params, prof_u, kind, EdgeAction::remove);
      const DistDelta dd = delta_distance_delete(g, u, v);
      CostDelta delta{dd.kind, Rational(0)};
      if (dd.kind == DistDelta::Kind::finite) delta.value = dn + Rational(dd.value);
      if (improves_by_factor(total_u, inf_u, delta, epsilon)) {
        options.push_back(MoveOption{Move::remove(u, v), delta, std::nullopt});
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    if (v == u || g.has_edge(u, v)) continue;
    const EdgeKind kind = pop.same_type(u, v) ? EdgeKind::mono : EdgeKind::bi;
    const Rational dn_u = delta_neighborhood(params, prof_u, kind, EdgeAction::add);
    const DistDelta dd_u = delta_distance_add(distances.rows[u], distances.rows[v]);
    CostDelta delta_u{dd_u.kind, Rational(0)};
    if (dd_u.kind == DistDelta::Kind::finite) delta_u.value = dn_u + Rational(dd_u.value);
    if (!improves_by_factor(total_u, inf_u, delta_u, epsilon)) continue;

    // Partner consent: v must strictly improve (factor 1).
    const NeighborhoodProfile prof_v = neighborhood_profile(g, pop, v);
    const Rational dn_v = delta_neighborhood(params, prof_v, kind, EdgeAction::add);
    const DistDelta dd_v = delta_distance_add(distances.rows[v], distances.rows[u]);
    CostDelta delta_v{dd_v.kind, Rational(0)};
    if (dd_v.kind == DistDelta::Kind::finite) delta_v.value = dn_v + Rational(dd_v.value);
    const ExtInt dist_v = distance_sum(distances.rows[v]);
    const Rational total_v = neighborhood_cost(params, prof_v, table) +
                             Rational(dist_v.is_infinite() ? 0 : dist_v.value());
    if (!improves_by_factor(total_v, dist_v.is_infinite(), delta_v, Rational(1))) continue;

    options.push_back(MoveOption{Move::add(u, v), delta_u, delta_v});
  }
  return options;
}

namespace {

// reconnect < finite (by value) < disconnect
bool delta_less(const CostDelta& a, const CostDelta& b) {
  auto rank = [](const CostDelta& d) {
    return d.kind == DistDelta::Kind::reconnect ? 0 : d.kind == DistDelta::Kind::finite ? 1 : 2;
  };
  if (rank(a) != rank(b)) return rank(a) < rank(b);
  if (a.kind != DistDelta::Kind::finite) return false;
  return a.value < b.value;
}

}  // namespace

Move best_response(const CostParams& params, const Population& pop, const Graph& g,
                   const DistanceMatrix& distances, int u, MoveMode mode,
                   const Rational& epsilon, HarmonicTable& table) {
  const auto options = available_moves(params, pop, g, distances, u, mode, epsilon, table);
  if (options.empty()) return Move::pass();
  // Options are generated deletions-first with ascending partners, which is
  // exactly the tie order; keep the first strictly-best one.
  const MoveOption* best = &options.front();
  for (const auto& opt : options) {
    if (delta_less(opt.delta_u, best->delta_u)) best = &opt;
  }
  return best->move;
}

StabilityReport is_approx_stable(const CostParams& params, const Population& pop,
                                 const Graph& g, const Rational& epsilon) {
  params.validate();
  check_epsilon(epsilon);
  DistanceMatrix dm;
  dm.refresh(g);
  HarmonicTable table;
  for (int u = 0; u < g.n(); ++u) {
    auto options = available_moves(params, pop, g, dm, u, MoveMode::full, epsilon, table);
    if (!options.empty()) {
      auto& first = options.front();
      return StabilityReport{
          false, StabilityWitness{u, first.move, first.delta_u, first.delta_partner}};
    }
  }
  return StabilityReport{};
}

namespace {

// From-scratch restricted total of u in g: finite part over u's reachable
// set, plus that set itself (as a bitmask; n <= 63 in oracle usage).
struct RestrictedTotal {
  std::uint64_t reachable = 0;
  Rational value;
};

RestrictedTotal restricted_total(const CostParams& params, const Population& pop,
                                 const Graph& g, int u, HarmonicTable& table) {
  RestrictedTotal r;
  const DistanceRow row = bfs_row(g, u);
  std::int64_t sum = 0;
  for (std::size_t x = 0; x < row.size(); ++x) {
    if (row[x] != kUnreachable) {
      r.reachable |= std::uint64_t{1} << x;
      sum += row[x];
    }
  }
  r.value = neighborhood_cost(params, neighborhood_profile(g, pop, u), table) + Rational(sum);
  return r;
}

// Strict improvement for u from `before_total` to its total in `after`, by
// the unified rule; the improvement delta when improving.
std::optional<CostDelta> gain_from_scratch(const CostParams& params, const Population& pop,
                                           const RestrictedTotal& before_total,
                                           const Graph& after, int u, HarmonicTable& table) {
  const RestrictedTotal b = restricted_total(params, pop, after, u, table);
  if ((b.reachable & ~before_total.reachable) != 0) {
    return CostDelta{DistDelta::Kind::reconnect, Rational(0)};
  }
  if ((before_total.reachable & ~b.reachable) != 0) return std::nullopt;
  if (b.value < before_total.value) {
    return CostDelta{DistDelta::Kind::finite, b.value - before_total.value};
  }
  return std::nullopt;
}

}  // namespace

StabilityReport is_pairwise_stable(const CostParams& params, const Population& pop,
                                   const Graph& g) {
  params.validate();
  const int n = g.n();
  if (n > 63) {
    // The reachable-set bitmask caps the oracle; exact checking at scale goes
    // through is_approx_stable(eps = 1).
    throw std::invalid_argument("is_pairwise_stable: n > 63 unsupported");
  }
  HarmonicTable table;
  std::vector<std::optional<RestrictedTotal>> before(n);
  auto before_of = [&](int u) -> const RestrictedTotal& {
    if (!before[u]) before[u] = restricted_total(params, pop, g, u, table);
    return *before[u];
  };
  // (i) unilateral deletions: weak stability, strict gain is a violation.
  for (int u = 0; u < n; ++u) {
    for (int v : g.neighbors(u)) {
      Graph h = g;
      h.delete_edge(u, v);
      if (auto gain = gain_from_scratch(params, pop, before_of(u), h, u, table)) {
        return StabilityReport{false, StabilityWitness{u, Move::remove(u, v), *gain, {}}};
      }
    }
  }
  // (ii) bilateral additions: both endpoints must strictly gain.
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (g.has_edge(u, v)) continue;
      Graph h = g;
      h.add_edge(u, v);
      const auto gain_u = gain_from_scratch(params, pop, before_of(u), h, u, table);
      if (!gain_u) continue;
      if (auto gain_v = gain_from_scratch(params, pop, before_of(v), h, v, table)) {
        return StabilityReport{false, StabilityWitness{u, Move::add(u, v), *gain_u, gain_v}};
      }
    }
  }
  return StabilityReport{};
}

}  // namespace homonet
