#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "homonet/cost.hpp"

namespace homonet {

/// Improvement rule used everywhere (both checkers, best responses, dynamics):
/// a move improves agent u by more than factor eps iff
///   (a) it makes some agent u could not reach reachable ("reconnect"), or
///   (b) it makes no reachable agent unreachable, and new_total * eps <
///       old_total, totals taken over the (unchanged) reachable set.
/// On connected graphs (b) is plain total-cost comparison. eps = 1 is strict
/// improvement. Bilateral additions always require the partner's strict
/// improvement (factor 1) in addition to the mover's factor-eps improvement;
/// deletions are unilateral.
enum class MoveMode { full, add_only };

struct MoveOption {
  Move move;
  CostDelta delta_u;
  std::optional<CostDelta> delta_partner;  // set for additions
};

/// All moves available to agent u under the rule above, deletions first
/// (neighbors ascending), then additions (partners ascending). `distances`
/// must be exact for g. In add_only mode deletions are omitted.
std::vector<MoveOption> available_moves(const CostParams& params, const Population& pop,
                                        const Graph& g, const DistanceMatrix& distances, int u,
                                        MoveMode mode, const Rational& epsilon,
                                        HarmonicTable& table);

/// Best response of u: the available move minimizing delta_u; ties broken by
/// deletion before addition, then smallest partner index. Pass if none.
Move best_response(const CostParams& params, const Population& pop, const Graph& g,
                   const DistanceMatrix& distances, int u, MoveMode mode,
                   const Rational& epsilon, HarmonicTable& table);

struct StabilityWitness {
  int agent = -1;
  Move move;
  CostDelta delta_agent;
  std::optional<CostDelta> delta_partner;
};

struct StabilityReport {
  bool stable = true;
  std::optional<StabilityWitness> witness;
};

/// Exact pairwise stability: (i) no agent strictly gains by deleting an
/// incident edge (weak inequality holds for her), and (ii) no pair of agents
/// both strictly gain by creating their edge. Implemented naively from
/// scratch (mutated graph copies, fresh BFS totals) so it can serve as an
/// independent oracle for the delta-based checker.
StabilityReport is_pairwise_stable(const CostParams& params, const Population& pop,
                                   const Graph& g);

/// eps-approximate pairwise stability: no agent has an available move at this
/// eps (delta-based). Equivalent to is_pairwise_stable at eps = 1.
StabilityReport is_approx_stable(const CostParams& params, const Population& pop,
                                 const Graph& g, const Rational& epsilon);

/// All pairwise stable labeled graphs on the population, by exhaustive
/// enumeration of edge subsets in Gray-code order (single edge flip per
/// step). Requires n <= 8. Optionally filtered by `constraint`.
std::vector<Graph> enumerate_stable_graphs(
    const CostParams& params, const Population& pop,
    const std::function<bool(const Graph&)>& constraint = {});

}  // namespace homonet
