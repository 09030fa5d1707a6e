#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "homonet/cost.hpp"
#include "homonet/graph.hpp"
#include "homonet/population.hpp"
#include "homonet/rational.hpp"

namespace homonet {

/// Catalogue of deterministic stable-network builders. Each entry carries the
/// edge-cost interval for which its output is pairwise stable under the
/// associated cost model(s); the builders themselves are pure.
enum class ConstructionId {
  complete,               // clique on all agents (ICF + DEI, small alpha)
  star,                   // agent 0 adjacent to everyone (ICF + DEI, alpha >= 1)
  double_star,            // two type centers, leaves attach to own center
  double_star_switched,   // leaves attach to the *other* type's center (DEI)
  icf_intermediate_2,     // two-type intermediate-alpha network (needs alpha)
  icf_intermediate_k,     // multi-type generalization (needs alpha)
  icf_rstar_hub,          // fully intra-connected + blues meet one red hub
  icf_big_hub,            // blue clique + one red hub adjacent to all agents
  dei_bstar_hub,          // fully intra-connected + reds meet one blue hub
  dei_matching,           // fully intra-connected + minority-covering matching
  dei_central_hub_k,      // per-type cliques + one hub meets all other types
  dei_algo1,              // diameter-reduction algorithm output (lexicographic)
};

std::string construction_name(ConstructionId id);
ConstructionId parse_construction_id(const std::string& name);

/// Cost models the entry is catalogued for.
std::vector<Model> construction_models(ConstructionId id);

/// Population is incompatible with a construction's structural requirements.
struct PopulationMismatchError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Construction's edge set branches on alpha but none was supplied.
struct AlphaRequiredError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Alpha interval on which a construction is pairwise stable. `hi` empty
/// means unbounded above. Endpoints are included iff the matching flag is set.
struct ValidityInterval {
  Rational lo;
  std::optional<Rational> hi;
  bool lo_closed = true;
  bool hi_closed = true;

  bool contains(const Rational& alpha) const;
  bool empty() const;
  std::string str() const;
};

/// The catalogued stability interval for (id, pop, model). Throws
/// PopulationMismatchError when the entry does not apply to pop or model.
ValidityInterval validity_interval(ConstructionId id, const Population& pop, Model model);

/// Build the catalogued edge set. `alpha` is consulted only by the
/// intermediate-range entries (whose edge sets branch on it) and required
/// there; supplying an out-of-interval alpha is allowed (useful for negative
/// tests) — callers who care should check validity_interval themselves.
Graph build_construction(ConstructionId id, const Population& pop,
                         const std::optional<Rational>& alpha = std::nullopt);

/// Pair-selection policy for the diameter-reduction algorithm.
enum class Algo1Policy {
  lexicographic,  // smallest (u, v) among violating pairs — deterministic
  seeded_random,  // uniform over violating pairs, driven by `seed`
};

/// Start from disjoint per-type cliques; while some pair is at distance >= 3
/// (or unreachable), add one such pair chosen by `policy`. The result has
/// diameter <= 2, only monochromatic triangles, and at most k-1 bichromatic
/// edges per agent, and is pairwise stable for alpha in [k/(k+1), 1].
Graph dei_algorithm1(const Population& pop, Algo1Policy policy = Algo1Policy::lexicographic,
                     std::uint64_t seed = 0);

}  // namespace homonet
