#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "homonet/distance.hpp"
#include "homonet/graph.hpp"
#include "homonet/population.hpp"
#include "homonet/rational.hpp"

namespace homonet {

enum class Model { icf, dei };

std::string model_name(Model m);
Model parse_model(const std::string& name);

struct CostParams {
  Model model = Model::icf;
  Rational alpha = 1;  // must stay > 0

  void validate() const {
    if (alpha <= 0) throw std::invalid_argument("alpha must be positive");
  }
};

enum class EdgeKind { mono, bi };
enum class EdgeAction { add, remove };

/// Exact harmonic numbers H_0..H_e grown on demand, plus a double table for
/// the float path. H_0 = 0 (the DEI sum is empty for e = 0).
class HarmonicTable {
 public:
  const Rational& exact(int e);
  double approx(int e);

 private:
  std::vector<Rational> exact_{Rational(0)};
  std::vector<double> approx_{0.0};
};

/// Neighborhood cost a(u).
///   ICF: deg * alpha * (1 + 1/(f+1))
///   DEI: alpha * (deg + H_e)
/// `harmonic_e` must be H_{profile.other_type} in the number type used; it is
/// ignored for ICF.
template <class Num>
Num neighborhood_cost_t(Model model, const Num& alpha, const NeighborhoodProfile& p,
                        const Num& harmonic_e) {
  if (model == Model::icf) {
    return Num(p.deg) * alpha * (Num(1) + Num(1) / Num(p.same_type + 1));
  }
  return alpha * (Num(p.deg) + harmonic_e);
}

/// Exact change in a(u) when one incident edge of the given kind is added or
/// removed, evaluated at u's *current* profile (before the move):
///   ICF  add mono:  alpha * (1 + (f - deg + 1) / ((f+1)(f+2)))
///   ICF  del mono: -alpha * (1 + (f - deg + 1) / ((f+1) f))
///   ICF  add/del bi: +/- alpha * (1 + 1/(f+1))
///   DEI  add/del mono: +/- alpha
///   DEI  add bi:  alpha * (1 + 1/(e+1));  del bi: -alpha * (1 + 1/e)
template <class Num>
Num delta_neighborhood_t(Model model, const Num& alpha, const NeighborhoodProfile& p,
                         EdgeKind kind, EdgeAction action) {
  const int f = p.same_type;
  const int e = p.other_type;
  if (model == Model::icf) {
    if (kind == EdgeKind::mono) {
      if (action == EdgeAction::add) {
        return alpha * (Num(1) + Num(f - p.deg + 1) / Num((f + 1) * (f + 2)));
      }
      return -alpha * (Num(1) + Num(f - p.deg + 1) / Num((f + 1) * f));
    }
    const Num surcharge = alpha * (Num(1) + Num(1) / Num(f + 1));
    return action == EdgeAction::add ? surcharge : Num(-surcharge);
  }
  if (kind == EdgeKind::mono) {
    return action == EdgeAction::add ? alpha : Num(-alpha);
  }
  if (action == EdgeAction::add) return alpha * (Num(1) + Num(1) / Num(e + 1));
  return -alpha * (Num(1) + Num(1) / Num(e));
}

/// Validates the deletion preconditions (a neighbor of that kind must exist).
void check_delta_profile(const NeighborhoodProfile& p, EdgeKind kind, EdgeAction action);

Rational neighborhood_cost(const CostParams& params, const NeighborhoodProfile& p,
                           HarmonicTable& table);

Rational delta_neighborhood(const CostParams& params, const NeighborhoodProfile& p,
                            EdgeKind kind, EdgeAction action);

/// Total cost T(u) = a(u) + sum of u's distances; infinite iff u cannot reach
/// some agent.
struct ExactCost {
  bool infinite = false;
  Rational value;  // meaningful only when finite

  friend bool operator==(const ExactCost& a, const ExactCost& b) {
    if (a.infinite != b.infinite) return false;
    return a.infinite || a.value == b.value;
  }
};

ExactCost total_cost(const CostParams& params, const Population& pop, const Graph& g, int u,
                     HarmonicTable& table);

/// One agent's move in the bilateral game.
struct Move {
  enum class Kind { add, remove, pass };
  Kind kind = Kind::pass;
  int u = -1;  // canonical: u < v for add/remove
  int v = -1;

  static Move add(int a, int b) { return make(Kind::add, a, b); }
  static Move remove(int a, int b) { return make(Kind::remove, a, b); }
  static Move pass() { return Move{}; }
  bool is_pass() const { return kind == Kind::pass; }
  /// For a non-pass move involving `agent`, the other endpoint.
  int partner_of(int agent) const { return u == agent ? v : u; }

  friend bool operator==(const Move&, const Move&) = default;

 private:
  static Move make(Kind k, int a, int b) {
    if (a == b) throw std::invalid_argument("move endpoints must be distinct");
    Move m;
    m.kind = k;
    m.u = a < b ? a : b;
    m.v = a < b ? b : a;
    return m;
  }
};

std::string move_to_string(const Move& m);

/// Change of one agent's total cost under a move: a finite rational, or the
/// dominating reconnect (-inf) / disconnect (+inf) outcome.
struct CostDelta {
  DistDelta::Kind kind = DistDelta::Kind::finite;
  Rational value;

  bool improves() const {
    return kind == DistDelta::Kind::reconnect ||
           (kind == DistDelta::Kind::finite && value < 0);
  }
};

/// Delta of `u`'s total cost for a legal move (u must be an endpoint);
/// distances must be the exact rows for g. Composition of the neighborhood
/// delta with delta_distance_add / delta_distance_delete.
CostDelta delta_total_for_move(const CostParams& params, const Population& pop, const Graph& g,
                               const DistanceMatrix& distances, int u, const Move& move);

}  // namespace homonet
