#include "homonet/cost.hpp"

namespace homonet {

std::string model_name(Model m) { return m == Model::icf ? "icf" : "dei"; }

Model parse_model(const std::string& name) {
  if (name == "icf") return Model::icf;
  if (name == "dei") return Model::dei;
  throw std::invalid_argument("unknown model '" + name + "' (expected icf or dei)");
}

const Rational& HarmonicTable::exact(int e) {
  if (e < 0) throw std::invalid_argument("harmonic index must be non-negative");
  while (static_cast<int>(exact_.size()) <= e) {
    const int k = static_cast<int>(exact_.size());
    exact_.push_back(exact_.back() + Rational(1, k));
  }
  return exact_[e];
}

double HarmonicTable::approx(int e) {
  if (e < 0) throw std::invalid_argument("harmonic index must be non-negative");
  while (static_cast<int>(approx_.size()) <= e) {
    const int k = static_cast<int>(approx_.size());
    approx_.push_back(approx_.back() + 1.0 / k);
  }
  return approx_[e];
}

void check_delta_profile(const NeighborhoodProfile& p, EdgeKind kind, EdgeAction action) {
  if (p.deg != p.same_type + p.other_type || p.same_type < 0 || p.other_type < 0) {
    throw std::invalid_argument("inconsistent neighborhood profile");
  }
  if (action != EdgeAction::remove) return;
  if (kind == EdgeKind::mono && p.same_type < 1) {
    throw std::invalid_argument("cannot remove a monochromatic edge: f = 0");
  }
  if (kind == EdgeKind::bi && p.other_type < 1) {
    throw std::invalid_argument("cannot remove a bichromatic edge: e = 0");
  }
}

Rational neighborhood_cost(const CostParams& params, const NeighborhoodProfile& p,
                           HarmonicTable& table) {
  params.validate();
  const Rational h = params.model == Model::dei ? table.exact(p.other_type) : Rational(0);
  return neighborhood_cost_t<Rational>(params.model, params.alpha, p, h);
}

Rational delta_neighborhood(const CostParams& params, const NeighborhoodProfile& p,
                            EdgeKind kind, EdgeAction action) {
  params.validate();
  check_delta_profile(p, kind, action);
  return delta_neighborhood_t<Rational>(params.model, params.alpha, p, kind, action);
}

ExactCost total_cost(const CostParams& params, const Population& pop, const Graph& g, int u,
                     HarmonicTable& table) {
  const ExtInt dist = distance_sum(bfs_row(g, u));
  if (dist.is_infinite()) return ExactCost{true, Rational(0)};
  const Rational neigh = neighborhood_cost(params, neighborhood_profile(g, pop, u), table);
  return ExactCost{false, neigh + Rational(dist.value())};
}

std::string move_to_string(const Move& m) {
  switch (m.kind) {
    case Move::Kind::pass:
      return "pass";
    case Move::Kind::add:
      return "add(" + std::to_string(m.u) + "," + std::to_string(m.v) + ")";
    case Move::Kind::remove:
      return "delete(" + std::to_string(m.u) + "," + std::to_string(m.v) + ")";
  }
  return "?";
}

CostDelta delta_total_for_move(const CostParams& params, const Population& pop, const Graph& g,
                               const DistanceMatrix& distances, int u, const Move& move) {
  params.validate();
  if (move.is_pass()) return CostDelta{DistDelta::Kind::finite, Rational(0)};
  if (move.u != u && move.v != u) {
    throw std::invalid_argument("delta_total_for_move: agent is not a move endpoint");
  }
  const int partner = move.partner_of(u);
  const bool edge = g.has_edge(move.u, move.v);
  if (move.kind == Move::Kind::add && edge) {
    throw std::invalid_argument("illegal move: edge already present");
  }
  if (move.kind == Move::Kind::remove && !edge) {
    throw std::invalid_argument("illegal move: edge not present");
  }

  const EdgeKind kind = pop.same_type(u, partner) ? EdgeKind::mono : EdgeKind::bi;
  const EdgeAction action =
      move.kind == Move::Kind::add ? EdgeAction::add : EdgeAction::remove;
  const Rational dn = delta_neighborhood(params, neighborhood_profile(g, pop, u), kind, action);

  const DistDelta dd = action == EdgeAction::add
                           ? delta_distance_add(distances.rows[u], distances.rows[partner])
                           : delta_distance_delete(g, u, partner);
  if (dd.kind != DistDelta::Kind::finite) return CostDelta{dd.kind, Rational(0)};
  return CostDelta{DistDelta::Kind::finite, dn + Rational(dd.value)};
}

}  // namespace homonet
