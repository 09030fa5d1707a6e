#include "homonet/constructions.hpp"

#include <algorithm>
#include <utility>

#include "homonet/distance.hpp"
#include "homonet/rng.hpp"

namespace homonet {

namespace {

using EdgeList = std::vector<std::pair<int, int>>;

// Agents of type j are labeled 1..count within their block.
int agent(const Population& pop, int type, int index1) {
  return pop.block_offset(type) + index1 - 1;
}

void require_two_types(const Population& pop, const char* what) {
  if (pop.type_count() != 2) {
    throw PopulationMismatchError(std::string(what) + " requires exactly two types, got " +
                                  std::to_string(pop.type_count()));
  }
}

void clique_on_block(EdgeList& edges, const Population& pop, int type, int upto) {
  for (int i = 1; i <= upto; ++i) {
    for (int l = i + 1; l <= upto; ++l) {
      edges.emplace_back(agent(pop, type, i), agent(pop, type, l));
    }
  }
}

void full_intra(EdgeList& edges, const Population& pop) {
  for (int t = 0; t < pop.type_count(); ++t) clique_on_block(edges, pop, t, pop.count_of(t));
}

Graph build_complete(const Population& pop) {
  EdgeList edges;
  for (int u = 0; u < pop.n(); ++u) {
    for (int v = u + 1; v < pop.n(); ++v) edges.emplace_back(u, v);
  }
  return Graph::from_edges(pop.n(), edges);
}

Graph build_star(const Population& pop) {
  EdgeList edges;
  for (int v = 1; v < pop.n(); ++v) edges.emplace_back(0, v);
  return Graph::from_edges(pop.n(), edges);
}

Graph build_double_star(const Population& pop, bool switched) {
  require_two_types(pop, switched ? "double_star_switched" : "double_star");
  const int blue_center = agent(pop, 0, 1);
  const int red_center = agent(pop, 1, 1);
  EdgeList edges;
  edges.emplace_back(blue_center, red_center);
  for (int i = 2; i <= pop.count_of(0); ++i) {
    edges.emplace_back(switched ? red_center : blue_center, agent(pop, 0, i));
  }
  for (int i = 2; i <= pop.count_of(1); ++i) {
    edges.emplace_back(switched ? blue_center : red_center, agent(pop, 1, i));
  }
  return Graph::from_edges(pop.n(), edges);
}

Rational rest_clique_threshold(int cap) {
  // tau* = (cap+1)(cap+2) / ((cap+1)(cap+2) + 1). A leftover agent has `cap`
  // same-type neighbors and nothing else, so a leftover-leftover edge costs it
  // alpha * (1 + 1/((cap+1)(cap+2))) against a distance saving of 1: below
  // tau* both endpoints gain and the leftover clique is required, at or above
  // tau* both decline and it must be absent (its own deletions pay off only
  // beyond (cap+L)(cap+L+1)/((cap+L)(cap+L+1)+1) >= tau* for L >= 2 leftovers,
  // so the clique stays intact on the low branch).
  const long p = static_cast<long>(cap + 1) * (cap + 2);
  return Rational(p, p + 1);
}

Graph build_icf_intermediate_2(const Population& pop, const Rational& alpha) {
  require_two_types(pop, "icf_intermediate_2");
  const int nb = pop.count_of(0);
  const int nr = pop.count_of(1);
  EdgeList edges;
  clique_on_block(edges, pop, 0, nb);  // blue clique
  clique_on_block(edges, pop, 1, nb);  // clique on the first nb red agents
  for (int i = 1; i <= nb; ++i) {
    edges.emplace_back(agent(pop, 0, i), agent(pop, 1, i));  // matching b_i-r_i
  }
  for (int j = nb + 1; j <= nr; ++j) {  // remaining reds meet the first block
    for (int i = 1; i <= nb; ++i) edges.emplace_back(agent(pop, 1, j), agent(pop, 1, i));
  }
  if (alpha < rest_clique_threshold(nb)) {
    for (int i = nb + 1; i <= nr; ++i) {
      for (int j = i + 1; j <= nr; ++j) edges.emplace_back(agent(pop, 1, i), agent(pop, 1, j));
    }
  }
  return Graph::from_edges(pop.n(), edges);
}

Graph build_icf_intermediate_k(const Population& pop, const Rational& alpha) {
  const int k = pop.type_count();
  if (k < 2) {
    throw PopulationMismatchError("icf_intermediate_k requires at least two types");
  }
  const int big_type = k - 1;
  const int big = pop.count_of(big_type);
  const int cap = pop.count_of(k - 2);  // size of the second-largest type
  EdgeList edges;
  // Every type but the largest is a clique; the largest is cliqued on its
  // first `cap` agents and each remaining ("leftover") agent meets that block.
  for (int j = 0; j < big_type; ++j) clique_on_block(edges, pop, j, pop.count_of(j));
  clique_on_block(edges, pop, big_type, cap);
  for (int l = cap + 1; l <= big; ++l) {
    for (int i = 1; i <= cap; ++i) {
      edges.emplace_back(agent(pop, big_type, l), agent(pop, big_type, i));
    }
  }
  if (alpha < rest_clique_threshold(cap)) {
    for (int i = cap + 1; i <= big; ++i) {
      for (int l = i + 1; l <= big; ++l) {
        edges.emplace_back(agent(pop, big_type, i), agent(pop, big_type, l));
      }
    }
  }
  // Each smaller type either connects fully to every larger type (while alpha
  // is below its threshold n_T/(n_T+1), where its agents still pay for new
  // cross edges) or joins the sparse matchings. The smallest type is always
  // matched: the catalogued interval starts at its threshold.
  std::vector<int> matched;
  for (int j = 0; j < big_type; ++j) {
    const Rational tau_j(pop.count_of(j), pop.count_of(j) + 1);
    if (j > 0 && alpha < tau_j) {
      for (int l = j + 1; l < k; ++l) {
        for (int i = 1; i <= pop.count_of(j); ++i) {
          for (int m = 1; m <= pop.count_of(l); ++m) {
            edges.emplace_back(agent(pop, j, i), agent(pop, l, m));
          }
        }
      }
    } else {
      matched.push_back(j);
    }
  }
  // Matched types pair up index-aligned with the largest type's first block
  // and index-shifted with each other. The shift keeps every matching edge
  // two-path-free (no triangles through a shared partner), so severing one
  // always moves the partner to distance >= 3.
  for (int j : matched) {
    for (int i = 1; i <= pop.count_of(j); ++i) {
      edges.emplace_back(agent(pop, j, i), agent(pop, big_type, i));
    }
  }
  for (std::size_t a = 0; a < matched.size(); ++a) {
    for (std::size_t b = a + 1; b < matched.size(); ++b) {
      const int j = matched[a];
      const int p = matched[b];
      const int np = pop.count_of(p);
      if (np < 2) continue;  // two singletons already share their first-block partner
      for (int i = 1; i <= pop.count_of(j); ++i) {
        edges.emplace_back(agent(pop, j, i), agent(pop, p, (i % np) + 1));
      }
    }
  }
  return Graph::from_edges(pop.n(), edges);
}

Graph build_icf_rstar_hub(const Population& pop) {
  require_two_types(pop, "icf_rstar_hub");
  if (pop.count_of(1) < 2) {
    throw PopulationMismatchError("icf_rstar_hub requires at least two majority agents");
  }
  EdgeList edges;
  full_intra(edges, pop);
  const int hub = agent(pop, 1, 1);
  for (int i = 1; i <= pop.count_of(0); ++i) edges.emplace_back(agent(pop, 0, i), hub);
  return Graph::from_edges(pop.n(), edges);
}

Graph build_icf_big_hub(const Population& pop) {
  require_two_types(pop, "icf_big_hub");
  if (pop.count_of(0) < 6) {
    throw PopulationMismatchError("icf_big_hub requires at least six minority agents");
  }
  // Minority clique + a majority hub adjacent to every agent. The remaining
  // majority agents hang off the hub with degree 1 and one same-type
  // neighbor, which makes any new edge cost them alpha*(1 + 1/6) or more —
  // so they decline everything at alpha >= 6/7, and the hub keeps its
  // minority edges up to n_R/(n_R+1). The hub must sit with its pendants'
  // own type: a foreign-type pendant would pay only alpha for a friend.
  EdgeList edges;
  clique_on_block(edges, pop, 0, pop.count_of(0));
  const int hub = agent(pop, 1, 1);
  for (int v = 0; v < pop.n(); ++v) {
    if (v != hub) edges.emplace_back(hub, v);
  }
  return Graph::from_edges(pop.n(), edges);
}

Graph build_dei_bstar_hub(const Population& pop) {
  require_two_types(pop, "dei_bstar_hub");
  if (pop.count_of(0) < 2) {
    throw PopulationMismatchError("dei_bstar_hub requires at least two minority agents");
  }
  EdgeList edges;
  full_intra(edges, pop);
  const int hub = agent(pop, 0, 1);
  for (int i = 1; i <= pop.count_of(1); ++i) edges.emplace_back(hub, agent(pop, 1, i));
  return Graph::from_edges(pop.n(), edges);
}

Graph build_dei_matching(const Population& pop) {
  require_two_types(pop, "dei_matching");
  EdgeList edges;
  full_intra(edges, pop);
  for (int i = 1; i <= pop.count_of(0); ++i) {
    edges.emplace_back(agent(pop, 0, i), agent(pop, 1, i));
  }
  return Graph::from_edges(pop.n(), edges);
}

// 1-based index of the smallest type of size >= 2, or k if all types are
// singletons.
int central_hub_jstar(const Population& pop) {
  for (int j = 0; j < pop.type_count(); ++j) {
    if (pop.count_of(j) >= 2) return j + 1;
  }
  return pop.type_count();
}

Graph build_dei_central_hub_k(const Population& pop) {
  EdgeList edges;
  full_intra(edges, pop);
  const int jstar = central_hub_jstar(pop);
  const int hub = agent(pop, jstar - 1, 1);
  for (int j = 0; j < pop.type_count(); ++j) {
    if (j == jstar - 1) continue;
    for (int i = 1; i <= pop.count_of(j); ++i) {
      edges.emplace_back(hub, agent(pop, j, i));
    }
  }
  return Graph::from_edges(pop.n(), edges);
}

}  // namespace

std::string construction_name(ConstructionId id) {
  switch (id) {
    case ConstructionId::complete: return "complete";
    case ConstructionId::star: return "star";
    case ConstructionId::double_star: return "double_star";
    case ConstructionId::double_star_switched: return "double_star_switched";
    case ConstructionId::icf_intermediate_2: return "icf_intermediate_2";
    case ConstructionId::icf_intermediate_k: return "icf_intermediate_k";
    case ConstructionId::icf_rstar_hub: return "icf_rstar_hub";
    case ConstructionId::icf_big_hub: return "icf_big_hub";
    case ConstructionId::dei_bstar_hub: return "dei_bstar_hub";
    case ConstructionId::dei_matching: return "dei_matching";
    case ConstructionId::dei_central_hub_k: return "dei_central_hub_k";
    case ConstructionId::dei_algo1: return "dei_algo1";
  }
  throw std::logic_error("unknown construction id");
}

ConstructionId parse_construction_id(const std::string& name) {
  static const std::vector<ConstructionId> all = {
      ConstructionId::complete,           ConstructionId::star,
      ConstructionId::double_star,        ConstructionId::double_star_switched,
      ConstructionId::icf_intermediate_2, ConstructionId::icf_intermediate_k,
      ConstructionId::icf_rstar_hub,      ConstructionId::icf_big_hub,
      ConstructionId::dei_bstar_hub,      ConstructionId::dei_matching,
      ConstructionId::dei_central_hub_k,  ConstructionId::dei_algo1,
  };
  for (ConstructionId id : all) {
    if (construction_name(id) == name) return id;
  }
  throw std::invalid_argument("unknown construction: " + name);
}

std::vector<Model> construction_models(ConstructionId id) {
  switch (id) {
    case ConstructionId::complete:
    case ConstructionId::star:
    case ConstructionId::double_star:
      return {Model::icf, Model::dei};
    case ConstructionId::icf_intermediate_2:
    case ConstructionId::icf_intermediate_k:
    case ConstructionId::icf_rstar_hub:
    case ConstructionId::icf_big_hub:
      return {Model::icf};
    default:
      return {Model::dei};
  }
}

bool ValidityInterval::contains(const Rational& alpha) const {
  if (alpha < lo || (alpha == lo && !lo_closed)) return false;
  if (hi && (alpha > *hi || (alpha == *hi && !hi_closed))) return false;
  return true;
}

bool ValidityInterval::empty() const {
  if (!hi) return false;
  if (lo > *hi) return true;
  return lo == *hi && !(lo_closed && hi_closed);
}

std::string ValidityInterval::str() const {
  std::string out(1, lo_closed ? '[' : '(');
  out += format_rational(lo);
  out += ", ";
  if (hi) {
    out += format_rational(*hi);
    out += hi_closed ? ']' : ')';
  } else {
    out += "inf)";
  }
  return out;
}

ValidityInterval validity_interval(ConstructionId id, const Population& pop, Model model) {
  const auto models = construction_models(id);
  if (std::find(models.begin(), models.end(), model) == models.end()) {
    throw PopulationMismatchError("construction " + construction_name(id) +
                                  " is not catalogued for model " + model_name(model));
  }
  const int k = pop.type_count();
  const int n = pop.n();
  const auto ratio = [](int q) { return Rational(q, q + 1); };

  switch (id) {
    case ConstructionId::complete: {
      const int q = model == Model::icf ? pop.min_count() : n - pop.max_count();
      return {Rational(0), ratio(q), /*lo_closed=*/false, /*hi_closed=*/true};
    }
    case ConstructionId::star:
      return {Rational(1), std::nullopt, true, false};
    case ConstructionId::double_star:
      require_two_types(pop, "double_star");
      return {model == Model::icf ? Rational(4, 3) : Rational(1), std::nullopt, true, false};
    case ConstructionId::double_star_switched:
      require_two_types(pop, "double_star_switched");
      return {Rational(4, 3), std::nullopt, true, false};
    case ConstructionId::icf_intermediate_2:
      require_two_types(pop, "icf_intermediate_2");
      return {ratio(pop.min_count()), Rational(1), true, false};
    case ConstructionId::icf_intermediate_k:
      if (k < 2) throw PopulationMismatchError("icf_intermediate_k requires at least two types");
      return {ratio(pop.min_count()), Rational(1), true, false};
    case ConstructionId::icf_rstar_hub:
      require_two_types(pop, "icf_rstar_hub");
      if (pop.count_of(1) < 2) {
        throw PopulationMismatchError("icf_rstar_hub requires at least two majority agents");
      }
      return {ratio(pop.min_count()), ratio(pop.max_count()), true, true};
    case ConstructionId::icf_big_hub:
      require_two_types(pop, "icf_big_hub");
      if (pop.count_of(0) < 6) {
        throw PopulationMismatchError("icf_big_hub requires at least six minority agents");
      }
      return {Rational(6, 7), ratio(pop.max_count()), true, true};
    case ConstructionId::dei_bstar_hub:
      require_two_types(pop, "dei_bstar_hub");
      if (pop.count_of(0) < 2) {
        throw PopulationMismatchError("dei_bstar_hub requires at least two minority agents");
      }
      return {Rational(1, 2), ratio(pop.max_count()), true, true};
    case ConstructionId::dei_matching:
      require_two_types(pop, "dei_matching");
      return {Rational(2, 3), Rational(1), true, false};
    case ConstructionId::dei_central_hub_k: {
      const int jstar = central_hub_jstar(pop);
      if (k == 2 && jstar == k && pop.count_of(k - 1) >= 2) {
        return {Rational(1, 2), Rational(1), true, true};
      }
      if (jstar == k) return {Rational(2, 3), Rational(1), true, true};
      return {Rational(2, 3), ratio(n - pop.count_of(jstar - 1)), true, true};
    }
    case ConstructionId::dei_algo1:
      return {Rational(k, k + 1), Rational(1), true, true};
  }
  throw std::logic_error("unknown construction id");
}

Graph build_construction(ConstructionId id, const Population& pop,
                         const std::optional<Rational>& alpha) {
  switch (id) {
    case ConstructionId::complete: return build_complete(pop);
    case ConstructionId::star: return build_star(pop);
    case ConstructionId::double_star: return build_double_star(pop, false);
    case ConstructionId::double_star_switched: return build_double_star(pop, true);
    case ConstructionId::icf_intermediate_2:
      if (!alpha) throw AlphaRequiredError("icf_intermediate_2 needs alpha: its edge set branches on it");
      return build_icf_intermediate_2(pop, *alpha);
    case ConstructionId::icf_intermediate_k:
      if (!alpha) throw AlphaRequiredError("icf_intermediate_k needs alpha: its edge set branches on it");
      return build_icf_intermediate_k(pop, *alpha);
    case ConstructionId::icf_rstar_hub: return build_icf_rstar_hub(pop);
    case ConstructionId::icf_big_hub: return build_icf_big_hub(pop);
    case ConstructionId::dei_bstar_hub: return build_dei_bstar_hub(pop);
    case ConstructionId::dei_matching: return build_dei_matching(pop);
    case ConstructionId::dei_central_hub_k: return build_dei_central_hub_k(pop);
    case ConstructionId::dei_algo1: return dei_algorithm1(pop);
  }
  throw std::logic_error("unknown construction id");
}

Graph dei_algorithm1(const Population& pop, Algo1Policy policy, std::uint64_t seed) {
  EdgeList intra;
  full_intra(intra, pop);
  Graph g = Graph::from_edges(pop.n(), intra);
  DistanceMatrix dm;
  dm.refresh(g);
  Xoshiro256ss rng(seed);

  std::vector<std::pair<int, int>> far_pairs;
  // Each round adds one edge between a pair at distance >= 3 (unreachable
  // counts) until none remains; sum of min(dist, 3) strictly decreases, so
  // the loop terminates after at most 3*C(n,2) rounds.
  while (true) {
    far_pairs.clear();
    for (int u = 0; u < g.n(); ++u) {
      for (int v = u + 1; v < g.n(); ++v) {
        if (dm.rows[u][v] >= 3) far_pairs.emplace_back(u, v);  // kUnreachable >= 3 too
      }
    }
    if (far_pairs.empty()) break;
    const auto [u, v] = policy == Algo1Policy::lexicographic
                            ? far_pairs.front()
                            : far_pairs[rng.bounded(far_pairs.size())];
    g.add_edge(u, v);
    dm.apply_add(u, v);
  }
  return g;
}

}  // namespace homonet
