#include "homonet/metrics.hpp"

#include <stdexcept>
#include <string>

namespace homonet {

namespace {

void require_same_size(const Graph& g, const Population& pop) {
  if (g.n() != pop.n()) {
    throw std::invalid_argument("graph and population sizes differ");
  }
}

}  // namespace

Rational local_segregation(const Graph& g, const Population& pop) {
  require_same_size(g, pop);
  Rational acc = 0;
  for (int u = 0; u < g.n(); ++u) {
    const NeighborhoodProfile p = neighborhood_profile(g, pop, u);
    if (p.deg == 0) {
      throw std::domain_error("local segregation undefined: agent " + std::to_string(u) +
                              " is isolated");
    }
    acc += Rational(p.same_type, p.deg);
  }
  return acc / g.n();
}

double local_segregation_f64(const Graph& g, const Population& pop) {
  require_same_size(g, pop);
  double acc = 0.0;
  for (int u = 0; u < g.n(); ++u) {
    const NeighborhoodProfile p = neighborhood_profile(g, pop, u);
    if (p.deg == 0) {
      throw std::domain_error("local segregation undefined: agent " + std::to_string(u) +
                              " is isolated");
    }
    acc += static_cast<double>(p.same_type) / static_cast<double>(p.deg);
  }
  return acc / static_cast<double>(g.n());
}

Rational global_segregation(const Graph& g, const Population& pop) {
  require_same_size(g, pop);
  long mono = 0;
  long m = 0;
  for (const auto& [u, v] : g.edges()) {
    ++m;
    if (pop.same_type(u, v)) ++mono;
  }
  if (m == 0) {
    throw std::domain_error("global segregation undefined: graph has no edges");
  }
  return Rational(mono, m);
}

double global_segregation_f64(const Graph& g, const Population& pop) {
  return to_double(global_segregation(g, pop));
}

std::vector<int> curious_agents(const Graph& g, const Population& pop) {
  require_same_size(g, pop);
  std::vector<int> out;
  for (int u = 0; u < g.n(); ++u) {
    for (int v : g.neighbors(u)) {
      if (!pop.same_type(u, v)) {
        out.push_back(u);
        break;
      }
    }
  }
  return out;
}

std::vector<int> curious_types(const Graph& g, const Population& pop) {
  require_same_size(g, pop);
  std::vector<char> agent_curious(static_cast<std::size_t>(g.n()), 0);
  for (int u : curious_agents(g, pop)) agent_curious[static_cast<std::size_t>(u)] = 1;
  std::vector<int> out;
  for (int t = 0; t < pop.type_count(); ++t) {
    bool all = true;
    for (int u = 0; u < g.n(); ++u) {
      if (pop.type_of(u) == t && !agent_curious[static_cast<std::size_t>(u)]) {
        all = false;
        break;
      }
    }
    if (all) out.push_back(t);
  }
  return out;
}

bool is_fully_intra_connected(const Graph& g, const Population& pop) {
  require_same_size(g, pop);
  for (int u = 0; u < g.n(); ++u) {
    for (int v = u + 1; v < g.n(); ++v) {
      if (pop.same_type(u, v) && !g.has_edge(u, v)) return false;
    }
  }
  return true;
}

bool bichromatic_matching_covering(const Graph& g, const Population& pop, int type_id) {
  require_same_size(g, pop);
  if (type_id < 0 || type_id >= pop.type_count()) {
    throw std::out_of_range("type id out of range");
  }
  std::vector<int> bichrom_deg(static_cast<std::size_t>(g.n()), 0);
  for (const auto& [u, v] : g.edges()) {
    if (!pop.same_type(u, v)) {
      ++bichrom_deg[static_cast<std::size_t>(u)];
      ++bichrom_deg[static_cast<std::size_t>(v)];
    }
  }
  for (int u = 0; u < g.n(); ++u) {
    const int d = bichrom_deg[static_cast<std::size_t>(u)];
    if (d > 1) return false;  // not a matching
    if (pop.type_of(u) == type_id && d == 0) return false;  // uncovered
  }
  return true;
}

bool icf_intermediate_necessary(const Graph& g, const Population& pop) {
  require_same_size(g, pop);
  if (pop.type_count() != 2) {
    throw std::invalid_argument("predicate applies to two-type populations only");
  }
  // Blue = minority type 0 (counts are non-decreasing in type id).
  const int blue = 0;
  const int red = 1;

  // (1) Blue agents form a clique.
  for (int u = 0; u < g.n(); ++u) {
    if (pop.type_of(u) != blue) continue;
    for (int v = u + 1; v < g.n(); ++v) {
      if (pop.type_of(v) == blue && !g.has_edge(u, v)) return false;
    }
  }

  // (2) Bichromatic edges form a matching covering every blue agent; a
  //     matching that covers all n_B blue endpoints has exactly n_B edges.
  if (!bichromatic_matching_covering(g, pop, blue)) return false;

  // (3) Every curious red agent is adjacent to all other red agents.
  for (int u : curious_agents(g, pop)) {
    if (pop.type_of(u) != red) continue;
    for (int v = 0; v < g.n(); ++v) {
      if (v != u && pop.type_of(v) == red && !g.has_edge(u, v)) return false;
    }
  }
  return true;
}

}  // namespace homonet
