#pragma once

#include <vector>

#include "homonet/graph.hpp"
#include "homonet/population.hpp"
#include "homonet/rational.hpp"

namespace homonet {

/// Local segregation ls(G) = (1/n) * sum_u f(u)/deg(u). Undefined (throws)
/// when some agent is isolated; the paper's networks are connected.
Rational local_segregation(const Graph& g, const Population& pop);
double local_segregation_f64(const Graph& g, const Population& pop);

/// Global segregation gs(G) = (#monochromatic edges) / m. Throws on m = 0.
Rational global_segregation(const Graph& g, const Population& pop);
double global_segregation_f64(const Graph& g, const Population& pop);

/// Agents incident to at least one bichromatic edge, ascending.
std::vector<int> curious_agents(const Graph& g, const Population& pop);

/// Types whose agents are all curious, ascending.
std::vector<int> curious_types(const Graph& g, const Population& pop);

/// Every same-type pair adjacent (each type induces a clique).
bool is_fully_intra_connected(const Graph& g, const Population& pop);

/// True iff the bichromatic edges form a matching (pairwise vertex-disjoint)
/// and every agent of `type_id` is matched.
bool bichromatic_matching_covering(const Graph& g, const Population& pop, int type_id);

/// Necessary structure of ICF-stable networks for n_R/(n_R+1) < alpha < 1,
/// k = 2: the blue (minority) agents form a clique, the bichromatic edges
/// form a matching of size n_B, and every curious red agent is adjacent to
/// all other red agents. Throws unless k = 2.
bool icf_intermediate_necessary(const Graph& g, const Population& pop);

}  // namespace homonet
