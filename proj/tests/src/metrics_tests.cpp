#include <doctest.h>

#include <stdexcept>
#include <vector>

#include "homonet/constructions.hpp"
#include "homonet/metrics.hpp"
#include "test_util.hpp"

using namespace homonet;
using testutil::frac;
using testutil::make_graph;

namespace {

Graph disjoint_cliques(const Population& pop) {
  Graph g(pop.n());
  for (int u = 0; u < pop.n(); ++u) {
    for (int v = u + 1; v < pop.n(); ++v) {
      if (pop.same_type(u, v)) g.add_edge(u, v);
    }
  }
  return g;
}

}  // namespace

TEST_CASE("balanced complete graphs: local equals global segregation") {
  // On K_{2m} with an (m, m) split every agent sees (m-1)/(2m-1) same-type
  // neighbors, and monochromatic edges are m(m-1) of m(2m-1) total.
  for (int m : {2, 3, 4}) {
    const Population pop = Population::from_counts({m, m});
    const Graph g = build_construction(ConstructionId::complete, pop);
    const Rational expected = frac(m - 1, 2 * m - 1);
    CHECK(local_segregation(g, pop) == expected);
    CHECK(global_segregation(g, pop) == expected);
  }
}

TEST_CASE("star segregation hand values") {
  const Population pop = Population::from_counts({2, 3});
  const Graph g = build_construction(ConstructionId::star, pop);
  // Center (blue): 1 of 4 neighbors blue; the blue leaf: 1/1; red leaves: 0.
  CHECK(local_segregation(g, pop) == frac(1, 4));
  // Edges: 0-1 monochromatic, 0-2, 0-3, 0-4 bichromatic.
  CHECK(global_segregation(g, pop) == frac(1, 4));
}

TEST_CASE("matching network global segregation") {
  const Population pop = Population::from_counts({2, 3});
  const Graph g = build_construction(ConstructionId::dei_matching, pop);
  CHECK(global_segregation(g, pop) == frac(2, 3));  // 4 of 6 edges monochromatic
}

TEST_CASE("segregation float variants track the exact values") {
  const Population pop = Population::from_counts({3, 5});
  const Graph g = build_construction(ConstructionId::icf_intermediate_2, pop, frac(4, 5));
  CHECK(local_segregation_f64(g, pop) ==
        doctest::Approx(to_double(local_segregation(g, pop))).epsilon(1e-12));
  CHECK(global_segregation_f64(g, pop) ==
        doctest::Approx(to_double(global_segregation(g, pop))).epsilon(1e-12));
}

TEST_CASE("segregation domain errors") {
  const Population pop = Population::from_counts({2, 3});
  const Graph with_isolated = make_graph(5, {{0, 1}, {1, 2}, {2, 3}});  // agent 4 isolated
  CHECK_THROWS_AS(local_segregation(with_isolated, pop), std::domain_error);
  CHECK_THROWS_AS(local_segregation_f64(with_isolated, pop), std::domain_error);
  const Graph empty(5);
  CHECK_THROWS_AS(global_segregation(empty, pop), std::domain_error);
  // Size mismatch is rejected before any computation.
  CHECK_THROWS_AS(global_segregation(Graph(4), pop), std::invalid_argument);
}

TEST_CASE("curious agents and types") {
  const Population pop = Population::from_counts({2, 3});

  const Graph cliques = disjoint_cliques(pop);
  CHECK(curious_agents(cliques, pop).empty());
  CHECK(curious_types(cliques, pop).empty());

  // Switched double star: every agent is incident to a bichromatic edge.
  const Graph dss = build_construction(ConstructionId::double_star_switched, pop);
  CHECK(curious_agents(dss, pop) == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(curious_types(dss, pop) == std::vector<int>{0, 1});

  // One bichromatic edge: only its endpoints are curious, and only the
  // minority type (both members matched... just agent 0 here) stays partial.
  Graph one = disjoint_cliques(pop);
  one.add_edge(0, 2);
  CHECK(curious_agents(one, pop) == std::vector<int>{0, 2});
  CHECK(curious_types(one, pop).empty());
  one.add_edge(1, 3);
  CHECK(curious_types(one, pop) == std::vector<int>{0});
}

TEST_CASE("fully intra-connected predicate") {
  const Population pop = Population::from_counts({2, 3});
  CHECK(is_fully_intra_connected(build_construction(ConstructionId::complete, pop), pop));
  CHECK(is_fully_intra_connected(disjoint_cliques(pop), pop));
  CHECK(is_fully_intra_connected(build_construction(ConstructionId::dei_matching, pop), pop));

  Graph broken = disjoint_cliques(pop);
  broken.delete_edge(2, 4);
  CHECK_FALSE(is_fully_intra_connected(broken, pop));

  // Bichromatic edges are irrelevant to the predicate.
  const Graph star = build_construction(ConstructionId::star, pop);
  CHECK_FALSE(is_fully_intra_connected(star, pop));  // reds not pairwise adjacent
}

TEST_CASE("bichromatic matching coverage") {
  const Population pop = Population::from_counts({2, 3});
  const Graph matching = build_construction(ConstructionId::dei_matching, pop);
  CHECK(bichromatic_matching_covering(matching, pop, 0));
  CHECK_FALSE(bichromatic_matching_covering(matching, pop, 1));  // one red unmatched

  const Graph complete = build_construction(ConstructionId::complete, pop);
  CHECK_FALSE(bichromatic_matching_covering(complete, pop, 0));  // bichromatic degree 3

  const Graph cliques = disjoint_cliques(pop);
  CHECK_FALSE(bichromatic_matching_covering(cliques, pop, 0));  // nothing covered

  CHECK_THROWS_AS(bichromatic_matching_covering(matching, pop, 2), std::out_of_range);
  CHECK_THROWS_AS(bichromatic_matching_covering(matching, pop, -1), std::out_of_range);
}

TEST_CASE("intermediate-range necessary structure") {
  const Population pop = Population::from_counts({3, 5});
  // Both branches of the catalogued intermediate network satisfy it.
  const Graph low = build_construction(ConstructionId::icf_intermediate_2, pop, frac(4, 5));
  CHECK(icf_intermediate_necessary(low, pop));
  const Graph high = build_construction(ConstructionId::icf_intermediate_2, pop, frac(99, 100));
  CHECK(icf_intermediate_necessary(high, pop));

  // K_n fails: bichromatic edges are nowhere near a matching.
  CHECK_FALSE(icf_intermediate_necessary(build_construction(ConstructionId::complete, pop), pop));

  // Breaking the blue clique fails condition (1).
  Graph no_blue_edge = low;
  no_blue_edge.delete_edge(0, 1);
  CHECK_FALSE(icf_intermediate_necessary(no_blue_edge, pop));

  // A curious red missing a red-red edge fails condition (3): agent 3 is
  // matched to blue 0, agent 7 is a leftover red adjacent to the first block.
  Graph gap = low;
  REQUIRE(gap.has_edge(3, 7));
  gap.delete_edge(3, 7);
  CHECK_FALSE(icf_intermediate_necessary(gap, pop));

  CHECK_THROWS_AS(icf_intermediate_necessary(low, Population::from_counts({1, 2, 3})),
                  std::invalid_argument);
}
