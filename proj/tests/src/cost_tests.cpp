#include <doctest.h>

#include <stdexcept>

#include "homonet/cost.hpp"
#include "homonet/distance.hpp"
#include "homonet/graph.hpp"
#include "homonet/population.hpp"
#include "homonet/rng.hpp"

#include "test_util.hpp"

using namespace homonet;
using testutil::frac;
using testutil::make_graph;
using testutil::random_graph;

TEST_CASE("harmonic numbers are exact") {
  HarmonicTable table;
  CHECK(table.exact(0) == Rational(0));
  CHECK(table.exact(1) == Rational(1));
  CHECK(table.exact(3) == frac(11, 6));
  CHECK(table.exact(5) == frac(137, 60));
  CHECK(table.approx(2) == doctest::Approx(1.5));
}

TEST_CASE("neighborhood cost hand values") {
  HarmonicTable table;
  const CostParams icf{Model::icf, Rational(1)};
  const CostParams dei{Model::dei, Rational(1)};
  // Lone bichromatic edge costs 2*alpha when the agent has no friends.
  CHECK(neighborhood_cost(icf, {1, 0, 1}, table) == Rational(2));
  CHECK(neighborhood_cost(icf, {3, 2, 1}, table) == Rational(4));
  CHECK(neighborhood_cost(dei, {4, 1, 3}, table) == frac(35, 6));
  // Empty harmonic sum: DEI with no other-type neighbors is alpha * deg.
  CHECK(neighborhood_cost(dei, {4, 4, 0}, table) == Rational(4));
  const CostParams dei7{Model::dei, frac(7, 3)};
  CHECK(neighborhood_cost(dei7, {2, 2, 0}, table) == frac(14, 3));
}

TEST_CASE("total cost hand values") {
  HarmonicTable table;
  const CostParams icf{Model::icf, Rational(1)};
  // One bichromatic edge on two agents: each pays 2 (neighborhood) + 1 (distance).
  {
    const Population pop = Population::from_counts({1, 1});
    const Graph g = make_graph(2, {{0, 1}});
    CHECK(total_cost(icf, pop, g, 0, table) == ExactCost{false, Rational(3)});
    CHECK(total_cost(icf, pop, g, 1, table) == ExactCost{false, Rational(3)});
  }
  // Monochromatic triangle: each pays 2 * (4/3) + 2 = 14/3.
  {
    const Population pop = Population::from_counts({3});
    const Graph g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    CHECK(total_cost(icf, pop, g, 2, table) == ExactCost{false, frac(14, 3)});
  }
  // An isolated agent has infinite cost.
  {
    const Population pop = Population::from_counts({3});
    const Graph g = make_graph(3, {{0, 1}});
    CHECK(total_cost(icf, pop, g, 2, table).infinite);
    CHECK(total_cost(icf, pop, g, 0, table).infinite);
  }
}

TEST_CASE("one-edge neighborhood deltas: hand values") {
  HarmonicTable table;
  const CostParams icf{Model::icf, Rational(1)};
  const CostParams dei{Model::dei, Rational(1)};
  // First bichromatic edge of a friendless agent costs 2*alpha.
  CHECK(delta_neighborhood(icf, {0, 0, 0}, EdgeKind::bi, EdgeAction::add) == Rational(2));
  // Monochromatic addition at deg = f = 2: 1 + 1/12.
  CHECK(delta_neighborhood(icf, {2, 2, 0}, EdgeKind::mono, EdgeAction::add) == frac(13, 12));
  // DEI bichromatic deletion at e = 2: -(1 + 1/2).
  CHECK(delta_neighborhood(dei, {3, 1, 2}, EdgeKind::bi, EdgeAction::remove) == frac(-3, 2));
  // DEI monochromatic edges always cost exactly alpha.
  const CostParams dei_a{Model::dei, frac(7, 5)};
  CHECK(delta_neighborhood(dei_a, {3, 1, 2}, EdgeKind::mono, EdgeAction::add) == frac(7, 5));
  CHECK(delta_neighborhood(dei_a, {3, 1, 2}, EdgeKind::mono, EdgeAction::remove) == frac(-7, 5));
}

TEST_CASE("deletion deltas require a neighbor of that kind") {
  const CostParams icf{Model::icf, Rational(1)};
  CHECK_THROWS_AS(delta_neighborhood(icf, {1, 0, 1}, EdgeKind::mono, EdgeAction::remove),
                  std::invalid_argument);
  CHECK_THROWS_AS(delta_neighborhood(icf, {1, 1, 0}, EdgeKind::bi, EdgeAction::remove),
                  std::invalid_argument);
}

TEST_CASE("neighborhood deltas equal from-scratch differences") {
  HarmonicTable table;
  Xoshiro256ss rng(21);
  for (int trial = 0; trial < 2000; ++trial) {
    const Model model = rng.bounded(2) == 0 ? Model::icf : Model::dei;
    const CostParams params{model, frac(1 + static_cast<std::int64_t>(rng.bounded(200)),
                                        1 + static_cast<std::int64_t>(rng.bounded(100)))};
    const int f = static_cast<int>(rng.bounded(6));
    const int e = static_cast<int>(rng.bounded(6));
    const NeighborhoodProfile before{f + e, f, e};
    const bool mono = rng.bounded(2) == 0;
    const bool add = rng.bounded(2) == 0;
    if (!add && mono && f == 0) continue;
    if (!add && !mono && e == 0) continue;
    const int step = add ? 1 : -1;
    const NeighborhoodProfile after{before.deg + step, mono ? f + step : f, mono ? e : e + step};
    const Rational expected =
        neighborhood_cost(params, after, table) - neighborhood_cost(params, before, table);
    const Rational actual = delta_neighborhood(params, before, mono ? EdgeKind::mono : EdgeKind::bi,
                                               add ? EdgeAction::add : EdgeAction::remove);
    REQUIRE(actual == expected);
  }
}

TEST_CASE("bichromatic marginal cost lies in [alpha, 2*alpha]") {
  Xoshiro256ss rng(22);
  for (int trial = 0; trial < 500; ++trial) {
    const Model model = rng.bounded(2) == 0 ? Model::icf : Model::dei;
    const Rational alpha = frac(1 + static_cast<std::int64_t>(rng.bounded(50)),
                                1 + static_cast<std::int64_t>(rng.bounded(20)));
    const CostParams params{model, alpha};
    const int f = static_cast<int>(rng.bounded(8));
    const int e = static_cast<int>(rng.bounded(8));
    const Rational delta =
        delta_neighborhood(params, {f + e, f, e}, EdgeKind::bi, EdgeAction::add);
    CHECK(delta > alpha);
    CHECK(delta <= alpha * 2);
  }
}

TEST_CASE("single-type games reduce to the uniform bilateral game") {
  HarmonicTable table;
  Xoshiro256ss rng(23);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = static_cast<int>(rng.bounded(10));
    const Rational alpha = frac(1 + static_cast<std::int64_t>(rng.bounded(30)),
                                1 + static_cast<std::int64_t>(rng.bounded(10)));
    const NeighborhoodProfile p{deg, deg, 0};
    CHECK(neighborhood_cost(CostParams{Model::icf, alpha}, p, table) ==
          Rational(deg) * alpha * (Rational(1) + make_rational(1, deg + 1)));
    CHECK(neighborhood_cost(CostParams{Model::dei, alpha}, p, table) == alpha * Rational(deg));
  }
}

TEST_CASE("total-cost delta hand values") {
  HarmonicTable table;
  // Monochromatic triangle, ICF alpha=2: deleting an edge trades a 7/3
  // neighborhood saving for +1 distance: -4/3, improving.
  {
    const CostParams params{Model::icf, Rational(2)};
    const Population pop = Population::from_counts({3});
    const Graph g = make_graph(3, {{0, 1}, {1, 2}, {0, 2}});
    DistanceMatrix dm;
    dm.refresh(g);
    const CostDelta d = delta_total_for_move(params, pop, g, dm, 0, Move::remove(0, 1));
    REQUIRE(d.kind == DistDelta::Kind::finite);
    CHECK(d.value == frac(-4, 3));
    CHECK(d.improves());
  }
  // Monochromatic star on 5 agents, ICF alpha=1: a leaf-leaf addition costs
  // 7/6 in neighborhood for one saved hop: +1/6, not improving.
  {
    const CostParams params{Model::icf, Rational(1)};
    const Population pop = Population::from_counts({5});
    const Graph g = make_graph(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}});
    DistanceMatrix dm;
    dm.refresh(g);
    const CostDelta d = delta_total_for_move(params, pop, g, dm, 1, Move::add(1, 2));
    REQUIRE(d.kind == DistDelta::Kind::finite);
    CHECK(d.value == frac(1, 6));
    CHECK_FALSE(d.improves());
  }
}

TEST_CASE("total-cost deltas equal from-scratch differences") {
  HarmonicTable table;
  Xoshiro256ss rng(24);
  int checked = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const int n = 2 + static_cast<int>(rng.bounded(20));
    const Graph g = random_graph(n, 0.2, rng, trial % 4 != 0);
    const int k = 1 + static_cast<int>(rng.bounded(std::min(n, 3)));
    const Population pop = Population::from_counts(testutil::random_counts(k, n, rng));
    const Model model = rng.bounded(2) == 0 ? Model::icf : Model::dei;
    const CostParams params{model, frac(1 + static_cast<std::int64_t>(rng.bounded(100)),
                                        1 + static_cast<std::int64_t>(rng.bounded(50)))};
    DistanceMatrix dm;
    dm.refresh(g);

    const int u = static_cast<int>(rng.bounded(n));
    int v = static_cast<int>(rng.bounded(n));
    if (u == v) continue;
    const bool adding = !g.has_edge(u, v);
    const Move move = adding ? Move::add(u, v) : Move::remove(u, v);
    const CostDelta delta = delta_total_for_move(params, pop, g, dm, u, move);

    Graph h = g;
    if (adding)
      h.add_edge(u, v);
    else
      h.delete_edge(u, v);
    const ExactCost before = total_cost(params, pop, g, u, table);
    const ExactCost after = total_cost(params, pop, h, u, table);
    if (before.infinite && !after.infinite) {
      CHECK(delta.kind == DistDelta::Kind::reconnect);
    } else if (!before.infinite && after.infinite) {
      CHECK(delta.kind == DistDelta::Kind::disconnect);
    } else if (!before.infinite && !after.infinite) {
      REQUIRE(delta.kind == DistDelta::Kind::finite);
      CHECK(delta.value == after.value - before.value);
    }
    ++checked;
  }
  CHECK(checked > 300);
}

TEST_CASE("illegal moves are rejected") {
  const CostParams params{Model::icf, Rational(1)};
  const Population pop = Population::from_counts({3});
  const Graph g = make_graph(3, {{0, 1}});
  DistanceMatrix dm;
  dm.refresh(g);
  CHECK_THROWS(delta_total_for_move(params, pop, g, dm, 0, Move::add(0, 1)));
  CHECK_THROWS(delta_total_for_move(params, pop, g, dm, 0, Move::remove(0, 2)));
  CHECK_THROWS(delta_total_for_move(params, pop, g, dm, 2, Move::add(0, 1)));  // not an endpoint
  const CostParams zero_alpha{Model::icf, Rational(0)};
  CHECK_THROWS_AS(zero_alpha.validate(), std::invalid_argument);
}
