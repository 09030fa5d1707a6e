#include "homonet/stability.hpp"

#include <bit>
#include <stdexcept>

namespace homonet {

std::vector<Graph> enumerate_stable_graphs(const CostParams& params, const Population& pop,
                                           const std::function<bool(const Graph&)>& constraint) {
  params.validate();
  const int n = pop.n();
  if (n > 8) {
    throw std::invalid_argument("enumerate_stable_graphs: n > 8 is too large (2^C(n,2) subsets)");
  }

  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  }

  Graph g(n);
  DistanceMatrix dm;
  HarmonicTable table;
  std::vector<Graph> stable;

  // Gray-code walk over all 2^C(n,2) edge subsets: consecutive subset indices
  // differ in exactly the bit ctz(idx), so each step is one edge flip.
  const std::uint64_t subsets = std::uint64_t{1} << pairs.size();
  for (std::uint64_t idx = 0; idx < subsets; ++idx) {
    if (idx != 0) {
      const int bit = std::countr_zero(idx);
      const auto [u, v] = pairs[bit];
      if (g.has_edge(u, v)) {
        g.delete_edge(u, v);
      } else {
        g.add_edge(u, v);
      }
    }
    dm.refresh(g);

    // Any graph with >= 2 components is unstable (a cross-component addition
    // reconnects, improving both ends); skip the cost machinery entirely.
    if (n > 0 && distance_sum(dm.rows[0]).is_infinite()) continue;

    bool unstable = false;
    for (int u = 0; u < n && !unstable; ++u) {
      unstable = !available_moves(params, pop, g, dm, u, MoveMode::full, Rational(1), table)
                      .empty();
    }
    if (!unstable && (!constraint || constraint(g))) stable.push_back(g);
  }
  return stable;
}

}  // namespace homonet
