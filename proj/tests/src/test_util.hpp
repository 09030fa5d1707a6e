#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "homonet/graph.hpp"
#include "homonet/population.hpp"
#include "homonet/rational.hpp"
#include "homonet/rng.hpp"

namespace homonet::testutil {

inline Graph make_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  return Graph::from_edges(n, edges);
}

/// G(n, p) sample; if `force_connected`, a random recursive spanning tree is
/// laid down first so every agent is reachable.
inline Graph random_graph(int n, double p, Xoshiro256ss& rng, bool force_connected = true) {
  Graph g(n);
  if (force_connected) {
    for (int i = 1; i < n; ++i) g.add_edge(i, static_cast<int>(rng.bounded(i)));
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (!g.has_edge(u, v) && rng.uniform01() < p) g.add_edge(u, v);
    }
  }
  return g;
}

/// Random non-decreasing type counts: k types, n agents total.
inline std::vector<int> random_counts(int k, int n, Xoshiro256ss& rng) {
  std::vector<int> counts(k, 1);
  for (int extra = n - k; extra > 0; --extra) counts[rng.bounded(k)]++;
  std::sort(counts.begin(), counts.end());
  return counts;
}

/// All 2^(n choose 2) labeled graphs on n nodes (n small), as edge masks.
inline Graph graph_from_mask(int n, std::uint64_t mask) {
  Graph g(n);
  int bit = 0;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v, ++bit) {
      if (mask >> bit & 1) g.add_edge(u, v);
    }
  }
  return g;
}

inline Rational frac(std::int64_t num, std::int64_t den) { return make_rational(num, den); }

}  // namespace homonet::testutil
