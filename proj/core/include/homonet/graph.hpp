#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "homonet/population.hpp"

namespace homonet {

/// Undirected simple graph on agents 0..n-1. Neighbor lists are kept sorted,
/// giving O(log deg) membership tests and a deterministic iteration order
/// (dynamics tie-breaking depends on the latter).
class Graph {
 public:
  explicit Graph(int n);

  /// Builds from an edge list; symmetric duplicates such as (0,1),(1,0)
  /// collapse to one edge. Throws on self-loops or out-of-range endpoints.
  static Graph from_edges(int n, const std::vector<std::pair<int, int>>& edges);

  int n() const { return static_cast<int>(adj_.size()); }
  int m() const { return m_; }
  int degree(int u) const { return static_cast<int>(adj_[u].size()); }
  const std::vector<std::int32_t>& neighbors(int u) const { return adj_[u]; }
  bool has_edge(int u, int v) const;

  void add_edge(int u, int v);     // throws if the edge exists
  void delete_edge(int u, int v);  // throws if the edge is absent

  /// Canonical edge list: each pair as (min,max), sorted lexicographically.
  std::vector<std::pair<int, int>> edges() const;

  bool operator==(const Graph& other) const = default;

 private:
  void check_pair(int u, int v) const;
  std::vector<std::vector<std::int32_t>> adj_;
  int m_ = 0;
};

struct NeighborhoodProfile {
  int deg = 0;
  int same_type = 0;   // f_G(u)
  int other_type = 0;  // e_G(u)
};

NeighborhoodProfile neighborhood_profile(const Graph& g, const Population& pop, int u);

/// Subgraph induced by `nodes` (need not be sorted); result node i corresponds
/// to mapping[i] in the original graph.
struct InducedSubgraph {
  Graph graph;
  std::vector<int> mapping;
};
InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& nodes);

}  // namespace homonet
