#include "homonet/graph.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace homonet {

Graph::Graph(int n) : adj_(n >= 0 ? n : throw std::invalid_argument("negative node count")) {}

void Graph::check_pair(int u, int v) const {
  const int n = this->n();
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw std::out_of_range("node id out of range: (" + std::to_string(u) + "," +
                            std::to_string(v) + ") with n=" + std::to_string(n));
  }
  if (u == v) throw std::invalid_argument("self-loop on node " + std::to_string(u));
}

Graph Graph::from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Graph g(n);
  for (auto [u, v] : edges) {
    g.check_pair(u, v);
    if (!g.has_edge(u, v)) g.add_edge(u, v);
  }
  return g;
}

bool Graph::has_edge(int u, int v) const {
  const int n = this->n();
  if (u < 0 || u >= n || v < 0 || v >= n) {
    throw std::out_of_range("node id out of range: (" + std::to_string(u) + "," +
                            std::to_string(v) + ") with n=" + std::to_string(n));
  }
  if (u == v) return false;
  const auto& nu = adj_[u];
  return std::binary_search(nu.begin(), nu.end(), v);
}

void Graph::add_edge(int u, int v) {
  check_pair(u, v);
  auto& nu = adj_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it != nu.end() && *it == v) {
    throw std::invalid_argument("edge already present: (" + std::to_string(u) + "," +
                                std::to_string(v) + ")");
  }
  nu.insert(it, v);
  auto& nv = adj_[v];
  nv.insert(std::lower_bound(nv.begin(), nv.end(), u), u);
  ++m_;
}

void Graph::delete_edge(int u, int v) {
  check_pair(u, v);
  auto& nu = adj_[u];
  auto it = std::lower_bound(nu.begin(), nu.end(), v);
  if (it == nu.end() || *it != v) {
    throw std::invalid_argument("edge not present: (" + std::to_string(u) + "," +
                                std::to_string(v) + ")");
  }
  nu.erase(it);
  auto& nv = adj_[v];
  nv.erase(std::lower_bound(nv.begin(), nv.end(), u));
  --m_;
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  out.reserve(m_);
  for (int u = 0; u < n(); ++u) {
    for (int v : adj_[u]) {
      if (v > u) out.emplace_back(u, v);
    }
  }
  return out;  // already lexicographic: u ascending, neighbor lists sorted
}

NeighborhoodProfile neighborhood_profile(const Graph& g, const Population& pop, int u) {
  NeighborhoodProfile p;
  p.deg = g.degree(u);
  for (int v : g.neighbors(u)) {
    if (pop.same_type(u, v)) {
      ++p.same_type;
    } else {
      ++p.other_type;
    }
  }
  return p;
}

InducedSubgraph induced_subgraph(const Graph& g, const std::vector<int>& nodes) {
  const int n = g.n();
  std::vector<int> position(n, -1);
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const int u = nodes[i];
    if (u < 0 || u >= n) throw std::out_of_range("induced_subgraph: node out of range");
    if (position[u] != -1) throw std::invalid_argument("induced_subgraph: duplicate node");
    position[u] = static_cast<int>(i);
  }
  Graph sub(static_cast<int>(nodes.size()));
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (int v : g.neighbors(nodes[i])) {
      if (position[v] > static_cast<int>(i)) sub.add_edge(static_cast<int>(i), position[v]);
    }
  }
  return InducedSubgraph{std::move(sub), nodes};
}

}  // namespace homonet
