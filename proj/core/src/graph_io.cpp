#include "homonet/graph_io.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <stdexcept>

namespace homonet {

using nlohmann::json;

std::string graph_to_json(const Graph& g, const Population& pop) {
  if (pop.n() != g.n()) {
    throw std::invalid_argument("graph/population size mismatch");
  }
  json j;
  j["n"] = g.n();
  j["types"] = pop.types();
  json edges = json::array();
  for (auto [u, v] : g.edges()) edges.push_back(json::array({u, v}));
  j["edges"] = std::move(edges);
  return j.dump() + "\n";
}

TypedGraph graph_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("graph file is not valid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("n") || !j.contains("types") || !j.contains("edges")) {
    throw std::invalid_argument("graph file must contain fields n, types, edges");
  }
  const int n = j.at("n").get<int>();
  auto types = j.at("types").get<std::vector<int>>();
  if (static_cast<int>(types.size()) != n) {
    throw std::invalid_argument("types length does not match n");
  }
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    if (!e.is_array() || e.size() != 2) {
      throw std::invalid_argument("each edge must be a pair [u,v]");
    }
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return TypedGraph{Graph::from_edges(n, edges), Population::from_types(std::move(types))};
}

void write_graph_file(const std::string& path, const Graph& g, const Population& pop) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << graph_to_json(g, pop);
}

TypedGraph read_graph_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open for reading: " + path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  return graph_from_json(text);
}

}  // namespace homonet
