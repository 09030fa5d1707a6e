#pragma once

#include <string>

#include "homonet/graph.hpp"
#include "homonet/population.hpp"

namespace homonet {

struct TypedGraph {
  Graph graph;
  Population pop;
};

/// Canonical JSON graph format: {"n": int, "types": [int], "edges": [[u,v],...]}.
/// Writers emit edges as (min,max) pairs sorted lexicographically; readers
/// accept any order and symmetric duplicates.
std::string graph_to_json(const Graph& g, const Population& pop);
TypedGraph graph_from_json(const std::string& text);

void write_graph_file(const std::string& path, const Graph& g, const Population& pop);
TypedGraph read_graph_file(const std::string& path);

}  // namespace homonet
