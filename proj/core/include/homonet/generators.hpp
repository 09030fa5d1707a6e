#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "homonet/graph.hpp"
#include "homonet/graph_io.hpp"
#include "homonet/population.hpp"
#include "homonet/rng.hpp"

namespace homonet {

/// Recipe for an initial network + coloring. Identical specs and seeds
/// reproduce identical outputs bit-for-bit on every platform.
struct InitSpec {
  enum class Topology { random_tree, grid };
  enum class Coloring { integrated, segregated };

  Topology topology = Topology::random_tree;
  Coloring coloring = Coloring::integrated;
  std::vector<int> counts;  // per-type sizes, non-decreasing
  int rows = 0;             // grid only
  int cols = 0;             // grid only
  std::optional<int> split_rows;  // segregated grid; defaults to rows/2
  std::uint64_t seed = 0;
};

std::string topology_name(InitSpec::Topology t);
std::string coloring_name(InitSpec::Coloring c);
InitSpec::Topology parse_topology(const std::string& name);
InitSpec::Coloring parse_coloring(const std::string& name);

/// Random recursive tree: node i (i >= 1) attaches to a uniform pick from
/// 0..i-1. Node count n >= 1; exactly n-1 edges, always connected.
Graph random_recursive_tree(int n, Xoshiro256ss& rng);

/// 4-neighbor lattice with node (r, c) at index r*cols + c.
Graph grid_graph(int rows, int cols);

/// Uniformly random permutation of the type multiset given by `counts`
/// (Fisher-Yates over the block-ordered assignment). sum(counts) must be n.
std::vector<int> integrated_coloring(int n, const std::vector<int>& counts, Xoshiro256ss& rng);

/// Two independent random recursive trees, one per type, joined by an edge
/// between their index-0 roots. Exactly one bichromatic edge.
TypedGraph segregated_tree(const std::vector<int>& half_counts, Xoshiro256ss& rng);

/// Grid whose first `split_rows` rows get one type and the rest the other.
/// Labels are chosen so the smaller side is type 0 (populations list type
/// counts in non-decreasing order). split_rows = 0 or rows yields a single
/// monochromatic type.
TypedGraph segregated_grid(int rows, int cols, int split_rows);

/// Materialize a spec. The rng overload lets a caller drive initialization
/// from its own stream; the plain overload seeds a fresh stream from
/// spec.seed. Draw order is part of the contract: topology draws first, then
/// coloring draws.
TypedGraph build_init(const InitSpec& spec, Xoshiro256ss& rng);
TypedGraph build_init(const InitSpec& spec);

}  // namespace homonet
