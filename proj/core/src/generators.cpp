#include "homonet/generators.hpp"

#include <numeric>
#include <stdexcept>
#include <utility>

namespace homonet {

namespace {

void shuffle_ints(std::vector<int>& a, Xoshiro256ss& rng) {
  for (std::size_t i = a.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(rng.bounded(i));
    std::swap(a[i - 1], a[j]);
  }
}

int checked_sum(const std::vector<int>& counts) {
  return std::accumulate(counts.begin(), counts.end(), 0);
}

}  // namespace

std::string topology_name(InitSpec::Topology t) {
  return t == InitSpec::Topology::random_tree ? "random_tree" : "grid";
}

std::string coloring_name(InitSpec::Coloring c) {
  return c == InitSpec::Coloring::integrated ? "integrated" : "segregated";
}

InitSpec::Topology parse_topology(const std::string& name) {
  if (name == "random_tree" || name == "tree") return InitSpec::Topology::random_tree;
  if (name == "grid") return InitSpec::Topology::grid;
  throw std::invalid_argument("unknown topology: " + name);
}

InitSpec::Coloring parse_coloring(const std::string& name) {
  if (name == "integrated") return InitSpec::Coloring::integrated;
  if (name == "segregated") return InitSpec::Coloring::segregated;
  throw std::invalid_argument("unknown coloring: " + name);
}

Graph random_recursive_tree(int n, Xoshiro256ss& rng) {
  if (n < 1) throw std::invalid_argument("tree needs at least one node");
  Graph g(n);
  for (int i = 1; i < n; ++i) {
    g.add_edge(i, static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i))));
  }
  return g;
}

Graph grid_graph(int rows, int cols) {
  if (rows < 1 || cols < 1) {
    throw std::invalid_argument("grid dimensions must be positive, got " + std::to_string(rows) +
                                "x" + std::to_string(cols));
  }
  Graph g(rows * cols);
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      const int id = r * cols + c;
      if (c + 1 < cols) g.add_edge(id, id + 1);
      if (r + 1 < rows) g.add_edge(id, id + cols);
    }
  }
  return g;
}

std::vector<int> integrated_coloring(int n, const std::vector<int>& counts, Xoshiro256ss& rng) {
  if (checked_sum(counts) != n) {
    throw std::invalid_argument("type counts sum to " + std::to_string(checked_sum(counts)) +
                                ", expected " + std::to_string(n));
  }
  std::vector<int> types;
  types.reserve(static_cast<std::size_t>(n));
  for (std::size_t t = 0; t < counts.size(); ++t) {
    types.insert(types.end(), static_cast<std::size_t>(counts[t]), static_cast<int>(t));
  }
  shuffle_ints(types, rng);
  return types;
}

TypedGraph segregated_tree(const std::vector<int>& half_counts, Xoshiro256ss& rng) {
  if (half_counts.size() != 2) {
    throw std::invalid_argument("segregated tree requires exactly two types");
  }
  const int a = half_counts[0];
  const int b = half_counts[1];
  if (a < 1 || b < 1) throw std::invalid_argument("both halves need at least one node");
  Graph g(a + b);
  for (int i = 1; i < a; ++i) {
    g.add_edge(i, static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i))));
  }
  for (int i = 1; i < b; ++i) {
    g.add_edge(a + i, a + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(i))));
  }
  g.add_edge(0, a);  // join the two roots: the only bichromatic edge
  std::vector<int> types(static_cast<std::size_t>(a + b), 1);
  std::fill(types.begin(), types.begin() + a, 0);
  return TypedGraph{std::move(g), Population::from_types(types)};
}

TypedGraph segregated_grid(int rows, int cols, int split_rows) {
  if (split_rows < 0 || split_rows > rows) {
    throw std::invalid_argument("split must lie in [0, rows], got " + std::to_string(split_rows));
  }
  Graph g = grid_graph(rows, cols);
  if (split_rows == 0 || split_rows == rows) {
    return TypedGraph{std::move(g),
                      Population::from_types(std::vector<int>(static_cast<std::size_t>(rows * cols), 0))};
  }
  // Type 0 must be the (weakly) smaller side.
  const bool top_is_minority = split_rows <= rows - split_rows;
  std::vector<int> types(static_cast<std::size_t>(rows * cols));
  for (int r = 0; r < rows; ++r) {
    const int t = (r < split_rows) == top_is_minority ? 0 : 1;
    std::fill(types.begin() + static_cast<std::ptrdiff_t>(r) * cols,
              types.begin() + static_cast<std::ptrdiff_t>(r + 1) * cols, t);
  }
  return TypedGraph{std::move(g), Population::from_types(types)};
}

TypedGraph build_init(const InitSpec& spec, Xoshiro256ss& rng) {
  const Population declared = Population::from_counts(spec.counts);
  const int n = declared.n();

  if (spec.topology == InitSpec::Topology::grid) {
    if (spec.rows < 1 || spec.cols < 1) {
      throw std::invalid_argument("grid topology needs positive rows and cols");
    }
    if (spec.rows * spec.cols != n) {
      throw std::invalid_argument("grid has " + std::to_string(spec.rows * spec.cols) +
                                  " nodes but counts sum to " + std::to_string(n));
    }
  }

  switch (spec.coloring) {
    case InitSpec::Coloring::integrated: {
      Graph g = spec.topology == InitSpec::Topology::random_tree
                    ? random_recursive_tree(n, rng)
                    : grid_graph(spec.rows, spec.cols);
      auto types = integrated_coloring(n, spec.counts, rng);
      return TypedGraph{std::move(g), Population::from_types(types)};
    }
    case InitSpec::Coloring::segregated: {
      if (spec.topology == InitSpec::Topology::random_tree) {
        return segregated_tree(spec.counts, rng);
      }
      const int split = spec.split_rows.value_or(spec.rows / 2);
      TypedGraph out = segregated_grid(spec.rows, spec.cols, split);
      if (out.pop.counts() != declared.counts()) {
        throw std::invalid_argument("segregated grid split produces type counts that disagree "
                                    "with the requested counts");
      }
      return out;
    }
  }
  throw std::logic_error("unknown coloring");
}

TypedGraph build_init(const InitSpec& spec) {
  Xoshiro256ss rng(spec.seed);
  return build_init(spec, rng);
}

}  // namespace homonet
