#pragma once

#include <vector>

namespace homonet {

/// Agent population partitioned into k >= 1 types. Convention enforced at
/// construction: type counts are non-decreasing in type id, so type 0 is a
/// minimum-size type ("blue", n_B) and type k-1 a maximum-size type ("red",
/// n_R). Several constructions and theorem predicates rely on this order.
class Population {
 public:
  /// Builds from a per-agent type vector. Type ids must be contiguous
  /// (0..k-1, each used at least once) and counts non-decreasing.
  static Population from_types(std::vector<int> types);

  /// Builds with agents laid out in type blocks: counts[0] agents of type 0
  /// first, then counts[1] of type 1, and so on.
  static Population from_counts(const std::vector<int>& counts);

  int n() const { return static_cast<int>(types_.size()); }
  int type_count() const { return static_cast<int>(counts_.size()); }
  int type_of(int u) const { return types_[u]; }
  const std::vector<int>& types() const { return types_; }
  const std::vector<int>& counts() const { return counts_; }
  int count_of(int type) const { return counts_[type]; }
  /// n_B: size of a smallest type.
  int min_count() const { return counts_.front(); }
  /// n_R: size of a largest type.
  int max_count() const { return counts_.back(); }
  bool same_type(int u, int v) const { return types_[u] == types_[v]; }

  /// First agent id of the given type under the block layout produced by
  /// from_counts. Only meaningful for block-ordered populations; the
  /// construction builders use it for agent labelling.
  int block_offset(int type) const;

 private:
  Population() = default;
  std::vector<int> types_;
  std::vector<int> counts_;
};

}  // namespace homonet
