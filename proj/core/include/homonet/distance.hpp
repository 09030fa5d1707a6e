#pragma once

#include <cstdint>
#include <vector>

#include "homonet/extint.hpp"
#include "homonet/graph.hpp"

namespace homonet {

/// Distances are stored as uint16 with an unreachable sentinel above every
/// finite value (finite shortest paths are < n <= 65534). Sums and deltas are
/// widened to 64 bits before any arithmetic, so the sentinel never leaks into
/// a computation.
using Dist = std::uint16_t;
inline constexpr Dist kUnreachable = 0xFFFF;

using DistanceRow = std::vector<Dist>;

DistanceRow bfs_row(const Graph& g, int source);

/// Sum of one agent's distances; infinite as soon as anything is unreachable.
ExtInt distance_sum(const DistanceRow& row);

ExtInt diameter(const Graph& g);

/// Change in one agent's distance sum caused by a single edge move.
/// `reconnect` means a previously unreachable agent becomes reachable, which
/// dominates every finite term (infinitely improving); `disconnect` is the
/// reverse. `value` is meaningful only when kind == finite.
struct DistDelta {
  enum class Kind { finite, reconnect, disconnect };
  Kind kind = Kind::finite;
  std::int64_t value = 0;

  static DistDelta finite(std::int64_t v) { return {Kind::finite, v}; }
  static DistDelta reconnect() { return {Kind::reconnect, 0}; }
  static DistDelta disconnect() { return {Kind::disconnect, 0}; }
};

/// Delta of u's distance sum after adding edge uv, from the current exact BFS
/// rows of u and v: the new d(u,x) is min(d(u,x), 1 + d(v,x)) because a
/// shortest path can use the new edge at most once. Always <= 0 or reconnect.
DistDelta delta_distance_add(const DistanceRow& row_u, const DistanceRow& row_v);

/// Delta of u's distance sum after deleting edge uv, by BFS on G - uv.
/// Always >= 0 or disconnect. Throws if uv is not an edge.
DistDelta delta_distance_delete(const Graph& g, int u, int v);

/// Full all-pairs table maintained during dynamics and enumeration.
struct DistanceMatrix {
  std::vector<DistanceRow> rows;

  void refresh(const Graph& g);  // n BFS passes

  /// Exact in-place update after edge (u,v) was added: for every agent w,
  /// d'(w,x) = min(d(w,x), d(w,u)+1+d(v,x), d(w,v)+1+d(u,x)) over the old
  /// table. Rows with |d(w,u) - d(w,v)| <= 1 cannot change and are skipped.
  void apply_add(int u, int v);
};

}  // namespace homonet
