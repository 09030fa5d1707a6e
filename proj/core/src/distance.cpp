#include "homonet/distance.hpp"

#include <algorithm>
#include <stdexcept>

namespace homonet {
namespace {

constexpr std::int32_t kFar = 1 << 20;  // widened stand-in for the sentinel

inline std::int32_t widen(Dist d) { return d == kUnreachable ? kFar : d; }

void bfs_into(const Graph& g, int source, DistanceRow& row, std::vector<std::int32_t>& queue) {
  const int n = g.n();
  row.assign(n, kUnreachable);
  queue.clear();
  row[source] = 0;
  queue.push_back(source);
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const int u = queue[head];
    const Dist next = static_cast<Dist>(row[u] + 1);
    for (int v : g.neighbors(u)) {
      if (row[v] == kUnreachable) {
        row[v] = next;
        queue.push_back(v);
      }
    }
  }
}

}  // namespace

DistanceRow bfs_row(const Graph& g, int source) {
  if (source < 0 || source >= g.n()) throw std::out_of_range("bfs_row: bad source");
  DistanceRow row;
  std::vector<std::int32_t> queue;
  bfs_into(g, source, row, queue);
  return row;
}

ExtInt distance_sum(const DistanceRow& row) {
  std::int64_t sum = 0;
  for (Dist d : row) {
    if (d == kUnreachable) return ExtInt::infinity();
    sum += d;
  }
  return ExtInt(sum);
}

ExtInt diameter(const Graph& g) {
  const int n = g.n();
  if (n <= 1) return ExtInt(0);
  DistanceRow row;
  std::vector<std::int32_t> queue;
  std::int64_t best = 0;
  for (int u = 0; u < n; ++u) {
    bfs_into(g, u, row, queue);
    for (Dist d : row) {
      if (d == kUnreachable) return ExtInt::infinity();
      best = std::max<std::int64_t>(best, d);
    }
  }
  return ExtInt(best);
}

DistDelta delta_distance_add(const DistanceRow& row_u, const DistanceRow& row_v) {
  std::int64_t delta = 0;
  bool reconnects = false;
  for (std::size_t x = 0; x < row_u.size(); ++x) {
    const Dist du = row_u[x];
    const Dist dv = row_v[x];
    if (du == kUnreachable) {
      if (dv != kUnreachable) reconnects = true;  // x becomes reachable through v
      continue;
    }
    if (dv == kUnreachable) continue;
    const std::int32_t via = static_cast<std::int32_t>(dv) + 1;
    if (via < du) delta += via - du;
  }
  if (reconnects) return DistDelta::reconnect();
  return DistDelta::finite(delta);
}

DistDelta delta_distance_delete(const Graph& g, int u, int v) {
  if (!g.has_edge(u, v)) {
    throw std::invalid_argument("delta_distance_delete: edge not present");
  }
  Graph h = g;
  h.delete_edge(u, v);
  const DistanceRow before = bfs_row(g, u);
  const DistanceRow after = bfs_row(h, u);
  std::int64_t delta = 0;
  for (std::size_t x = 0; x < before.size(); ++x) {
    if (after[x] == kUnreachable) {
      if (before[x] != kUnreachable) return DistDelta::disconnect();
      continue;
    }
    delta += static_cast<std::int64_t>(after[x]) - static_cast<std::int64_t>(before[x]);
  }
  return DistDelta::finite(delta);
}

void DistanceMatrix::refresh(const Graph& g) {
  const int n = g.n();
  rows.resize(n);
  std::vector<std::int32_t> queue;
  queue.reserve(n);
  for (int u = 0; u < n; ++u) bfs_into(g, u, rows[u], queue);
}

void DistanceMatrix::apply_add(int u, int v) {
  const int n = static_cast<int>(rows.size());
  const DistanceRow old_u = rows[u];
  const DistanceRow old_v = rows[v];
  for (int w = 0; w < n; ++w) {
    const std::int32_t a = widen(rows[w][u]);
    const std::int32_t b = widen(rows[w][v]);
    // If w is (nearly) equidistant from both endpoints, no path through the
    // new edge can beat the triangle inequality; the whole row is unchanged.
    if (a - b <= 1 && b - a <= 1) continue;
    DistanceRow& row = rows[w];
    for (int x = 0; x < n; ++x) {
      const std::int32_t cand =
          std::min(a + 1 + widen(old_v[x]), b + 1 + widen(old_u[x]));
      if (cand < widen(row[x])) row[x] = static_cast<Dist>(cand);
    }
  }
}

}  // namespace homonet
