#pragma once

// Exact tree-width by dynamic programming over elimination orderings.

#include <algorithm>
#include <climits>
#include <utility>
#include <vector>

#include "immersion/multigraph.hpp"

namespace imm {

inline constexpr int kMaxTreewidthOrder = 12;

struct TreeDecomposition {
  std::vector<VertexSet> bags;
  std::vector<std::pair<int, int>> edges;

  int width() const {
    int w = -1;
    for (VertexSet b : bags) w = std::max(w, b.size() - 1);
    return w;
  }
};

struct TreewidthResult {
  int width = -1;
  TreeDecomposition decomposition;
  std::vector<int> elimination_order;
};

namespace detail {

// Vertices outside S + v reachable from v through S.
inline int elimination_degree(const std::vector<std::uint32_t>& adj, std::uint32_t S, int v) {
  std::uint32_t seen = (1u << v), frontier = (1u << v), out = 0;
  while (frontier) {
    const int x = std::countr_zero(frontier);
    frontier &= frontier - 1;
    const std::uint32_t nb = adj[x] & ~seen;
    seen |= nb;
    out |= nb & ~S;
    frontier |= nb & S;
  }
  return std::popcount(out);
}

}  // namespace detail

/// Bags {v} + later neighbours in the filled graph, each attached to the bag of
/// its earliest-eliminated later neighbour; separate trees are chained.
inline TreeDecomposition decomposition_from_order(const Multigraph& g, const std::vector<int>& order) {
  const int n = g.order();
  std::vector<std::uint32_t> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = g.neighbours(v).bits();
  std::vector<int> position(n);
  for (int i = 0; i < n; ++i) position[order[i]] = i;
  TreeDecomposition td;
  std::vector<int> parent(n, -1);
  std::uint32_t alive = VertexSet::all(n).bits();
  for (int i = 0; i < n; ++i) {
    const int v = order[i];
    const std::uint32_t nb = adj[v] & alive & ~(1u << v);
    td.bags.push_back(VertexSet(nb | (1u << v)));
    for (int a : VertexSet(nb)) adj[a] |= nb & ~(1u << a);
    int best = -1;
    for (int a : VertexSet(nb))
      if (best < 0 || position[a] < position[best]) best = a;
    if (best >= 0) parent[i] = position[best];
    alive &= ~(1u << v);
  }
  int last_root = -1;
  for (int i = 0; i < n; ++i) {
    if (parent[i] >= 0) {
      td.edges.emplace_back(i, parent[i]);
    } else {
      if (last_root >= 0) td.edges.emplace_back(last_root, i);
      last_root = i;
    }
  }
  return td;
}

inline TreewidthResult treewidth_exact(const Multigraph& g) {
  const int n = g.order();
  if (n > kMaxTreewidthOrder) throw too_large("treewidth_exact supports at most 12 vertices");
  TreewidthResult r;
  if (n == 0) return r;
  std::vector<std::uint32_t> adj(n);
  for (int v = 0; v < n; ++v) adj[v] = g.neighbours(v).bits();
  const std::uint32_t full = VertexSet::all(n).bits();
  std::vector<int> tw(full + 1, INT_MAX);
  std::vector<signed char> last(full + 1, -1);
  tw[0] = -1;
  for (std::uint32_t S = 1; S <= full; ++S) {
    for (int v : VertexSet(S)) {
      const std::uint32_t rest = S & ~(1u << v);
      const int val = std::max(tw[rest], detail::elimination_degree(adj, rest, v));
      if (val < tw[S]) {
        tw[S] = val;
        last[S] = static_cast<signed char>(v);
      }
    }
  }
  std::vector<int> order;
  for (std::uint32_t S = full; S; S &= ~(1u << last[S])) order.push_back(last[S]);
  std::reverse(order.begin(), order.end());
  r.width = std::max(tw[full], 0);
  r.elimination_order = order;
  r.decomposition = decomposition_from_order(g, order);
  return r;
}

/// Tree shape, vertex coverage, edge coverage and connected occupancy.
inline bool verify_decomposition(const Multigraph& g, const TreeDecomposition& td) {
  const int n = g.order(), k = static_cast<int>(td.bags.size());
  if (k == 0) return n == 0;
  if (static_cast<int>(td.edges.size()) != k - 1) return false;
  std::vector<std::vector<int>> tree(k);
  for (auto [a, b] : td.edges) {
    if (a < 0 || b < 0 || a >= k || b >= k || a == b) return false;
    tree[a].push_back(b);
    tree[b].push_back(a);
  }
  auto connected_within = [&](const std::vector<bool>& allowed) {
    int start = -1, count = 0;
    for (int i = 0; i < k; ++i)
      if (allowed[i]) {
        ++count;
        if (start < 0) start = i;
      }
    if (count == 0) return false;
    std::vector<bool> seen(k, false);
    std::vector<int> stack{start};
    seen[start] = true;
    int reached = 0;
    while (!stack.empty()) {
      const int x = stack.back();
      stack.pop_back();
      ++reached;
      for (int y : tree[x])
        if (allowed[y] && !seen[y]) {
          seen[y] = true;
          stack.push_back(y);
        }
    }
    return reached == count;
  };
  if (!connected_within(std::vector<bool>(k, true))) return false;
  for (VertexSet b : td.bags)
    if (!b.is_subset_of(g.vertices())) return false;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      if (g.mult(u, v) == 0) continue;
      bool covered = false;
      for (VertexSet b : td.bags) covered = covered || (b.contains(u) && b.contains(v));
      if (!covered) return false;
    }
  for (int v = 0; v < n; ++v) {
    std::vector<bool> has(k);
    for (int i = 0; i < k; ++i) has[i] = td.bags[i].contains(v);
    if (!connected_within(has)) return false;
  }
  return true;
}

}  // namespace imm
