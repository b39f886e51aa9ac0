#pragma once

// Edge cuts: max-flow/min-cut between two vertices, the four root statistics
// of a two-rooted graph, k-edge-connectivity predicates and Mader's split.

#include <algorithm>
#include <array>
#include <bit>
#include <limits>
#include <optional>
#include <queue>
#include <stdexcept>
#include <vector>

#include "immersion/multigraph.hpp"

namespace imm {

/// Every cut value of a graph. Index i < 2^(n-1) is the set with bitmask i,
/// which never contains vertex n-1; a set and its complement share a value.
class CutTable {
 public:
  explicit CutTable(const Multigraph& g) : n_(g.order()) {
    if (n_ == 0) return;
    const std::uint32_t count = 1u << (n_ - 1);
    values_.assign(count, 0);
    std::array<int, kMaxVertices> deg{};
    for (int v = 0; v < n_; ++v) deg[v] = g.degree(v);
    // Gray-code walk: one vertex enters or leaves per step.
    std::uint32_t cur = 0;
    int d = 0;
    for (std::uint32_t i = 1; i < count; ++i) {
      const int b = std::countr_zero(i);
      const std::uint32_t next = cur ^ (1u << b);
      if (next & (1u << b)) {
        d += deg[b] - 2 * g.mult_to(b, VertexSet(cur));
      } else {
        d -= deg[b] - 2 * g.mult_to(b, VertexSet(next));
      }
      cur = next;
      values_[cur] = d;
    }
  }

  int order() const { return n_; }
  std::uint32_t size() const { return static_cast<std::uint32_t>(values_.size()); }

  int operator()(VertexSet X) const {
    std::uint32_t b = X.bits();
    if (n_ > 0 && (b >> (n_ - 1)) & 1u) b = VertexSet::all(n_).bits() & ~b;
    return values_[b];
  }

  /// Calls f(side, value) for every cut, each once, sides in increasing mask order.
  template <class F>
  void for_each_cut(F&& f) const {
    for (std::uint32_t m = 1; m < values_.size(); ++m) f(VertexSet(m), values_[m]);
  }

 private:
  int n_;
  std::vector<int> values_;
};

struct MinCut {
  int size = 0;
  CutCertificate cut;  // source side
};

namespace detail {

// Edmonds-Karp over the multiplicity matrix; returns the residual capacities.
inline int max_flow(const Multigraph& g, int s, int t,
                    std::array<std::array<int, kMaxVertices>, kMaxVertices>& flow) {
  const int n = g.order();
  for (auto& row : flow) row.fill(0);
  int total = 0;
  for (;;) {
    std::array<int, kMaxVertices> pred;
    pred.fill(-1);
    pred[s] = s;
    std::array<int, kMaxVertices> q{};
    int qh = 0, qt = 0;
    q[qt++] = s;
    while (qh < qt && pred[t] < 0) {
      const int u = q[qh++];
      for (int v = 0; v < n; ++v) {
        if (pred[v] >= 0) continue;
        if (g.mult(u, v) - flow[u][v] > 0) {
          pred[v] = u;
          q[qt++] = v;
        }
      }
    }
    if (pred[t] < 0) return total;
    int aug = std::numeric_limits<int>::max();
    for (int v = t; v != s; v = pred[v]) aug = std::min(aug, g.mult(pred[v], v) - flow[pred[v]][v]);
    for (int v = t; v != s; v = pred[v]) {
      flow[pred[v]][v] += aug;
      flow[v][pred[v]] -= aug;
    }
    total += aug;
  }
}

}  // namespace detail

/// Maximum number of edge-disjoint s-t paths, with a minimum cut (s-side).
inline MinCut min_cut(const Multigraph& g, int s, int t) {
  if (s == t) throw contract_violation("min_cut needs distinct endpoints");
  if (s < 0 || t < 0 || s >= g.order() || t >= g.order()) throw contract_violation("vertex out of range");
  std::array<std::array<int, kMaxVertices>, kMaxVertices> flow;
  const int value = detail::max_flow(g, s, t, flow);
  std::uint32_t seen = 1u << s, frontier = seen;
  while (frontier) {
    const int u = std::countr_zero(frontier);
    frontier &= frontier - 1;
    for (int v = 0; v < g.order(); ++v) {
      if ((seen >> v) & 1u) continue;
      if (g.mult(u, v) - flow[u][v] > 0) {
        seen |= 1u << v;
        frontier |= 1u << v;
      }
    }
  }
  return {value, {VertexSet(seen), value}};
}

/// A maximum family of edge-disjoint s-t paths (vertex sequences), obtained by
/// decomposing an integral maximum flow.
inline std::vector<std::vector<int>> edge_disjoint_paths(const Multigraph& g, int s, int t) {
  if (s == t) throw contract_violation("edge_disjoint_paths needs distinct endpoints");
  std::array<std::array<int, kMaxVertices>, kMaxVertices> flow;
  const int value = detail::max_flow(g, s, t, flow);
  std::vector<std::vector<int>> paths;
  for (int k = 0; k < value; ++k) {
    // Walk positive flow from s to t, cutting cycles as they appear.
    std::vector<int> path{s};
    std::array<int, kMaxVertices> pos;
    pos.fill(-1);
    pos[s] = 0;
    int u = s;
    while (u != t) {
      int next = -1;
      for (int v = 0; v < g.order(); ++v)
        if (flow[u][v] > 0) {
          next = v;
          break;
        }
      if (next < 0) throw std::logic_error("flow decomposition lost conservation");
      --flow[u][next];
      ++flow[next][u];
      if (pos[next] >= 0) {
        for (std::size_t i = pos[next] + 1; i < path.size(); ++i) pos[path[i]] = -1;
        path.resize(pos[next] + 1);
      } else {
        pos[next] = static_cast<int>(path.size());
        path.push_back(next);
      }
      u = next;
    }
    paths.push_back(std::move(path));
  }
  return paths;
}

/// lambda_G(u, w) for every pair, read off the cut table (n <= kMaxVertices).
inline std::array<std::array<int, kMaxVertices>, kMaxVertices> local_edge_connectivity(const Multigraph& g) {
  std::array<std::array<int, kMaxVertices>, kMaxVertices> lam;
  for (auto& row : lam) row.fill(std::numeric_limits<int>::max());
  const int n = g.order();
  CutTable table(g);
  table.for_each_cut([&](VertexSet X, int d) {
    for (int u : X)
      for (int w = 0; w < n; ++w)
        if (!X.contains(w) && d < lam[u][w]) lam[u][w] = lam[w][u] = d;
  });
  return lam;
}

inline bool is_k_edge_connected(const Multigraph& g, int k) {
  if (g.order() < 2) return true;
  bool ok = true;
  CutTable(g).for_each_cut([&](VertexSet, int d) { ok = ok && d >= k; });
  return ok;
}

inline bool is_internally_k_edge_connected(const Multigraph& g, int k) {
  const int n = g.order();
  if (n < 4) return true;
  bool ok = true;
  CutTable(g).for_each_cut([&](VertexSet X, int d) {
    if (X.size() >= 2 && n - X.size() >= 2) ok = ok && d >= k;
  });
  return ok;
}

/// First cut (in increasing mask order) of size < k; `internal` restricts to
/// cuts with at least two vertices on each side.
inline std::optional<CutCertificate> find_cut_below(const Multigraph& g, int k, bool internal) {
  std::optional<CutCertificate> out;
  const int n = g.order();
  if (n < 2 || (internal && n < 4)) return out;
  CutTable(g).for_each_cut([&](VertexSet X, int d) {
    if (out || d >= k) return;
    if (internal && (X.size() < 2 || n - X.size() < 2)) return;
    out = CutCertificate{X, d};
  });
  return out;
}

struct Lambda {
  int size = 0;
  CutCertificate cut;
};

/// lambda_s / lambda_n and their internal variants for a two-rooted graph.
/// Separating certificates take the side holding the first root; the others
/// take the side holding neither root.
struct LambdaProfile {
  Lambda lambda_s;
  std::optional<Lambda> lambda_n;
  std::optional<Lambda> lambda_s_internal;
  std::optional<Lambda> lambda_n_internal;
};

inline LambdaProfile lambda_profile(const RootedMultigraph& g) {
  if (g.roots.size() != 2) throw contract_violation("lambda_profile needs exactly two roots");
  const int n = g.order();
  const int x0 = g.roots[0], x1 = g.roots[1];
  const VertexSet all = g.graph.vertices();
  LambdaProfile p;
  bool have_s = false;
  auto offer = [](std::optional<Lambda>& slot, VertexSet side, int d) {
    if (!slot || d < slot->size) slot = Lambda{d, {side, d}};
  };
  CutTable(g.graph).for_each_cut([&](VertexSet X, int d) {
    const bool internal = X.size() >= 2 && n - X.size() >= 2;
    if (X.contains(x0) != X.contains(x1)) {
      const VertexSet side = X.contains(x0) ? X : all - X;
      if (!have_s || d < p.lambda_s.size) {
        p.lambda_s = Lambda{d, {side, d}};
        have_s = true;
      }
      if (internal) offer(p.lambda_s_internal, side, d);
    } else {
      const VertexSet side = X.contains(x0) ? all - X : X;
      offer(p.lambda_n, side, d);
      if (internal) offer(p.lambda_n_internal, side, d);
    }
  });
  return p;
}

struct SplitPair {
  int a = -1;
  int b = -1;
  friend bool operator==(const SplitPair&, const SplitPair&) = default;
};

/// Raised when a search that a theorem guarantees to succeed comes back empty.
class theorem_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Removes one v-a and one v-b edge and, when a != b, adds an a-b edge.
inline Multigraph apply_split(const Multigraph& g, int v, SplitPair p) {
  if (p.a != p.b) return split_off(g, p.a, v, p.b);
  Multigraph h = g;
  h.remove_edges(v, p.a, 2);
  return h;
}

/// A pair of edges at v whose split keeps lambda(u, w) for all u, w != v.
/// Pairs with distinct far ends are tried first in lexicographic order; a
/// parallel pair (whose split would only make a loop, so both edges are
/// dropped) is the fallback.
inline SplitPair mader_split_pair(const Multigraph& g, int v) {
  const int n = g.order();
  if (v < 0 || v >= n) throw contract_violation("vertex out of range");
  if (g.degree(v) < 4) throw contract_violation("mader_split_pair needs degree at least 4");
  if (!g.is_connected() || !is_k_edge_connected(g, 2)) {
    throw contract_violation("mader_split_pair needs a 2-edge-connected graph");
  }
  const auto before = local_edge_connectivity(g);
  auto preserves = [&](SplitPair p) {
    const auto after = local_edge_connectivity(apply_split(g, v, p));
    for (int u = 0; u < n; ++u)
      for (int w = u + 1; w < n; ++w)
        if (u != v && w != v && after[u][w] != before[u][w]) return false;
    return true;
  };
  const std::vector<int> nb = g.neighbours(v).members();
  for (std::size_t i = 0; i < nb.size(); ++i)
    for (std::size_t j = i + 1; j < nb.size(); ++j)
      if (preserves({nb[i], nb[j]})) return {nb[i], nb[j]};
  for (int a : nb)
    if (g.mult(v, a) >= 2 && preserves({a, a})) return {a, a};
  throw theorem_violation("no admissible split pair found");
}

}  // namespace imm
