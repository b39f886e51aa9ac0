#pragma once

// Weak (rooted) immersion: patterns, the path-packing decider and an
// independent witness checker.

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "immersion/connectivity.hpp"
#include "immersion/multigraph.hpp"

namespace imm {

enum class PatternKind { K4, Wheel, Dm, DoubledCycle, DoubledPath, Custom };

/// Selects a pattern. `param` is k for W(k), m for D(m) and the vertex count
/// for doubled cycles and paths. `roots` pins that many leading vertices of
/// K4 / W(k) / doubled shapes (the hub is vertex 0 of a wheel); D(m) always
/// has its two roots.
struct PatternId {
  PatternKind kind = PatternKind::K4;
  int param = 0;
  int roots = 0;
  RootedMultigraph custom;

  static PatternId k4(int roots = 0) { return {PatternKind::K4, 4, roots, {}}; }
  static PatternId wheel(int k, int roots = 0) { return {PatternKind::Wheel, k, roots, {}}; }
  static PatternId dm(int m) { return {PatternKind::Dm, m, 2, {}}; }
  static PatternId doubled_cycle(int len, int roots = 0) { return {PatternKind::DoubledCycle, len, roots, {}}; }
  static PatternId doubled_path(int len, int roots = 0) { return {PatternKind::DoubledPath, len, roots, {}}; }
  static PatternId of(RootedMultigraph g) { return {PatternKind::Custom, 0, g.roots.size(), std::move(g)}; }
};

inline RootedMultigraph make_pattern(const PatternId& id) {
  auto leading_roots = [&](int n) {
    if (id.roots < 0 || id.roots > 2 || id.roots > n) throw contract_violation("bad pattern root count");
    Roots r;
    for (int i = 0; i < id.roots; ++i) r.push_back(i);
    return r;
  };
  switch (id.kind) {
    case PatternKind::K4: {
      Multigraph g(4);
      for (int u = 0; u < 4; ++u)
        for (int v = u + 1; v < 4; ++v) g.set_mult(u, v, 1);
      return {g, leading_roots(4)};
    }
    case PatternKind::Wheel: {
      const int k = id.param;
      if (k < 3 || k + 1 > kMaxVertices) throw contract_violation("wheel needs k >= 3");
      Multigraph g(k + 1);
      for (int i = 1; i <= k; ++i) {
        g.add_edges(0, i);
        g.add_edges(i, i % k + 1);
      }
      return {g, leading_roots(k + 1)};
    }
    case PatternKind::Dm: {
      const int m = id.param;
      if (m < 2 || m - 2 > kMaxMultiplicity) throw contract_violation("D(m) needs m >= 2");
      // x0 = 0, x1 = 1, y0 = 2, y1 = 3
      Multigraph g = Multigraph::from_edges(4, {{0, 2, 1}, {0, 3, 1}, {1, 2, 1}, {1, 3, 1}, {2, 3, 1}});
      if (m > 2) g.set_mult(0, 1, m - 2);
      return {g, Roots{0, 1}};
    }
    case PatternKind::DoubledCycle: {
      const int len = id.param;
      if (len < 3 || len > kMaxVertices) throw contract_violation("doubled cycle needs length >= 3");
      Multigraph g(len);
      for (int i = 0; i < len; ++i) g.add_edges(i, (i + 1) % len, 2);
      return {g, leading_roots(len)};
    }
    case PatternKind::DoubledPath: {
      const int len = id.param;
      if (len < 2 || len > kMaxVertices) throw contract_violation("doubled path needs length >= 2");
      Multigraph g(len);
      for (int i = 0; i + 1 < len; ++i) g.add_edges(i, i + 1, 2);
      return {g, leading_roots(len)};
    }
    case PatternKind::Custom:
      return id.custom;
  }
  throw contract_violation("unknown pattern kind");
}

/// Edges of g with multiplicity expanded, as (u, v) with u < v in
/// lexicographic order. Witness routes follow this order.
inline std::vector<std::pair<int, int>> expanded_edges(const Multigraph& g) {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      for (int k = 0; k < g.mult(u, v); ++k) out.emplace_back(u, v);
  return out;
}

/// A pattern with the data the search reuses across hosts.
class Pattern {
 public:
  Pattern(RootedMultigraph g) : g_(std::move(g)), edges_(expanded_edges(g_.graph)) {  // NOLINT
    const int k = g_.order();
    std::vector<int> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    if (k > 8) {
      autos_.push_back(perm);
      return;
    }
    do {
      bool ok = true;
      for (int u = 0; u < k && ok; ++u)
        for (int v = u + 1; v < k && ok; ++v) ok = g_.graph.mult(u, v) == g_.graph.mult(perm[u], perm[v]);
      if (!ok) continue;
      bool fixes = true;
      for (int r : g_.roots) fixes = fixes && perm[r] == r;
      if (fixes) autos_.push_back(perm);
      if (g_.roots.size() == 2 && perm[g_.roots[0]] == g_.roots[1] && perm[g_.roots[1]] == g_.roots[0]) {
        root_swap_ = true;
      }
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  Pattern(const PatternId& id) : Pattern(make_pattern(id)) {}  // NOLINT

  const RootedMultigraph& graph() const { return g_; }
  int order() const { return g_.order(); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  /// Automorphisms fixing every root (perm[v] is the image of v).
  const std::vector<std::vector<int>>& automorphisms() const { return autos_; }
  bool has_root_swap() const { return root_swap_; }

 private:
  RootedMultigraph g_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> autos_;
  bool root_swap_ = false;
};

struct ImmersionWitness {
  std::vector<int> terminal_map;         // pattern vertex -> host vertex
  std::vector<std::vector<int>> routes;  // one host path per entry of expanded_edges(pattern)
  friend bool operator==(const ImmersionWitness&, const ImmersionWitness&) = default;
};

namespace detail {

class ImmersionSearch {
 public:
  ImmersionSearch(const RootedMultigraph& host, const Pattern& p)
      : p_(p), h_(cap_multiplicities(host.graph, std::max(1, p.edge_count()))), n_(host.order()) {
    if (p.graph().roots.size() > host.roots.size()) {
      throw contract_violation("pattern has more roots than the host");
    }
    for (int i = 0; i < p.graph().roots.size(); ++i) pinned_.emplace_back(p.graph().roots[i], host.roots[i]);
    const int k = p.order();
    std::vector<bool> is_root(k, false);
    for (auto [pv, hv] : pinned_) is_root[pv] = true;
    for (int v = 0; v < k; ++v)
      if (!is_root[v]) free_.push_back(v);
    std::stable_sort(free_.begin(), free_.end(),
                     [&](int a, int b) { return p.graph().graph.degree(a) > p.graph().graph.degree(b); });
    if (n_ >= 2) {
      const CutTable t(h_);
      cuts_.resize(t.size());
      for (std::uint32_t m = 1; m < t.size(); ++m) cuts_[m] = t(VertexSet(m));
    }
  }

  std::optional<ImmersionWitness> run() {
    const int k = p_.order();
    if (k > n_) return std::nullopt;
    phi_.assign(k, -1);
    std::uint32_t used = 0;
    for (auto [pv, hv] : pinned_) {
      if (h_.degree(hv) < p_.graph().graph.degree(pv)) return std::nullopt;
      phi_[pv] = hv;
      used |= 1u << hv;
    }
    if (assign(0, used)) return witness_;
    return std::nullopt;
  }

 private:
  using Path = std::vector<int>;

  bool assign(std::size_t idx, std::uint32_t used) {
    if (idx == free_.size()) return canonical_under_automorphisms() && feasible_by_cuts() && route_all();
    const int pv = free_[idx];
    const int need = p_.graph().graph.degree(pv);
    for (int hv = 0; hv < n_; ++hv) {
      if ((used >> hv) & 1u) continue;
      if (h_.degree(hv) < need) continue;
      phi_[pv] = hv;
      if (assign(idx + 1, used | (1u << hv))) return true;
    }
    phi_[pv] = -1;
    return false;
  }

  // Keep only the lexicographically least map in each orbit of Aut(pattern).
  bool canonical_under_automorphisms() const {
    const int k = p_.order();
    for (const auto& a : p_.automorphisms()) {
      for (int v = 0; v < k; ++v) {
        const int img = phi_[a[v]];
        if (img < phi_[v]) return false;
        if (img > phi_[v]) break;
      }
    }
    return true;
  }

  // Necessary condition: no host cut is crossed by more demands than edges.
  bool feasible_by_cuts() {
    const auto& e = p_.edges();
    demands_.clear();
    for (auto [u, v] : e) demands_.emplace_back(phi_[u], phi_[v]);
    suffix_.assign(demands_.size() + 1, std::vector<std::uint8_t>(cuts_.size(), 0));
    for (std::size_t i = demands_.size(); i-- > 0;) {
      const auto [a, b] = demands_[i];
      for (std::uint32_t m = 1; m < cuts_.size(); ++m) {
        suffix_[i][m] = static_cast<std::uint8_t>(suffix_[i + 1][m] + (((m >> a) ^ (m >> b)) & 1u));
      }
    }
    for (std::uint32_t m = 1; m < cuts_.size(); ++m)
      if (suffix_[0][m] > cuts_[m]) return false;
    return true;
  }

  bool route_all() {
    failed_.clear();
    residual_ = h_;
    routes_.assign(demands_.size(), {});
    std::vector<int> cuts = cuts_;
    if (!route(0, cuts)) return false;
    witness_.terminal_map = phi_;
    witness_.routes = routes_;
    return true;
  }

  std::string state_key(std::size_t i) const {
    std::string key;
    key.reserve(2 + n_ * (n_ - 1) / 2 + 16);
    key.push_back(static_cast<char>(i));
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) key.push_back(static_cast<char>(residual_.mult(u, v)));
    if (i > 0 && demands_[i] == demands_[i - 1]) {
      key.push_back('|');
      for (int x : routes_[i - 1]) key.push_back(static_cast<char>(x));
    }
    return key;
  }

  static bool path_less(const Path& a, const Path& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  }

  void collect_paths(int u, int t, std::uint32_t seen, Path& cur, std::vector<Path>& out) const {
    if (u == t) {
      out.push_back(cur);
      return;
    }
    for (int v = 0; v < n_; ++v) {
      if ((seen >> v) & 1u) continue;
      if (residual_.mult(u, v) == 0) continue;
      cur.push_back(v);
      collect_paths(v, t, seen | (1u << v), cur, out);
      cur.pop_back();
    }
  }

  bool route(std::size_t i, std::vector<int>& cuts) {
    if (i == demands_.size()) return true;
    std::string key = state_key(i);
    if (failed_.count(key)) return false;
    const auto [a, b] = demands_[i];
    std::vector<Path> paths;
    Path cur{a};
    collect_paths(a, b, 1u << a, cur, paths);
    std::sort(paths.begin(), paths.end(), path_less);
    const bool parallel = i > 0 && demands_[i] == demands_[i - 1];
    for (const Path& path : paths) {
      if (parallel && path_less(path, routes_[i - 1])) continue;
      for (std::size_t j = 0; j + 1 < path.size(); ++j) residual_.remove_edges(path[j], path[j + 1]);
      std::vector<int> next = cuts;
      bool ok = true;
      for (std::size_t j = 0; j + 1 < path.size(); ++j) {
        const std::uint32_t x = path[j], y = path[j + 1];
        for (std::uint32_t m = 1; m < next.size(); ++m)
          if (((m >> x) ^ (m >> y)) & 1u) --next[m];
      }
      for (std::uint32_t m = 1; m < next.size() && ok; ++m) ok = suffix_[i + 1][m] <= next[m];
      if (ok) {
        routes_[i] = path;
        if (route(i + 1, next)) return true;
      }
      for (std::size_t j = 0; j + 1 < path.size(); ++j) residual_.add_edges(path[j], path[j + 1]);
    }
    failed_.insert(std::move(key));
    return false;
  }

  const Pattern& p_;
  Multigraph h_;
  int n_;
  std::vector<std::pair<int, int>> pinned_;
  std::vector<int> free_;
  std::vector<int> cuts_;
  std::vector<int> phi_;
  std::vector<std::pair<int, int>> demands_;
  std::vector<std::vector<std::uint8_t>> suffix_;
  Multigraph residual_;
  std::vector<Path> routes_;
  std::unordered_set<std::string> failed_;
  ImmersionWitness witness_;
};

}  // namespace detail

/// A witness iff host weakly immerses pattern, with pattern root i sent to
/// host root i. Exact; multiplicities above |E(pattern)| are capped first.
inline std::optional<ImmersionWitness> immerses(const RootedMultigraph& host, const Pattern& pattern) {
  return detail::ImmersionSearch(host, pattern).run();
}

inline std::optional<ImmersionWitness> immerses(const RootedMultigraph& host, const RootedMultigraph& pattern) {
  return immerses(host, Pattern(pattern));
}

/// Independent check of every witness invariant.
inline bool verify_witness(const RootedMultigraph& host, const RootedMultigraph& pattern, const ImmersionWitness& w) {
  const int k = pattern.order(), n = host.order();
  if (static_cast<int>(w.terminal_map.size()) != k) return false;
  std::uint32_t used = 0;
  for (int x : w.terminal_map) {
    if (x < 0 || x >= n || ((used >> x) & 1u)) return false;
    used |= 1u << x;
  }
  if (pattern.roots.size() > host.roots.size()) return false;
  bool straight = true;
  for (int i = 0; i < pattern.roots.size(); ++i) straight = straight && w.terminal_map[pattern.roots[i]] == host.roots[i];
  if (!straight) {
    if (pattern.roots.size() != 2 || !Pattern(pattern).has_root_swap()) return false;
    if (w.terminal_map[pattern.roots[0]] != host.roots[1] || w.terminal_map[pattern.roots[1]] != host.roots[0]) {
      return false;
    }
  }
  const auto edges = expanded_edges(pattern.graph);
  if (w.routes.size() != edges.size()) return false;
  std::array<std::array<int, kMaxVertices>, kMaxVertices> load{};
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& r = w.routes[i];
    if (r.empty() || r.front() != w.terminal_map[edges[i].first] || r.back() != w.terminal_map[edges[i].second]) {
      return false;
    }
    std::uint32_t seen = 0;
    for (int x : r) {
      if (x < 0 || x >= n || ((seen >> x) & 1u)) return false;
      seen |= 1u << x;
    }
    for (std::size_t j = 0; j + 1 < r.size(); ++j) {
      ++load[r[j]][r[j + 1]];
      ++load[r[j + 1]][r[j]];
    }
  }
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (load[a][b] > host.graph.mult(a, b)) return false;
  return true;
}

/// For a terminal v whose host degree has the other parity from its pattern
/// vertex, an edge v-u whose deletion keeps the immersion.
inline std::optional<std::pair<int, int>> deletable_edge_at_even_terminal(const RootedMultigraph& host,
                                                                          const RootedMultigraph& pattern, int v) {
  const Pattern p(pattern);
  const auto w = immerses(host, p);
  if (!w) throw contract_violation("host does not immerse the pattern");
  const auto it = std::find(w->terminal_map.begin(), w->terminal_map.end(), v);
  if (it == w->terminal_map.end()) throw contract_violation("vertex is not a terminal");
  const int pv = static_cast<int>(it - w->terminal_map.begin());
  if ((host.graph.degree(v) - pattern.graph.degree(pv)) % 2 == 0) {
    throw contract_violation("terminal degree parity matches the pattern");
  }
  for (int u = 0; u < host.order(); ++u) {
    if (host.graph.mult(u, v) == 0) continue;
    RootedMultigraph g = host;
    g.graph.remove_edges(u, v);
    if (immerses(g, p)) return std::make_pair(v, u);
  }
  return std::nullopt;
}

}  // namespace imm
