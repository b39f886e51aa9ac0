#pragma once

// Enumeration of simple supports, root placements and multiplicity
// assignments, and the monotone sweep over assignments of one support.

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "immersion/canonical.hpp"
#include "immersion/connectivity.hpp"
#include "immersion/immersion.hpp"
#include "immersion/multigraph.hpp"
#include "immersion/reduction.hpp"

namespace imm {

// ---------------------------------------------------------------------------
// Simple graphs and root placements
// ---------------------------------------------------------------------------

/// Every connected simple graph on n vertices up to isomorphism, by brute
/// force over labelled graphs; sorted by canonical form. Meant for n <= 6.
inline std::vector<Multigraph> generate_connected_simple(int n) {
  if (n > 7) throw too_large("generate_connected_simple is limited to 7 vertices");
  if (n <= 0) return {};
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v < n; ++v)
    for (int u = 0; u < v; ++u) pairs.emplace_back(u, v);
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  std::vector<CanonicalForm> forms;
  const std::uint64_t total = std::uint64_t{1} << pairs.size();
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    if (std::popcount(mask) < n - 1) continue;
    Multigraph g(n);
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if ((mask >> i) & 1u) g.set_mult(pairs[i].first, pairs[i].second, 1);
    if (!g.is_connected()) continue;
    CanonicalForm f = canonical_form(g);
    if (seen.insert(f).second) forms.push_back(std::move(f));
  }
  std::sort(forms.begin(), forms.end());
  std::vector<Multigraph> out;
  for (const auto& f : forms) out.push_back(f.graph().graph);
  return out;
}

/// One representative per orbit of ordered root tuples of the given length,
/// the lexicographically first tuple of each orbit, in lexicographic order.
inline std::vector<RootedMultigraph> root_orbits(const Multigraph& g, int roots) {
  const int n = g.order();
  std::vector<RootedMultigraph> out;
  if (roots < 0 || roots > 2) throw contract_violation("0, 1 or 2 roots");
  if (roots > n) return out;
  if (roots == 0) {
    out.emplace_back(g);
    return out;
  }
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  for (int a = 0; a < n; ++a) {
    if (roots == 1) {
      RootedMultigraph r(g, Roots{a});
      if (seen.insert(canonical_form(r, kMaxVertices)).second) out.push_back(r);
      continue;
    }
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      RootedMultigraph r(g, Roots{a, b});
      if (seen.insert(canonical_form(r, kMaxVertices)).second) out.push_back(r);
    }
  }
  return out;
}

inline std::vector<RootedMultigraph> enumerate_rooted(const std::vector<Multigraph>& graphs, int roots = 1) {
  std::vector<RootedMultigraph> out;
  for (const Multigraph& g : graphs) {
    auto r = root_orbits(g, roots);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

// ---------------------------------------------------------------------------
// Hypotheses as cut lower bounds
// ---------------------------------------------------------------------------

/// Lower bound demanded of d(X) for a side X (given in full, with its
/// complement implied); 0 means no demand.
using CutDemand = std::function<int(VertexSet side, VertexSet other, const Roots& roots)>;

namespace demands {

inline CutDemand k_edge_connected(int k) {
  return [k](VertexSet, VertexSet, const Roots&) { return k; };
}

/// 3-edge-connected and internally 4-edge-connected.
inline CutDemand w4() {
  return [](VertexSet X, VertexSet Y, const Roots&) { return X.size() >= 2 && Y.size() >= 2 ? 4 : 3; };
}

/// w4() plus d(root) >= 4.
inline CutDemand rooted_w4() {
  return [](VertexSet X, VertexSet Y, const Roots& r) {
    if (X.size() >= 2 && Y.size() >= 2) return 4;
    const VertexSet single = X.size() == 1 ? X : Y;
    return single.contains(r[0]) ? 4 : 3;
  };
}

/// rooted_w4() plus d(Y) >= 5 for every internal cut whose root-free side Y
/// has |Y| >= 3.
inline CutDemand rooted_w4_strict() {
  return [](VertexSet X, VertexSet Y, const Roots& r) {
    const int base = rooted_w4()(X, Y, r);
    const bool x_has_root = X.contains(r[0]);
    const VertexSet free = x_has_root ? Y : X, rooted = x_has_root ? X : Y;
    return free.size() >= 3 && rooted.size() >= 2 ? std::max(base, 5) : base;
  };
}

/// lambda_n >= 3, internal lambda_n >= 4, lambda_s >= m.
inline CutDemand dm(int m) {
  return [m](VertexSet X, VertexSet Y, const Roots& r) {
    if (X.contains(r[0]) != X.contains(r[1])) return m;
    return X.size() >= 2 && Y.size() >= 2 ? 4 : 3;
  };
}

}  // namespace demands

// ---------------------------------------------------------------------------
// Supports and points
// ---------------------------------------------------------------------------

/// One multiplicity per support edge, each in 1..cap.
using Point = std::string;

struct CutConstraint {
  std::uint32_t edges = 0;  // bit i set when support edge i crosses the cut
  int bound = 0;
  VertexSet side;
};

class Support {
 public:
  Support(RootedMultigraph simple, int cap, const CutDemand& demand) : simple_(std::move(simple)), cap_(cap) {
    const Multigraph& g = simple_.graph;
    for (int u = 0; u < g.order(); ++u)
      for (int v = u + 1; v < g.order(); ++v)
        if (g.mult(u, v) > 0) edges_.emplace_back(u, v);
    if (edges_.size() > 32) throw too_large("support has more than 32 edges");
    const int n = g.order();
    if (n < 2) return;
    const std::uint32_t half = 1u << (n - 1);
    for (std::uint32_t m = 1; m < half; ++m) {
      const VertexSet X(m), Y = VertexSet(m).complement(n);
      CutConstraint c{0, demand(X, Y, simple_.roots), X};
      for (std::size_t i = 0; i < edges_.size(); ++i)
        if (X.contains(edges_[i].first) != X.contains(edges_[i].second)) c.edges |= 1u << i;
      if (c.bound > std::popcount(c.edges)) constraints_.push_back(c);
    }
    std::stable_sort(constraints_.begin(), constraints_.end(), [](const CutConstraint& a, const CutConstraint& b) {
      return std::popcount(a.edges) < std::popcount(b.edges);
    });
    for (const std::vector<int>& perm : automorphisms(simple_, kMaxKeyAutomorphisms + 1)) {
      std::vector<int> image(edges_.size());
      for (std::size_t i = 0; i < edges_.size(); ++i) {
        auto [a, b] = edges_[i];
        const std::pair<int, int> e = std::minmax(perm[a], perm[b]);
        image[i] = static_cast<int>(std::find(edges_.begin(), edges_.end(), e) - edges_.begin());
      }
      edge_perms_.push_back(std::move(image));
    }
  }

  /// Automorphism groups larger than this fall back to canonical forms.
  static constexpr std::size_t kMaxKeyAutomorphisms = 2000;

  /// Root-fixing automorphisms of a simple rooted graph, by backtracking;
  /// stops after `limit` of them.
  static std::vector<std::vector<int>> automorphisms(const RootedMultigraph& r, std::size_t limit) {
    const Multigraph& g = r.graph;
    const int n = g.order();
    std::vector<std::vector<int>> out;
    std::vector<int> perm(n, -1);
    std::uint32_t used = 0;
    std::function<void(int)> rec = [&](int v) {
      if (out.size() >= limit) return;
      if (v == n) {
        out.push_back(perm);
        return;
      }
      for (int w = 0; w < n; ++w) {
        if ((used >> w) & 1u) continue;
        if (r.roots.contains(v) != r.roots.contains(w)) continue;
        if (r.roots.contains(v) && w != v) continue;
        if (g.degree(v) != g.degree(w)) continue;
        bool ok = true;
        for (int u = 0; u < v && ok; ++u) ok = (g.mult(u, v) > 0) == (g.mult(perm[u], w) > 0);
        if (!ok) continue;
        perm[v] = w;
        used |= 1u << w;
        rec(v + 1);
        used &= ~(1u << w);
      }
      perm[v] = -1;
    };
    rec(0);
    return out;
  }

  /// Isomorphism-invariant key of a point: two points of this support get
  /// the same key iff their multigraphs are isomorphic (roots respected).
  std::string key(const Point& p) const {
    if (edge_perms_.size() > kMaxKeyAutomorphisms) return canonical_form(realize(p), kMaxVertices).bytes;
    std::string best = p, cur(p.size(), 0);
    for (const std::vector<int>& perm : edge_perms_) {
      for (std::size_t i = 0; i < p.size(); ++i) cur[perm[i]] = p[i];
      if (cur < best) best = cur;
    }
    return best;
  }

  const RootedMultigraph& simple() const { return simple_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  const std::vector<CutConstraint>& constraints() const { return constraints_; }
  int cap() const { return cap_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  Point ones() const { return Point(edges_.size(), char(1)); }

  RootedMultigraph realize(const Point& p) const {
    Multigraph g(simple_.order());
    for (std::size_t i = 0; i < edges_.size(); ++i) g.set_mult(edges_[i].first, edges_[i].second, p[i]);
    return RootedMultigraph(g, simple_.roots);
  }

  /// The point of a multigraph with exactly this support.
  Point point_of(const Multigraph& g) const {
    Point p(edges_.size(), 0);
    for (std::size_t i = 0; i < edges_.size(); ++i) p[i] = static_cast<char>(g.mult(edges_[i].first, edges_[i].second));
    return p;
  }

  /// Index of a violated constraint crossing the fewest edges, if any.
  std::optional<std::size_t> violated(const Point& p) const {
    for (std::size_t k = 0; k < constraints_.size(); ++k) {
      int sum = 0;
      for (std::uint32_t b = constraints_[k].edges; b; b &= b - 1) sum += p[std::countr_zero(b)];
      if (sum < constraints_[k].bound) return k;
    }
    return std::nullopt;
  }

  bool feasible(const Point& p) const { return !violated(p); }

 private:
  RootedMultigraph simple_;
  int cap_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<CutConstraint> constraints_;
  std::vector<std::vector<int>> edge_perms_;
};

/// All minimal feasible points with entries at most cap: from the all-one
/// point, every infeasible point branches on the edges of a violated cut.
inline std::vector<Point> minimal_feasible_points(const Support& s) {
  std::vector<Point> feasible;
  std::unordered_set<Point> seen;
  std::vector<Point> stack{s.ones()};
  seen.insert(stack.back());
  while (!stack.empty()) {
    Point p = std::move(stack.back());
    stack.pop_back();
    const auto k = s.violated(p);
    if (!k) {
      feasible.push_back(std::move(p));
      continue;
    }
    for (std::uint32_t b = s.constraints()[*k].edges; b; b &= b - 1) {
      const int e = std::countr_zero(b);
      if (p[e] >= s.cap()) continue;
      Point q = p;
      ++q[e];
      if (seen.insert(q).second) stack.push_back(std::move(q));
    }
  }
  std::vector<Point> out;
  for (const Point& p : feasible) {
    bool minimal = true;
    for (int e = 0; e < s.edge_count() && minimal; ++e) {
      if (p[e] <= 1) continue;
      Point q = p;
      --q[e];
      minimal = !s.feasible(q);
    }
    if (minimal) out.push_back(p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

/// Feasible points of one support split by the immersion oracle, up to
/// isomorphism: `negatives` is every non-immersing feasible point and
/// `frontier` every immersing feasible point whose feasible decrements all
/// fail to immerse (so minimal feasible immersing points are included).
/// Every immersing feasible point lies above a frontier point.
struct SweepResult {
  std::vector<Point> minimal;
  std::vector<Point> negatives;
  std::vector<Point> frontier;
  std::uint64_t oracle_calls = 0;
};

/// Points are decided level by level (level = sum of multiplicities). A point
/// with a feasible decrement outside the negatives immerses by monotonicity,
/// so the oracle only runs on negatives and frontier points.
inline SweepResult sweep_from(const Support& s, const Pattern& pattern, std::vector<Point> starts,
                              bool keep_frontier = true) {
  SweepResult r;
  r.minimal = std::move(starts);
  auto level = [](const Point& p) {
    int l = 0;
    for (char c : p) l += c;
    return l;
  };
  std::map<int, std::vector<Point>> pending;
  for (const Point& p : r.minimal) pending[level(p)].push_back(p);
  std::unordered_set<std::string> negative;
  while (!pending.empty()) {
    const std::vector<Point> batch = std::move(pending.begin()->second);
    pending.erase(pending.begin());
    std::unordered_set<std::string> decided;
    std::vector<Point> next;
    for (const Point& p : batch) {
      if (!decided.insert(s.key(p)).second) continue;
      bool below_negative = true;
      for (int e = 0; e < s.edge_count() && below_negative; ++e) {
        if (p[e] <= 1) continue;
        Point q = p;
        --q[e];
        below_negative = !s.feasible(q) || negative.count(s.key(q)) > 0;
      }
      if (!below_negative) continue;
      ++r.oracle_calls;
      if (immerses(s.realize(p), pattern)) {
        if (keep_frontier) r.frontier.push_back(p);
        continue;
      }
      negative.insert(s.key(p));
      r.negatives.push_back(p);
      for (int e = 0; e < s.edge_count(); ++e) {
        if (p[e] >= s.cap()) continue;
        Point q = p;
        ++q[e];
        next.push_back(std::move(q));
      }
    }
    if (!next.empty()) {
      auto& slot = pending[level(next.front())];
      slot.insert(slot.end(), std::make_move_iterator(next.begin()), std::make_move_iterator(next.end()));
    }
  }
  return r;
}

inline SweepResult sweep(const Support& s, const Pattern& pattern, bool keep_frontier = true) {
  return sweep_from(s, pattern, minimal_feasible_points(s), keep_frontier);
}

// ---------------------------------------------------------------------------
// Explicit families
// ---------------------------------------------------------------------------

namespace detail {

inline Multigraph doubled_cycle_graph(int len, int extra_vertices = 0) {
  Multigraph g(len + extra_vertices);
  for (int i = 0; i < len; ++i) g.set_mult(i, (i + 1) % len, 2);
  return g;
}

/// Every way of splitting vertex w of g into w and a new vertex (id n):
/// each edge at w moves or stays, and k parallel edges join the halves.
inline std::vector<Multigraph> split_vertex(const Multigraph& g, int w, int cap) {
  const int n = g.order();
  std::vector<int> nb = g.neighbours(w).members();
  std::vector<Multigraph> out;
  std::vector<int> moved(nb.size(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == nb.size()) {
      Multigraph h(n + 1);
      for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
          if (u != w && v != w) h.set_mult(u, v, g.mult(u, v));
      for (std::size_t j = 0; j < nb.size(); ++j) {
        const int total = g.mult(w, nb[j]);
        if (total - moved[j] > 0) h.set_mult(w, nb[j], total - moved[j]);
        if (moved[j] > 0) h.set_mult(n, nb[j], moved[j]);
      }
      if (h.degree(n) == 0 || h.degree(w) == 0) {
        // Both halves need an edge outside the pair, or W is not a real split.
      }
      for (int k = 0; k <= cap; ++k) {
        Multigraph x = h;
        if (k > 0) x.set_mult(w, n, k);
        if (x.is_connected()) out.push_back(x);
      }
      return;
    }
    for (int m = 0; m <= g.mult(w, nb[i]); ++m) {
      moved[i] = m;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

inline void add_unique(std::vector<RootedMultigraph>& out, std::unordered_set<CanonicalForm, CanonicalFormHash>& seen,
                       const RootedMultigraph& g) {
  if (seen.insert(canonical_form(g, kMaxVertices)).second) out.push_back(g);
}

}  // namespace detail

/// Graphs G on n_min..n_max vertices with multiplicities <= cap in which
/// identifying some W, |W| <= 2, gives a doubled cycle.
inline std::vector<RootedMultigraph> case5_family(int n_min, int n_max, int cap) {
  std::vector<RootedMultigraph> out;
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  for (int len = 3; len <= n_max; ++len) {
    const Multigraph c = detail::doubled_cycle_graph(len);
    if (len >= n_min) detail::add_unique(out, seen, RootedMultigraph(c));
    if (len + 1 < n_min || len + 1 > n_max) continue;
    for (const Multigraph& h : detail::split_vertex(c, 0, cap))
      if (h.max_mult() <= cap) detail::add_unique(out, seen, RootedMultigraph(h));
  }
  return out;
}

/// Rooted graphs of type 2: a doubled cycle C through the root u plus uw
/// (w not the root; adjacent or not) or uv + vw, with w then split into at
/// most two vertices.
inline std::vector<RootedMultigraph> type2_family(int n_min, int n_max, int cap) {
  std::vector<RootedMultigraph> out;
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  for (int len = 3; len <= n_max; ++len) {
    std::vector<std::pair<Multigraph, int>> starts;  // G* and w
    for (int w = 1; w < len; ++w) {
      Multigraph a = detail::doubled_cycle_graph(len);
      a.add_edges(0, w);
      starts.emplace_back(a, w);
      for (int v = 1; v < len; ++v) {
        if (v == w) continue;
        Multigraph b = detail::doubled_cycle_graph(len);
        if (b.mult(0, v) == 0 || b.mult(v, w) == 0) continue;
        b.add_edges(0, v);
        b.add_edges(v, w);
        starts.emplace_back(b, w);
      }
    }
    for (const auto& [gs, w] : starts) {
      if (gs.max_mult() > cap) continue;
      if (len >= n_min) detail::add_unique(out, seen, RootedMultigraph(gs, Roots{0}));
      if (len + 1 < n_min || len + 1 > n_max) continue;
      for (const Multigraph& h : detail::split_vertex(gs, w, cap))
        if (h.max_mult() <= cap) detail::add_unique(out, seen, RootedMultigraph(h, Roots{0}));
    }
  }
  return out;
}

/// Two-rooted graphs of type B_m on n_min..n_max vertices: lobes that are
/// x0-x1 paths with n_L >= 2 parallel copies (exactly 2 once the lobe has
/// four or more vertices) and e(x0, x1) + sum n_L = m + 1.
inline std::vector<RootedMultigraph> type_b_family(int m, int n_min, int n_max) {
  std::vector<RootedMultigraph> out;
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  // lobes as (interior size, copies), non-increasing to avoid repeats
  std::vector<std::pair<int, int>> lobes;
  std::function<void(int, int, std::pair<int, int>)> rec = [&](int used_vertices, int used_copies,
                                                                 std::pair<int, int> last) {
    const int e01 = m + 1 - used_copies;
    const int n = 2 + used_vertices;
    if (e01 >= 0 && n >= n_min && n <= n_max && !lobes.empty()) {
      Multigraph g(n);
      if (e01 > 0) g.set_mult(0, 1, e01);
      int next = 2;
      for (auto [size, copies] : lobes) {
        int prev = 0;
        for (int i = 0; i < size; ++i) {
          g.set_mult(prev, next, copies);
          prev = next++;
        }
        g.set_mult(prev, 1, copies);
      }
      detail::add_unique(out, seen, RootedMultigraph(g, Roots{0, 1}));
    }
    for (int size = 1; 2 + used_vertices + size <= n_max; ++size)
      for (int copies = 2; used_copies + copies <= m + 1; ++copies) {
        if (size >= 2 && copies != 2) continue;
        const std::pair<int, int> cur{size, copies};
        if (!lobes.empty() && cur > last) continue;
        lobes.push_back(cur);
        rec(used_vertices + size, used_copies + copies, cur);
        lobes.pop_back();
      }
  };
  rec(0, 0, {kMaxVertices, kMaxVertices});
  return out;
}

/// Doubled cycles on n_min..n_max vertices with every placement of `roots`
/// roots up to symmetry.
inline std::vector<RootedMultigraph> doubled_cycle_family(int n_min, int n_max, int roots) {
  std::vector<RootedMultigraph> out;
  for (int len = std::max(3, n_min); len <= n_max; ++len) {
    auto r = root_orbits(detail::doubled_cycle_graph(len), roots);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

/// All graphs obtained from base by lengthening its chains of sausages, with
/// at most n_max vertices, whose sausage reduction is base again.
inline std::vector<RootedMultigraph> sausage_expansions(const RootedMultigraph& base, int n_max) {
  std::vector<RootedMultigraph> out;
  std::unordered_set<CanonicalForm, CanonicalFormHash> seen;
  const CanonicalForm target = canonical_form(base, kMaxVertices);
  std::deque<RootedMultigraph> queue{base};
  seen.insert(target);
  out.push_back(base);
  while (!queue.empty()) {
    const RootedMultigraph g = queue.front();
    queue.pop_front();
    if (g.order() >= n_max) continue;
    for (const SausageChain& c : find_sausages(g)) {
      RootedMultigraph h = sausage_lengthen(g, c);
      if (!seen.insert(canonical_form(h, kMaxVertices)).second) continue;
      if (canonical_form(sausage_reduce(h), kMaxVertices) != target) continue;
      out.push_back(h);
      queue.push_back(std::move(h));
    }
  }
  return out;
}

}  // namespace imm
