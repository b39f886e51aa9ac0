#pragma once

// Reduction of an arbitrary graph to 3-edge-connected, internally
// 4-edge-connected pieces, and chains of sausages.

#include <algorithm>
#include <optional>
#include <vector>

#include "immersion/connectivity.hpp"
#include "immersion/multigraph.hpp"

namespace imm {

enum class ReductionRule { CutEdge, TwoCut, InternalThreeCut };

inline const char* rule_name(ReductionRule r) {
  switch (r) {
    case ReductionRule::CutEdge: return "cut-edge";
    case ReductionRule::TwoCut: return "2-cut";
    case ReductionRule::InternalThreeCut: return "internal-3-cut";
  }
  return "?";
}

/// One rule application: `component` indexes the work list at that moment
/// and `cut` is stated in that component's own labelling.
struct ReductionStep {
  ReductionRule rule;
  int component = 0;
  CutCertificate cut;
  friend bool operator==(const ReductionStep&, const ReductionStep&) = default;
};

struct ReductionTrace {
  std::vector<ReductionStep> steps;
  std::vector<Multigraph> components;
};

namespace detail {

inline void push_nontrivial(std::vector<Multigraph>& out, const Multigraph& g) {
  for (VertexSet c : g.components())
    if (c.size() >= 2) out.push_back(g.induced(c));
}

// Contract X and suppress the merged vertex when it has degree two.
inline Multigraph contract_side(const Multigraph& k, VertexSet X, bool suppress_merged) {
  const Contraction c = contract_with_map(k, X);
  if (suppress_merged && c.graph.degree(c.merged) == 2) return suppress(c.graph, c.merged);
  return c.graph;
}

inline std::vector<Multigraph> apply_rule(const Multigraph& k, const ReductionStep& s) {
  std::vector<Multigraph> out;
  const VertexSet X = s.cut.side, Y = X.complement(k.order());
  switch (s.rule) {
    case ReductionRule::CutEdge: {
      Multigraph h = k;
      for (int u : X)
        for (int v : Y)
          if (h.mult(u, v) > 0) h.remove_edges(u, v);
      push_nontrivial(out, h);
      break;
    }
    case ReductionRule::TwoCut:
      push_nontrivial(out, contract_side(k, X, true));
      push_nontrivial(out, contract_side(k, Y, true));
      break;
    case ReductionRule::InternalThreeCut:
      push_nontrivial(out, contract_side(k, X, false));
      push_nontrivial(out, contract_side(k, Y, false));
      break;
  }
  return out;
}

inline std::optional<ReductionStep> first_rule(const Multigraph& k, int index) {
  const int n = k.order();
  if (n < 2) return std::nullopt;
  const CutTable t(k);
  std::optional<CutCertificate> two, three;
  std::optional<CutCertificate> one;
  t.for_each_cut([&](VertexSet X, int d) {
    if (d == 1 && !one) one = CutCertificate{X, d};
    if (d == 2 && !two) two = CutCertificate{X, d};
    if (d == 3 && !three && X.size() >= 2 && n - X.size() >= 2) three = CutCertificate{X, d};
  });
  if (one) return ReductionStep{ReductionRule::CutEdge, index, *one};
  if (two) return ReductionStep{ReductionRule::TwoCut, index, *two};
  if (three) return ReductionStep{ReductionRule::InternalThreeCut, index, *three};
  return std::nullopt;
}

}  // namespace detail

/// Applies cut-edge deletion, 2-cut splitting and internal 3-cut splitting to
/// a fixpoint, rescanning from the first component after every change.
/// One-vertex pieces are dropped.
inline ReductionTrace full_reduction(const Multigraph& g) {
  ReductionTrace t;
  detail::push_nontrivial(t.components, g);
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i < t.components.size() && !changed; ++i) {
      const auto step = detail::first_rule(t.components[i], static_cast<int>(i));
      if (!step) continue;
      auto parts = detail::apply_rule(t.components[i], *step);
      t.components.erase(t.components.begin() + static_cast<std::ptrdiff_t>(i));
      t.components.insert(t.components.begin() + static_cast<std::ptrdiff_t>(i), parts.begin(), parts.end());
      t.steps.push_back(*step);
      changed = true;
    }
    if (!changed) return t;
  }
}

/// Re-applies recorded steps to g and returns the resulting components.
inline std::vector<Multigraph> replay(const Multigraph& g, const std::vector<ReductionStep>& steps) {
  std::vector<Multigraph> comps;
  detail::push_nontrivial(comps, g);
  for (const auto& s : steps) {
    if (s.component < 0 || s.component >= static_cast<int>(comps.size())) {
      throw contract_violation("reduction step refers to a missing component");
    }
    const Multigraph& k = comps[s.component];
    if (s.cut.side.empty() || !s.cut.side.is_subset_of(k.vertices()) || s.cut.side == k.vertices() ||
        cut_size(k, s.cut.side) != s.cut.size) {
      throw contract_violation("reduction step certificate does not match");
    }
    auto parts = detail::apply_rule(k, s);
    comps.erase(comps.begin() + s.component);
    comps.insert(comps.begin() + s.component, parts.begin(), parts.end());
  }
  return comps;
}

// ---------------------------------------------------------------------------
// Sausages
// ---------------------------------------------------------------------------

inline bool is_doubled_cycle(const Multigraph& g) {
  const int n = g.order();
  if (n < 3) return false;
  for (int v = 0; v < n; ++v) {
    if (g.neighbours(v).size() != 2) return false;
    for (int u : g.neighbours(v))
      if (g.mult(u, v) != 2) return false;
  }
  return g.is_connected();
}

inline bool is_doubled_path(const Multigraph& g) {
  const int n = g.order();
  if (n < 2) return false;
  int ends = 0;
  for (int v = 0; v < n; ++v) {
    const int k = g.neighbours(v).size();
    if (k == 1) ++ends;
    if (k < 1 || k > 2) return false;
    for (int u : g.neighbours(v))
      if (g.mult(u, v) != 2) return false;
  }
  return ends == 2 && g.is_connected();
}

struct SausageChain {
  std::vector<int> path;  // chain vertices in path order, smaller end first
  VertexSet set;
  int order() const { return static_cast<int>(path.size()); }
  friend bool operator==(const SausageChain&, const SausageChain&) = default;
};

/// Whether G[X] is a chain of sausages: |X| >= 2 and G.(V \ X) is a doubled cycle.
inline bool is_sausage_chain(const Multigraph& g, VertexSet X) {
  if (X.size() < 2 || X.size() >= g.order()) return false;
  return is_doubled_cycle(contract(g, X.complement(g.order())));
}

namespace detail {

inline std::vector<int> chain_path(const Multigraph& g, VertexSet X) {
  std::vector<int> ends;
  for (int v : X)
    if ((g.neighbours(v) & X).size() <= 1) ends.push_back(v);
  std::vector<int> path{ends.front()};
  VertexSet seen = VertexSet::single(ends.front());
  while (static_cast<int>(path.size()) < X.size()) {
    const VertexSet next = (g.neighbours(path.back()) & X) - seen;
    path.push_back(next.first());
    seen = seen.with(next.first());
  }
  return path;
}

}  // namespace detail

/// Maximal chains of sausages avoiding `excluded`, sorted by path.
inline std::vector<SausageChain> find_sausages(const Multigraph& g, VertexSet excluded = {}) {
  const int n = g.order();
  std::vector<VertexSet> qualifying;
  const std::uint32_t full = VertexSet::all(n).bits();
  for (std::uint32_t b = 1; b < full; ++b) {
    const VertexSet X(b);
    if (X.size() < 2 || !(X & excluded).empty()) continue;
    if (is_sausage_chain(g, X)) qualifying.push_back(X);
  }
  std::vector<SausageChain> out;
  for (VertexSet X : qualifying) {
    bool maximal = true;
    for (VertexSet Y : qualifying)
      if (Y != X && X.is_subset_of(Y)) {
        maximal = false;
        break;
      }
    if (maximal) out.push_back({detail::chain_path(g, X), X});
  }
  std::sort(out.begin(), out.end(), [](const SausageChain& a, const SausageChain& b) { return a.path < b.path; });
  return out;
}

inline std::vector<SausageChain> find_sausages(const RootedMultigraph& g) {
  return find_sausages(g.graph, g.roots.as_set());
}

/// Identify two adjacent members of a chain of sausages of order >= 3.
inline Multigraph sausage_shorten(const Multigraph& g, int x, int y, VertexSet excluded = {}) {
  if (x == y || x < 0 || y < 0 || x >= g.order() || y >= g.order() || g.mult(x, y) == 0) {
    throw contract_violation("sausage_shorten needs two adjacent vertices");
  }
  for (const SausageChain& c : find_sausages(g, excluded)) {
    if (c.order() < 3 || !c.set.contains(x) || !c.set.contains(y)) continue;
    return contract(g, {x, y});
  }
  throw contract_violation("pair is not inside a chain of sausages of order at least 3");
}

inline RootedMultigraph sausage_shorten(const RootedMultigraph& g, int x, int y) {
  sausage_shorten(g.graph, x, y, g.roots.as_set());
  return contract(g, VertexSet{x, y});
}

/// Shorten the first chain of order >= 3 at its first pair until none is left.
inline RootedMultigraph sausage_reduce(const RootedMultigraph& g) {
  RootedMultigraph cur = g;
  for (;;) {
    bool done = true;
    for (const SausageChain& c : find_sausages(cur)) {
      if (c.order() < 3) continue;
      cur = contract(cur, VertexSet{c.path[0], c.path[1]});
      done = false;
      break;
    }
    if (done) return cur;
  }
}

inline Multigraph sausage_reduce(const Multigraph& g) { return sausage_reduce(RootedMultigraph(g)).graph; }

/// Inverse of a shortening: a new vertex (id n) is inserted between the first
/// two members of the chain.
inline RootedMultigraph sausage_lengthen(const RootedMultigraph& g, const SausageChain& c) {
  if (c.order() < 2) throw contract_violation("sausage_lengthen needs a chain of order at least 2");
  const int a = c.path[0], b = c.path[1];
  if (g.graph.mult(a, b) != 2) throw contract_violation("chain members must be doubly adjacent");
  Multigraph h(g.order() + 1);
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v) h.set_mult(u, v, g.graph.mult(u, v));
  const int z = g.order();
  h.set_mult(a, b, 0);
  h.set_mult(a, z, 2);
  h.set_mult(z, b, 2);
  return RootedMultigraph(h, g.roots);
}

}  // namespace imm
