#pragma once

// Certificate-producing recognizers and the classification functions for
// D_m, rooted W4, W4 and K4.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "immersion/canonical.hpp"
#include "immersion/catalog.hpp"
#include "immersion/connectivity.hpp"
#include "immersion/graph_io.hpp"
#include "immersion/immersion.hpp"
#include "immersion/multigraph.hpp"
#include "immersion/reduction.hpp"

namespace imm {

// ---------------------------------------------------------------------------
// Segmentations
// ---------------------------------------------------------------------------

/// Nested sets X_1 c ... c X_k, each one vertex larger than the last, all
/// with cut size `width`. A single set (k = 1) is allowed.
struct Segmentation {
  std::vector<VertexSet> chain;
  int width = 0;

  VertexSet head() const { return chain.front(); }
  VertexSet tail(int n) const { return chain.back().complement(n); }
  friend bool operator==(const Segmentation&, const Segmentation&) = default;
};

struct SegmentationQuery {
  int width = 0;
  int head_max = kMaxVertices;
  int tail_max = kMaxVertices;
  VertexSet head_must;
  VertexSet tail_must;
  std::function<bool(VertexSet head, VertexSet tail)> admissible;
};

inline bool verify_segmentation(const Multigraph& g, const Segmentation& s) {
  const int n = g.order();
  if (s.chain.empty() || s.chain.front().empty() || s.chain.back() == g.vertices()) return false;
  for (std::size_t i = 0; i < s.chain.size(); ++i) {
    if (!s.chain[i].is_subset_of(g.vertices()) || cut_size(g, s.chain[i]) != s.width) return false;
    if (i > 0 && (!s.chain[i - 1].is_subset_of(s.chain[i]) || s.chain[i].size() != s.chain[i - 1].size() + 1)) {
      return false;
    }
  }
  return n >= 2;
}

/// First segmentation (heads in increasing bitmask order, extensions in
/// increasing vertex order) satisfying the query.
inline std::optional<Segmentation> find_segmentation(const Multigraph& g, const SegmentationQuery& q,
                                                     const CutTable& table) {
  const int n = g.order();
  if (q.width < 1) throw contract_violation("segmentation width must be positive");
  if (n < 2) return std::nullopt;
  const VertexSet all = g.vertices();
  const std::uint32_t full = all.bits();
  std::vector<std::uint32_t> stamp(std::size_t{1} << n, 0), parent(std::size_t{1} << n, 0);
  std::uint32_t cur_stamp = 0;
  for (std::uint32_t hb = 1; hb < full; ++hb) {
    const VertexSet head(hb);
    if (head.size() > q.head_max || !q.head_must.is_subset_of(head) || !(head & q.tail_must).empty()) continue;
    if (table(head) != q.width) continue;
    ++cur_stamp;
    std::vector<std::uint32_t> stack{hb};
    stamp[hb] = cur_stamp;
    parent[hb] = hb;
    while (!stack.empty()) {
      const VertexSet S(stack.back());
      stack.pop_back();
      const VertexSet tail = all - S;
      if (tail.size() <= q.tail_max && q.tail_must.is_subset_of(tail) && (!q.admissible || q.admissible(head, tail))) {
        Segmentation seg{{}, q.width};
        for (std::uint32_t b = S.bits();; b = parent[b]) {
          seg.chain.push_back(VertexSet(b));
          if (b == hb) break;
        }
        std::reverse(seg.chain.begin(), seg.chain.end());
        return seg;
      }
      if (tail.size() < 2) continue;
      const std::vector<int> ext = (tail - q.tail_must).members();
      for (auto it = ext.rbegin(); it != ext.rend(); ++it) {
        const VertexSet T = S.with(*it);
        if (stamp[T.bits()] == cur_stamp || table(T) != q.width) continue;
        stamp[T.bits()] = cur_stamp;
        parent[T.bits()] = S.bits();
        stack.push_back(T.bits());
      }
    }
  }
  return std::nullopt;
}

inline std::optional<Segmentation> find_segmentation(const Multigraph& g, const SegmentationQuery& q) {
  return find_segmentation(g, q, CutTable(g));
}

/// (a, b)-segmentation of width w, optionally with a prescribed head vertex.
inline std::optional<Segmentation> find_segmentation(const Multigraph& g, int a, int b, int w,
                                                     std::optional<int> required_head_vertex = std::nullopt) {
  SegmentationQuery q;
  q.width = w;
  q.head_max = a;
  q.tail_max = b;
  if (required_head_vertex) q.head_must = VertexSet::single(*required_head_vertex);
  return find_segmentation(g, q);
}

// ---------------------------------------------------------------------------
// Lobes
// ---------------------------------------------------------------------------

/// A component C of G - {x0, x1} together with the roots. `path` lists the
/// vertices x0, c_1, ..., c_k, x1 when the lobe is a path whose pairs all have
/// the same multiplicity `copies`; otherwise `path` is empty and copies = 0.
struct Lobe {
  VertexSet interior;
  std::vector<int> path;
  int copies = 0;
};

struct LobeDecomposition {
  int root_multiplicity = 0;
  std::vector<Lobe> lobes;
};

inline LobeDecomposition lobe_decomposition(const RootedMultigraph& g) {
  if (g.roots.size() != 2) throw contract_violation("lobes need exactly two roots");
  const int x0 = g.roots[0], x1 = g.roots[1];
  const Multigraph& G = g.graph;
  LobeDecomposition d;
  d.root_multiplicity = G.mult(x0, x1);
  const VertexSet inner = G.vertices() - g.roots.as_set();
  const std::vector<int> ids = inner.members();
  const Multigraph h = G.induced(inner);
  for (VertexSet local : h.components()) {
    Lobe lobe;
    for (int i : local) lobe.interior = lobe.interior.with(ids[i]);
    const VertexSet C = lobe.interior;
    const VertexSet span = C | g.roots.as_set();
    auto nb = [&](int v) { return (G.neighbours(v) & span).without(v); };
    bool ok = (G.neighbours(x0) & C).size() == 1 && (G.neighbours(x1) & C).size() == 1;
    for (int c : C) ok = ok && nb(c).size() == 2;
    if (ok) {
      std::vector<int> path{x0};
      VertexSet seen = VertexSet::single(x0);
      int cur = (G.neighbours(x0) & C).first();
      while (ok && cur != x1) {
        path.push_back(cur);
        seen = seen.with(cur);
        const VertexSet next = nb(cur) - seen;
        if (next.size() != 1) ok = false;
        else cur = next.first();
      }
      path.push_back(x1);
      ok = ok && static_cast<int>(path.size()) == C.size() + 2;
      const int k = ok ? G.mult(path[0], path[1]) : 0;
      for (std::size_t i = 0; ok && i + 1 < path.size(); ++i) ok = G.mult(path[i], path[i + 1]) == k;
      if (ok) {
        lobe.path = path;
        lobe.copies = k;
      }
    }
    d.lobes.push_back(lobe);
  }
  return d;
}

/// Every lobe a path of multiplicity n_L >= 2 (exactly 2 once it has four or
/// more vertices) and e(x0, x1) + sum n_L = m + 1.
inline bool is_type_b(const LobeDecomposition& d, int m) {
  int total = d.root_multiplicity;
  for (const Lobe& l : d.lobes) {
    if (l.path.empty() || l.copies < 2) return false;
    if (l.path.size() >= 4 && l.copies != 2) return false;
    total += l.copies;
  }
  return total == m + 1;
}

inline bool verify_lobes(const RootedMultigraph& g, const LobeDecomposition& d) {
  const LobeDecomposition fresh = lobe_decomposition(g);
  if (fresh.root_multiplicity != d.root_multiplicity || fresh.lobes.size() != d.lobes.size()) return false;
  VertexSet covered;
  for (std::size_t i = 0; i < d.lobes.size(); ++i) {
    if (fresh.lobes[i].interior != d.lobes[i].interior || fresh.lobes[i].path != d.lobes[i].path ||
        fresh.lobes[i].copies != d.lobes[i].copies || !(covered & d.lobes[i].interior).empty()) {
      return false;
    }
    covered = covered | d.lobes[i].interior;
  }
  return covered == g.graph.vertices() - g.roots.as_set();
}

// ---------------------------------------------------------------------------
// Identifications giving a doubled cycle
// ---------------------------------------------------------------------------

/// Candidate sets W with 1 <= |W| <= 2 avoiding `excluded`: singletons first,
/// then pairs, each group in increasing order.
inline std::vector<VertexSet> small_sets(int n, VertexSet excluded = {}) {
  std::vector<VertexSet> out;
  for (int a = 0; a < n; ++a)
    if (!excluded.contains(a)) out.push_back(VertexSet::single(a));
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b)
      if (!excluded.contains(a) && !excluded.contains(b)) out.push_back(VertexSet{a, b});
  return out;
}

/// Some W, |W| <= 2, whose identification leaves a doubled cycle.
inline std::optional<VertexSet> find_case5(const Multigraph& g) {
  for (VertexSet W : small_sets(g.order()))
    if (is_doubled_cycle(contract(g, W))) return W;
  return std::nullopt;
}

enum class Type2Variant { A, B, C };

inline const char* variant_name(Type2Variant v) {
  switch (v) {
    case Type2Variant::A: return "A";
    case Type2Variant::B: return "B";
    case Type2Variant::C: return "C";
  }
  return "?";
}

/// W is identified to w; `middle` is the common neighbour v of variant B, in
/// the labelling of the original graph.
struct Type2Certificate {
  Type2Variant variant = Type2Variant::A;
  VertexSet W;
  int middle = -1;
  int cycle_order = 0;
};

namespace detail {

inline std::optional<Type2Certificate> type2_for(const RootedMultigraph& g, VertexSet W) {
  const int u0 = g.roots[0];
  const Contraction c = contract_with_map(g.graph, W);
  const Multigraph& H = c.graph;
  const int u = c.image[u0], w = c.merged;
  if (H.mult(u, w) >= 1) {
    Multigraph h = H;
    h.remove_edges(u, w);
    if (is_doubled_cycle(h)) {
      const Type2Variant var = h.mult(u, w) == 2 ? Type2Variant::C : Type2Variant::A;
      if (var == Type2Variant::C || h.mult(u, w) == 0) return Type2Certificate{var, W, -1, h.order()};
    }
  }
  for (int v = 0; v < g.order(); ++v) {
    if (W.contains(v) || v == u0) continue;
    const int iv = c.image[v];
    if (H.mult(u, iv) == 0 || H.mult(iv, w) == 0) continue;
    Multigraph h = H;
    h.remove_edges(u, iv);
    h.remove_edges(iv, w);
    if (is_doubled_cycle(h) && h.mult(u, iv) == 2 && h.mult(iv, w) == 2) {
      return Type2Certificate{Type2Variant::B, W, v, h.order()};
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<Type2Certificate> find_type2(const RootedMultigraph& g) {
  if (g.roots.size() != 1) throw contract_violation("type 2 needs exactly one root");
  for (VertexSet W : small_sets(g.order(), g.roots.as_set()))
    if (auto c = detail::type2_for(g, W)) return c;
  return std::nullopt;
}

inline bool verify_type2(const RootedMultigraph& g, const Type2Certificate& c) {
  if (g.roots.size() != 1 || c.W.empty() || c.W.size() > 2 || c.W.contains(g.roots[0])) return false;
  const auto again = detail::type2_for(g, c.W);
  return again && again->variant == c.variant && again->middle == c.middle && again->cycle_order == c.cycle_order;
}

// ---------------------------------------------------------------------------
// Hypotheses
// ---------------------------------------------------------------------------

struct HypothesisFailure {
  std::string condition;
  std::optional<CutCertificate> cut;
};

class hypothesis_violation : public std::runtime_error {
 public:
  explicit hypothesis_violation(HypothesisFailure f)
      : std::runtime_error("hypothesis violated: " + f.condition), failure_(std::move(f)) {}
  const std::string& condition() const { return failure_.condition; }
  const std::optional<CutCertificate>& certificate() const { return failure_.cut; }
  const HypothesisFailure& failure() const { return failure_; }

 private:
  HypothesisFailure failure_;
};

namespace detail {

inline std::optional<HypothesisFailure> check_edge_connectivity(const Multigraph& g, int k, int internal_k) {
  if (!g.is_connected()) {
    return HypothesisFailure{"connected", CutCertificate{g.components().front(), 0}};
  }
  if (auto c = find_cut_below(g, k, false)) return HypothesisFailure{std::to_string(k) + "-edge-connected", c};
  if (internal_k > 0) {
    if (auto c = find_cut_below(g, internal_k, true)) {
      return HypothesisFailure{"internally " + std::to_string(internal_k) + "-edge-connected", c};
    }
  }
  return std::nullopt;
}

}  // namespace detail

inline std::optional<HypothesisFailure> dm_hypotheses(const RootedMultigraph& g, int m) {
  if (g.roots.size() != 2) return HypothesisFailure{"exactly two roots", std::nullopt};
  if (m < 2) return HypothesisFailure{"m >= 2", std::nullopt};
  if (g.order() < 4) return HypothesisFailure{"n >= 4", std::nullopt};
  const LambdaProfile p = lambda_profile(g);
  if (p.lambda_n && p.lambda_n->size < 3) return HypothesisFailure{"lambda_n >= 3", p.lambda_n->cut};
  if (p.lambda_n_internal && p.lambda_n_internal->size < 4) {
    return HypothesisFailure{"internal lambda_n >= 4", p.lambda_n_internal->cut};
  }
  if (p.lambda_s.size < m) return HypothesisFailure{"lambda_s >= m", p.lambda_s.cut};
  return std::nullopt;
}

inline std::optional<HypothesisFailure> rooted_w4_hypotheses(const RootedMultigraph& g) {
  if (g.roots.size() != 1) return HypothesisFailure{"exactly one root", std::nullopt};
  if (g.order() < 5) return HypothesisFailure{"n >= 5", std::nullopt};
  if (auto f = detail::check_edge_connectivity(g.graph, 3, 4)) return f;
  const int r = g.roots[0];
  if (g.graph.degree(r) < 4) {
    return HypothesisFailure{"root degree >= 4", CutCertificate{VertexSet::single(r), g.graph.degree(r)}};
  }
  return std::nullopt;
}

inline std::optional<HypothesisFailure> w4_hypotheses(const Multigraph& g) {
  if (g.order() < 5) return HypothesisFailure{"n >= 5", std::nullopt};
  return detail::check_edge_connectivity(g, 3, 4);
}

enum class K4Variant { TwoRoot, OneRoot, NoRoot };

inline const char* variant_name(K4Variant v) {
  switch (v) {
    case K4Variant::TwoRoot: return "two-root";
    case K4Variant::OneRoot: return "one-root";
    case K4Variant::NoRoot: return "no-root";
  }
  return "?";
}

inline int root_count(K4Variant v) { return v == K4Variant::TwoRoot ? 2 : v == K4Variant::OneRoot ? 1 : 0; }

inline std::optional<HypothesisFailure> k4_hypotheses(const RootedMultigraph& g, K4Variant v) {
  if (g.roots.size() != root_count(v)) {
    return HypothesisFailure{"exactly " + std::to_string(root_count(v)) + " roots", std::nullopt};
  }
  if (g.order() < 4) return HypothesisFailure{"n >= 4", std::nullopt};
  return detail::check_edge_connectivity(g.graph, 3, 0);
}

// ---------------------------------------------------------------------------
// Classification results
// ---------------------------------------------------------------------------

struct DmResult {
  enum class Tag { Immerses, TypeA, TypeB } tag = Tag::Immerses;
  std::optional<ImmersionWitness> witness;
  std::optional<Segmentation> segmentation;
  std::optional<LobeDecomposition> lobes;
};

struct RootedW4Result {
  enum class Tag { Immerses, Type1, Type2, Type3, Type4 } tag = Tag::Immerses;
  std::optional<ImmersionWitness> witness;
  std::optional<Segmentation> segmentation;
  std::optional<Type2Certificate> type2;
  std::optional<std::size_t> catalog_id;
  std::vector<int> chain_orders;
};

struct W4Result {
  enum class Tag { Immerses, Cubic, Case5, Sporadic, SausageFamily } tag = Tag::Immerses;
  std::optional<ImmersionWitness> witness;
  std::optional<VertexSet> W;
  std::optional<std::size_t> catalog_id;
  std::vector<int> chain_orders;
};

struct K4Result {
  enum class Tag { Immerses, DoubledCycle, Segmentation } tag = Tag::Immerses;
  std::optional<ImmersionWitness> witness;
  std::optional<imm::Segmentation> segmentation;
};

inline const char* tag_name(DmResult::Tag t) {
  switch (t) {
    case DmResult::Tag::Immerses: return "Immerses";
    case DmResult::Tag::TypeA: return "TypeA";
    case DmResult::Tag::TypeB: return "TypeB";
  }
  return "?";
}

inline const char* tag_name(RootedW4Result::Tag t) {
  switch (t) {
    case RootedW4Result::Tag::Immerses: return "Immerses";
    case RootedW4Result::Tag::Type1: return "Type1";
    case RootedW4Result::Tag::Type2: return "Type2";
    case RootedW4Result::Tag::Type3: return "Type3";
    case RootedW4Result::Tag::Type4: return "Type4";
  }
  return "?";
}

inline const char* tag_name(W4Result::Tag t) {
  switch (t) {
    case W4Result::Tag::Immerses: return "Immerses";
    case W4Result::Tag::Cubic: return "Cubic";
    case W4Result::Tag::Case5: return "Case5";
    case W4Result::Tag::Sporadic: return "Sporadic";
    case W4Result::Tag::SausageFamily: return "SausageFamily";
  }
  return "?";
}

inline const char* tag_name(K4Result::Tag t) {
  switch (t) {
    case K4Result::Tag::Immerses: return "Immerses";
    case K4Result::Tag::DoubledCycle: return "DoubledCycle";
    case K4Result::Tag::Segmentation: return "Segmentation";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Classifiers
// ---------------------------------------------------------------------------

inline std::optional<Segmentation> find_type_a(const RootedMultigraph& g, int m, const CutTable& t) {
  SegmentationQuery q;
  q.width = m;
  q.head_max = q.tail_max = 2;
  q.head_must = VertexSet::single(g.roots[0]);
  q.tail_must = VertexSet::single(g.roots[1]);
  return find_segmentation(g.graph, q, t);
}

/// The certificate side of classify_dm: nullopt when neither type applies.
inline std::optional<DmResult> recognize_dm(const RootedMultigraph& g, int m) {
  if (auto f = dm_hypotheses(g, m)) throw hypothesis_violation(*f);
  DmResult r;
  if (auto s = find_type_a(g, m, CutTable(g.graph))) {
    r.tag = DmResult::Tag::TypeA;
    r.segmentation = s;
    return r;
  }
  LobeDecomposition lobes = lobe_decomposition(g);
  if (is_type_b(lobes, m)) {
    r.tag = DmResult::Tag::TypeB;
    r.lobes = std::move(lobes);
    return r;
  }
  return std::nullopt;
}

inline DmResult classify_dm(const RootedMultigraph& g, int m) {
  if (auto c = recognize_dm(g, m)) return *c;
  DmResult r;
  if (auto w = immerses(g, Pattern(PatternId::dm(m)))) {
    r.witness = std::move(w);
    return r;
  }
  throw theorem_violation("no D_" + std::to_string(m) + " immersion and neither type A nor type B");
}

inline std::optional<Segmentation> find_type1(const RootedMultigraph& g, const CutTable& t) {
  SegmentationQuery q;
  q.width = 4;
  q.head_max = 2;
  q.tail_max = 3;
  q.head_must = VertexSet::single(g.roots[0]);
  return find_segmentation(g.graph, q, t);
}

inline std::vector<int> chain_orders(const std::vector<SausageChain>& chains) {
  std::vector<int> out;
  for (const SausageChain& c : chains) out.push_back(c.order());
  return out;
}

inline std::optional<RootedW4Result> recognize_rooted_w4(const RootedMultigraph& g,
                                                         const ObstructionCatalog* catalog = nullptr) {
  if (auto f = rooted_w4_hypotheses(g)) throw hypothesis_violation(*f);
  RootedW4Result r;
  if (auto s = find_type1(g, CutTable(g.graph))) {
    r.tag = RootedW4Result::Tag::Type1;
    r.segmentation = s;
    return r;
  }
  if (auto c = find_type2(g)) {
    r.tag = RootedW4Result::Tag::Type2;
    r.type2 = c;
    return r;
  }
  if (catalog) {
    const RootedMultigraph red = sausage_reduce(g);
    if (auto id = catalog->find(canonical_form(red, kMaxVertices))) {
      const CatalogTag t = catalog->entries()[*id].tag;
      if (t == CatalogTag::RootedType3 || t == CatalogTag::RootedType4) {
        r.tag = t == CatalogTag::RootedType3 ? RootedW4Result::Tag::Type3 : RootedW4Result::Tag::Type4;
        r.catalog_id = id;
        r.chain_orders = chain_orders(find_sausages(g));
        return r;
      }
    }
  }
  return std::nullopt;
}

inline RootedW4Result classify_rooted_w4(const RootedMultigraph& g, const ObstructionCatalog* catalog = nullptr) {
  if (auto c = recognize_rooted_w4(g, catalog)) return *c;
  RootedW4Result r;
  if (auto w = immerses(g, Pattern(PatternId::wheel(4, 1)))) {
    r.witness = std::move(w);
    return r;
  }
  throw theorem_violation("no rooted W4 immersion and none of types 1 to 4");
}

/// Whether a w4-sausage entry's chain rule admits g.
inline bool chain_rule_holds(const Multigraph& g, const CatalogEntry& e) {
  for (const SausageChain& c : find_sausages(g))
    if (c.order() < e.min_chain) return false;
  return true;
}

inline std::optional<W4Result> recognize_w4(const Multigraph& g, const ObstructionCatalog* catalog = nullptr) {
  if (auto f = w4_hypotheses(g)) throw hypothesis_violation(*f);
  W4Result r;
  if (is_cubic(g)) {
    r.tag = W4Result::Tag::Cubic;
    return r;
  }
  if (auto W = find_case5(g)) {
    r.tag = W4Result::Tag::Case5;
    r.W = W;
    return r;
  }
  if (catalog) {
    const Multigraph red = sausage_reduce(g);
    if (auto id = catalog->find(canonical_form(red, kMaxVertices))) {
      const CatalogEntry& e = catalog->entries()[*id];
      const auto chains = find_sausages(g);
      if (e.tag == CatalogTag::W4Sporadic && red.order() == g.order()) {
        r.tag = W4Result::Tag::Sporadic;
        r.catalog_id = id;
        return r;
      }
      if (e.tag == CatalogTag::W4Sausage && chain_rule_holds(g, e)) {
        r.tag = W4Result::Tag::SausageFamily;
        r.catalog_id = id;
        r.chain_orders = chain_orders(chains);
        return r;
      }
    }
  }
  return std::nullopt;
}

inline W4Result classify_w4(const Multigraph& g, const ObstructionCatalog* catalog = nullptr) {
  if (auto c = recognize_w4(g, catalog)) return *c;
  W4Result r;
  if (auto w = immerses(RootedMultigraph(g), Pattern(PatternId::wheel(4)))) {
    r.witness = std::move(w);
    return r;
  }
  throw theorem_violation("no W4 immersion and none of the five cases");
}

/// Width-3 segmentation certificate for the K4 corollaries. With two roots
/// any head and tail sizes are allowed but a head or tail with three or more
/// vertices must avoid the roots; otherwise a (2,2)-segmentation is needed.
inline std::optional<Segmentation> find_k4_segmentation(const RootedMultigraph& g, K4Variant v, const CutTable& t) {
  SegmentationQuery q;
  q.width = 3;
  if (v == K4Variant::TwoRoot) {
    const VertexSet R = g.roots.as_set();
    q.admissible = [R](VertexSet head, VertexSet tail) {
      return (head.size() < 3 || (head & R).empty()) && (tail.size() < 3 || (tail & R).empty());
    };
  } else {
    q.head_max = q.tail_max = 2;
  }
  return find_segmentation(g.graph, q, t);
}

inline PatternId k4_pattern(K4Variant v) {
  return v == K4Variant::TwoRoot ? PatternId::dm(3) : PatternId::k4(root_count(v));
}

inline std::optional<K4Result> recognize_k4(const RootedMultigraph& g, K4Variant v) {
  if (auto f = k4_hypotheses(g, v)) throw hypothesis_violation(*f);
  K4Result r;
  if (is_doubled_cycle(g.graph)) {
    r.tag = K4Result::Tag::DoubledCycle;
    return r;
  }
  if (auto s = find_k4_segmentation(g, v, CutTable(g.graph))) {
    r.tag = K4Result::Tag::Segmentation;
    r.segmentation = s;
    return r;
  }
  return std::nullopt;
}

inline K4Result classify_k4(const RootedMultigraph& g, K4Variant v) {
  if (auto c = recognize_k4(g, v)) return *c;
  K4Result r;
  if (auto w = immerses(g, Pattern(k4_pattern(v)))) {
    r.witness = std::move(w);
    return r;
  }
  throw theorem_violation(std::string("no K4 immersion and no certificate (") + variant_name(v) + ")");
}

// ---------------------------------------------------------------------------
// JSON
// ---------------------------------------------------------------------------

inline json to_json(const Segmentation& s) {
  json chain = json::array();
  for (VertexSet X : s.chain) chain.push_back(X.members());
  return {{"width", s.width}, {"chain", chain}};
}

inline json to_json(const LobeDecomposition& d) {
  json lobes = json::array();
  for (const Lobe& l : d.lobes) lobes.push_back({{"interior", l.interior.members()}, {"path", l.path}, {"copies", l.copies}});
  return {{"root_multiplicity", d.root_multiplicity}, {"lobes", lobes}};
}

inline json to_json(const Type2Certificate& c) {
  json j = {{"variant", variant_name(c.variant)}, {"W", c.W.members()}, {"cycle_order", c.cycle_order}};
  if (c.middle >= 0) j["middle"] = c.middle;
  return j;
}

inline json to_json(const DmResult& r) {
  json j = {{"tag", tag_name(r.tag)}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.segmentation) j["segmentation"] = to_json(*r.segmentation);
  if (r.lobes) j["lobes"] = to_json(*r.lobes);
  return j;
}

inline json to_json(const RootedW4Result& r) {
  json j = {{"tag", tag_name(r.tag)}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.segmentation) j["segmentation"] = to_json(*r.segmentation);
  if (r.type2) j["type2"] = to_json(*r.type2);
  if (r.catalog_id) {
    j["catalog_id"] = *r.catalog_id;
    j["chain_orders"] = r.chain_orders;
  }
  return j;
}

inline json to_json(const W4Result& r) {
  json j = {{"tag", tag_name(r.tag)}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.W) j["W"] = r.W->members();
  if (r.catalog_id) {
    j["catalog_id"] = *r.catalog_id;
    j["chain_orders"] = r.chain_orders;
  }
  return j;
}

inline json to_json(const K4Result& r) {
  json j = {{"tag", tag_name(r.tag)}};
  if (r.witness) j["witness"] = to_json(*r.witness);
  if (r.segmentation) j["segmentation"] = to_json(*r.segmentation);
  return j;
}

inline json to_json(const HypothesisFailure& f) {
  json j = {{"condition", f.condition}};
  if (f.cut) j["certificate"] = to_json(*f.cut);
  return j;
}

}  // namespace imm
