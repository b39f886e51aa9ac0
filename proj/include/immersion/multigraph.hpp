#pragma once

// Loopless undirected multigraphs on a small number of vertices, stored as a
// dense symmetric multiplicity matrix, plus the local operations the rest of
// the library is built from.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace imm {

inline constexpr int kMaxVertices = 16;
inline constexpr int kMaxMultiplicity = 255;

/// Raised when an operation is called outside its precondition.
class contract_violation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised when an input exceeds a configured size bound.
class too_large : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// Raised by the text/graph6/JSON readers; carries the 1-based line number.
class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Subset of {0, ..., kMaxVertices-1} as a bitmask.
class VertexSet {
 public:
  constexpr VertexSet() = default;
  constexpr explicit VertexSet(std::uint32_t bits) : bits_(bits) {}
  VertexSet(std::initializer_list<int> vs) {
    for (int v : vs) bits_ |= 1u << v;
  }

  static constexpr VertexSet all(int n) { return VertexSet(n >= 32 ? ~0u : ((1u << n) - 1u)); }
  static constexpr VertexSet single(int v) { return VertexSet(1u << v); }

  constexpr std::uint32_t bits() const { return bits_; }
  constexpr bool contains(int v) const { return (bits_ >> v) & 1u; }
  constexpr int size() const { return std::popcount(bits_); }
  constexpr bool empty() const { return bits_ == 0; }
  constexpr int first() const { return std::countr_zero(bits_); }

  constexpr VertexSet with(int v) const { return VertexSet(bits_ | (1u << v)); }
  constexpr VertexSet without(int v) const { return VertexSet(bits_ & ~(1u << v)); }
  constexpr VertexSet complement(int n) const { return VertexSet(all(n).bits_ & ~bits_); }
  constexpr bool is_subset_of(VertexSet o) const { return (bits_ & ~o.bits_) == 0; }

  friend constexpr VertexSet operator|(VertexSet a, VertexSet b) { return VertexSet(a.bits_ | b.bits_); }
  friend constexpr VertexSet operator&(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & b.bits_); }
  friend constexpr VertexSet operator-(VertexSet a, VertexSet b) { return VertexSet(a.bits_ & ~b.bits_); }
  friend constexpr bool operator==(VertexSet, VertexSet) = default;
  friend constexpr auto operator<=>(VertexSet, VertexSet) = default;

  class iterator {
   public:
    constexpr explicit iterator(std::uint32_t rest) : rest_(rest) {}
    constexpr int operator*() const { return std::countr_zero(rest_); }
    constexpr iterator& operator++() {
      rest_ &= rest_ - 1;
      return *this;
    }
    constexpr bool operator!=(const iterator& o) const { return rest_ != o.rest_; }

   private:
    std::uint32_t rest_;
  };
  constexpr iterator begin() const { return iterator(bits_); }
  constexpr iterator end() const { return iterator(0); }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int v : *this) out.push_back(v);
    return out;
  }

 private:
  std::uint32_t bits_ = 0;
};

/// Loopless multigraph with vertices 0..n-1.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int n) : n_(n) {
    if (n < 0 || n > kMaxVertices) {
      throw too_large("multigraph order " + std::to_string(n) + " exceeds " +
                      std::to_string(kMaxVertices));
    }
  }

  /// Builds from (u, v, multiplicity) triples; repeated pairs accumulate.
  static Multigraph from_edges(int n, std::initializer_list<std::array<int, 3>> edges) {
    Multigraph g(n);
    for (auto [u, v, m] : edges) g.add_edges(u, v, m);
    return g;
  }

  int order() const { return n_; }
  VertexSet vertices() const { return VertexSet::all(n_); }

  int mult(int u, int v) const { return m_[u * kMaxVertices + v]; }

  void set_mult(int u, int v, int m) {
    check_pair(u, v);
    if (m < 0 || m > kMaxMultiplicity) throw contract_violation("multiplicity out of range");
    m_[u * kMaxVertices + v] = static_cast<std::uint8_t>(m);
    m_[v * kMaxVertices + u] = static_cast<std::uint8_t>(m);
  }
  void add_edges(int u, int v, int k = 1) { set_mult(u, v, mult(u, v) + k); }
  void remove_edges(int u, int v, int k = 1) {
    if (mult(u, v) < k) throw contract_violation("removing a missing edge");
    set_mult(u, v, mult(u, v) - k);
  }

  int degree(int v) const {
    int d = 0;
    for (int u = 0; u < n_; ++u) d += mult(v, u);
    return d;
  }
  int edge_count() const {
    int e = 0;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) e += mult(u, v);
    return e;
  }
  VertexSet neighbours(int v) const {
    std::uint32_t b = 0;
    for (int u = 0; u < n_; ++u)
      if (mult(v, u) > 0) b |= 1u << u;
    return VertexSet(b);
  }
  /// Edges from v into the set X.
  int mult_to(int v, VertexSet X) const {
    int s = 0;
    for (int u : X) s += mult(v, u);
    return s;
  }
  int max_mult() const {
    int best = 0;
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v) best = std::max(best, mult(u, v));
    return best;
  }

  /// Underlying simple graph (every multiplicity clamped to 1).
  Multigraph underlying_simple() const {
    Multigraph s(n_);
    for (int u = 0; u < n_; ++u)
      for (int v = u + 1; v < n_; ++v)
        if (mult(u, v) > 0) s.set_mult(u, v, 1);
    return s;
  }

  /// Graph on the vertices of S, relabelled 0..|S|-1 in increasing order.
  Multigraph induced(VertexSet S) const {
    std::vector<int> vs = S.members();
    Multigraph h(static_cast<int>(vs.size()));
    for (std::size_t i = 0; i < vs.size(); ++i)
      for (std::size_t j = i + 1; j < vs.size(); ++j) h.set_mult(int(i), int(j), mult(vs[i], vs[j]));
    return h;
  }

  /// Vertex i of the result is vertex perm[i] of this graph.
  Multigraph permuted(const std::vector<int>& perm) const {
    Multigraph h(n_);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) h.set_mult(i, j, mult(perm[i], perm[j]));
    return h;
  }

  bool is_connected() const {
    if (n_ <= 1) return true;
    std::uint32_t seen = 1, frontier = 1;
    while (frontier) {
      int v = std::countr_zero(frontier);
      frontier &= frontier - 1;
      std::uint32_t nb = neighbours(v).bits() & ~seen;
      seen |= nb;
      frontier |= nb;
    }
    return seen == VertexSet::all(n_).bits();
  }

  /// Connected components as vertex sets, ordered by smallest member.
  std::vector<VertexSet> components() const {
    std::vector<VertexSet> out;
    std::uint32_t left = VertexSet::all(n_).bits();
    while (left) {
      std::uint32_t seen = left & (~left + 1), frontier = seen;
      while (frontier) {
        int v = std::countr_zero(frontier);
        frontier &= frontier - 1;
        std::uint32_t nb = neighbours(v).bits() & ~seen;
        seen |= nb;
        frontier |= nb;
      }
      out.emplace_back(seen);
      left &= ~seen;
    }
    return out;
  }

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    if (a.n_ != b.n_) return false;
    for (int u = 0; u < a.n_; ++u)
      for (int v = u + 1; v < a.n_; ++v)
        if (a.mult(u, v) != b.mult(u, v)) return false;
    return true;
  }

 private:
  void check_pair(int u, int v) const {
    if (u < 0 || v < 0 || u >= n_ || v >= n_) throw contract_violation("vertex out of range");
    if (u == v) throw contract_violation("loops are not allowed");
  }

  int n_ = 0;
  std::array<std::uint8_t, kMaxVertices * kMaxVertices> m_{};
};

/// Ordered tuple of at most two distinct root vertices.
class Roots {
 public:
  Roots() = default;
  Roots(std::initializer_list<int> rs) {
    for (int r : rs) push_back(r);
  }
  explicit Roots(const std::vector<int>& rs) {
    for (int r : rs) push_back(r);
  }
  void push_back(int r) {
    if (size_ == 2) throw contract_violation("at most two roots are supported");
    v_[size_++] = r;
  }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  int operator[](int i) const { return v_[i]; }
  const int* begin() const { return v_.data(); }
  const int* end() const { return v_.data() + size_; }
  bool contains(int x) const { return std::find(begin(), end(), x) != end(); }
  VertexSet as_set() const {
    VertexSet s;
    for (int r : *this) s = s.with(r);
    return s;
  }
  std::vector<int> to_vector() const { return {begin(), end()}; }
  friend bool operator==(const Roots& a, const Roots& b) {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }

 private:
  std::array<int, 2> v_{};
  int size_ = 0;
};

struct RootedMultigraph {
  Multigraph graph;
  Roots roots;

  RootedMultigraph() = default;
  RootedMultigraph(Multigraph g, Roots r = {}) : graph(std::move(g)), roots(r) { validate(); }

  int order() const { return graph.order(); }

  void validate() const {
    for (int i = 0; i < roots.size(); ++i) {
      if (roots[i] < 0 || roots[i] >= graph.order()) throw contract_violation("root out of range");
      for (int j = 0; j < i; ++j)
        if (roots[i] == roots[j]) throw contract_violation("roots must be distinct");
    }
  }
  friend bool operator==(const RootedMultigraph&, const RootedMultigraph&) = default;
};

/// An edge cut delta(side) together with its size.
struct CutCertificate {
  VertexSet side;
  int size = 0;
  friend bool operator==(const CutCertificate&, const CutCertificate&) = default;
};

// ---------------------------------------------------------------------------
// Local operations. All take their input by const reference and return a new
// value.
// ---------------------------------------------------------------------------

/// d(X): number of edges with exactly one end in X.
inline int cut_size(const Multigraph& g, VertexSet X) {
  const VertexSet all = g.vertices();
  if (X.empty() || !X.is_subset_of(all) || X == all) {
    throw contract_violation("cut_size needs a nonempty proper vertex subset");
  }
  int d = 0;
  const VertexSet rest = X.complement(g.order());
  for (int u : X) d += g.mult_to(u, rest);
  return d;
}

/// Result of identifying a vertex set; `image[v]` is the new id of old vertex v.
struct Contraction {
  Multigraph graph;
  std::vector<int> image;
  int merged = -1;
};

/// G.X: identify X to one vertex (which takes the smallest id of X; the other
/// vertices keep their relative order) and delete the loops this creates.
inline Contraction contract_with_map(const Multigraph& g, VertexSet X) {
  if (X.empty() || !X.is_subset_of(g.vertices())) {
    throw contract_violation("contract needs a nonempty vertex subset");
  }
  const int n = g.order();
  const int keep = X.first();
  std::vector<int> image(n);
  int next = 0;
  for (int v = 0; v < n; ++v) {
    if (X.contains(v) && v != keep) continue;
    image[v] = next++;
  }
  for (int v : X) image[v] = image[keep];
  Contraction c{Multigraph(next), std::move(image), 0};
  c.merged = c.image[keep];
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) {
      const int a = c.image[u], b = c.image[v];
      if (a != b && g.mult(u, v) > 0) c.graph.add_edges(a, b, g.mult(u, v));
    }
  return c;
}

inline Multigraph contract(const Multigraph& g, VertexSet X) { return contract_with_map(g, X).graph; }

/// Rooted G.X; a root inside X makes the merged vertex that root. X may hold
/// at most one root.
inline RootedMultigraph contract(const RootedMultigraph& g, VertexSet X) {
  if ((X & g.roots.as_set()).size() > 1) {
    throw contract_violation("cannot identify two roots");
  }
  Contraction c = contract_with_map(g.graph, X);
  Roots r;
  for (int x : g.roots) r.push_back(c.image[x]);
  return RootedMultigraph(std::move(c.graph), r);
}

/// Split off the pair xy, yz at y: delete both edges and add an edge xz.
inline Multigraph split_off(const Multigraph& g, int x, int y, int z) {
  if (x == y || y == z) throw contract_violation("split_off: middle vertex must differ from ends");
  if (x == z) throw contract_violation("split_off: would create a loop");
  if (g.mult(x, y) < 1 || g.mult(y, z) < 1) throw contract_violation("split_off: missing edge");
  Multigraph h = g;
  h.remove_edges(x, y);
  h.remove_edges(y, z);
  h.add_edges(x, z);
  return h;
}

/// Delete vertex v (relabelling the later vertices down by one).
inline Multigraph delete_vertex(const Multigraph& g, int v) {
  return g.induced(g.vertices().without(v));
}

/// Suppress a degree-2 vertex: its two edges become one edge between its
/// neighbours, or vanish if both go to the same neighbour.
inline Multigraph suppress(const Multigraph& g, int v) {
  if (g.degree(v) != 2) throw contract_violation("suppress needs a degree-2 vertex");
  std::vector<int> ends;
  for (int u = 0; u < g.order(); ++u)
    for (int k = 0; k < g.mult(v, u); ++k) ends.push_back(u);
  Multigraph h = g;
  h.set_mult(v, ends[0], 0);
  h.set_mult(v, ends[1], 0);
  if (ends[0] != ends[1]) h.add_edges(ends[0], ends[1]);
  return delete_vertex(h, v);
}

/// Replace one u-v edge by a path u-w-v through a new vertex w = n.
inline std::pair<Multigraph, int> subdivide(const Multigraph& g, int u, int v) {
  if (u == v || g.mult(u, v) < 1) throw contract_violation("subdivide: no such edge");
  Multigraph h(g.order() + 1);
  for (int a = 0; a < g.order(); ++a)
    for (int b = a + 1; b < g.order(); ++b) h.set_mult(a, b, g.mult(a, b));
  const int w = g.order();
  h.remove_edges(u, v);
  h.add_edges(u, w);
  h.add_edges(w, v);
  return {h, w};
}

/// Clamp every multiplicity to `bound`. Immersion-equivalent for any pattern
/// with at most `bound` edges.
inline RootedMultigraph cap_multiplicities(const RootedMultigraph& g, int bound) {
  if (bound < 1) throw contract_violation("cap bound must be positive");
  RootedMultigraph h = g;
  const int n = g.order();
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (h.graph.mult(u, v) > bound) h.graph.set_mult(u, v, bound);
  return h;
}

inline Multigraph cap_multiplicities(const Multigraph& g, int bound) {
  return cap_multiplicities(RootedMultigraph(g), bound).graph;
}

/// Relabel a rooted graph: vertex i of the result is vertex perm[i] of g.
inline RootedMultigraph permuted(const RootedMultigraph& g, const std::vector<int>& perm) {
  std::vector<int> inv(perm.size());
  for (std::size_t i = 0; i < perm.size(); ++i) inv[perm[i]] = int(i);
  Roots r;
  for (int x : g.roots) r.push_back(inv[x]);
  return RootedMultigraph(g.graph.permuted(perm), r);
}

inline bool is_cubic(const Multigraph& g) {
  for (int v = 0; v < g.order(); ++v)
    if (g.degree(v) != 3) return false;
  return g.order() > 0;
}

}  // namespace imm
