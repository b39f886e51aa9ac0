#pragma once

// Canonical labelling of small rooted multigraphs by colour refinement plus
// exhaustive individualisation, with automorphism pruning. Roots are
// individualised up front (root i lands at canonical position i), so two
// rooted graphs get the same form iff some isomorphism maps roots to roots in
// tuple order and preserves every multiplicity.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "immersion/multigraph.hpp"

namespace imm {

inline constexpr int kDefaultCanonicalBound = 12;

struct CanonicalForm {
  std::string bytes;  // n, root count, then the upper triangle in canonical order

  int order() const { return bytes.empty() ? 0 : static_cast<unsigned char>(bytes[0]); }
  friend bool operator==(const CanonicalForm&, const CanonicalForm&) = default;
  friend auto operator<=>(const CanonicalForm&, const CanonicalForm&) = default;

  /// Lower-case hex rendering, stable across runs; used in reports and catalogs.
  std::string hex() const {
    static constexpr char digits[] = "0123456789abcdef";
    std::string s;
    s.reserve(bytes.size() * 2);
    for (unsigned char c : bytes) {
      s.push_back(digits[c >> 4]);
      s.push_back(digits[c & 15]);
    }
    return s;
  }
  static CanonicalForm from_hex(const std::string& h) {
    if (h.size() % 2 != 0) throw contract_violation("odd-length canonical hex");
    auto nib = [](char c) -> int {
      if (c >= '0' && c <= '9') return c - '0';
      if (c >= 'a' && c <= 'f') return c - 'a' + 10;
      throw contract_violation("bad canonical hex digit");
    };
    CanonicalForm f;
    for (std::size_t i = 0; i < h.size(); i += 2) f.bytes.push_back(char(nib(h[i]) * 16 + nib(h[i + 1])));
    return f;
  }

  /// Rebuilds the canonical representative.
  RootedMultigraph graph() const {
    const int n = static_cast<unsigned char>(bytes.at(0));
    const int r = static_cast<unsigned char>(bytes.at(1));
    Multigraph g(n);
    std::size_t k = 2;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) g.set_mult(i, j, static_cast<unsigned char>(bytes.at(k++)));
    Roots roots;
    for (int i = 0; i < r; ++i) roots.push_back(i);
    return RootedMultigraph(g, roots);
  }
};

struct CanonicalFormHash {
  std::size_t operator()(const CanonicalForm& f) const noexcept { return std::hash<std::string>{}(f.bytes); }
};

struct CanonicalLabeling {
  std::vector<int> order;  // order[p] = vertex placed at canonical position p
  CanonicalForm form;
};

namespace detail {

class Canonicalizer {
 public:
  explicit Canonicalizer(const RootedMultigraph& g) : g_(g.graph), n_(g.order()) {
    Colors c{};
    const int r = g.roots.size();
    for (int v = 0; v < n_; ++v) c[v] = static_cast<std::int8_t>(r);
    for (int i = 0; i < r; ++i) c[g.roots[i]] = static_cast<std::int8_t>(i);
    header_.push_back(static_cast<char>(n_));
    header_.push_back(static_cast<char>(r));
    search(c, 0);
  }

  CanonicalLabeling result() && {
    CanonicalLabeling out;
    out.order = best_order_;
    out.form.bytes = std::move(best_);
    return out;
  }

 private:
  using Colors = std::array<std::int8_t, kMaxVertices>;
  using Signature = std::array<std::uint16_t, kMaxVertices + 1>;

  // Refine to the coarsest equitable ordered partition finer than c. A colour
  // is the start index of its cell, so cell order is isomorphism invariant.
  void refine(Colors& c) const {
    int cells = count_cells(c);
    for (;;) {
      std::array<Signature, kMaxVertices> sig;
      for (int v = 0; v < n_; ++v) {
        Signature& s = sig[v];
        s.fill(0xFFFF);
        s[0] = static_cast<std::uint16_t>(c[v]);
        int k = 1;
        for (int u = 0; u < n_; ++u) {
          const int m = g_.mult(v, u);
          if (m > 0) s[k++] = static_cast<std::uint16_t>((c[u] << 8) | m);
        }
        std::sort(s.begin() + 1, s.begin() + k);
      }
      std::array<int, kMaxVertices> idx;
      std::iota(idx.begin(), idx.begin() + n_, 0);
      std::sort(idx.begin(), idx.begin() + n_, [&](int a, int b) { return sig[a] < sig[b]; });
      Colors next{};
      for (int i = 0; i < n_; ++i) {
        const int v = idx[i];
        next[v] = (i > 0 && sig[idx[i - 1]] == sig[v]) ? next[idx[i - 1]] : static_cast<std::int8_t>(i);
      }
      const int ncells = count_cells(next);
      c = next;
      if (ncells == cells) return;
      cells = ncells;
    }
  }

  int count_cells(const Colors& c) const {
    std::uint32_t seen = 0;
    for (int v = 0; v < n_; ++v) seen |= 1u << c[v];
    return std::popcount(seen);
  }

  // Orbits of the subgroup generated by found automorphisms that fix every
  // vertex of `fixed` pointwise.
  std::array<int, kMaxVertices> orbits(const std::vector<int>& fixed) const {
    std::array<int, kMaxVertices> parent;
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const auto& a : autos_) {
      bool fixes = true;
      for (int v : fixed)
        if (a[v] != v) {
          fixes = false;
          break;
        }
      if (!fixes) continue;
      for (int v = 0; v < n_; ++v) parent[find(v)] = find(a[v]);
    }
    for (int v = 0; v < n_; ++v) parent[v] = find(v);
    return parent;
  }

  void search(Colors c, int depth) {
    refine(c);
    int target = -1, target_size = 0;
    {
      std::array<int, kMaxVertices> size{};
      for (int v = 0; v < n_; ++v) ++size[c[v]];
      for (int s = 0; s < n_; ++s)
        if (size[s] > 1) {
          target = s;
          target_size = size[s];
          break;
        }
    }
    if (target < 0) {
      leaf(c);
      return;
    }
    (void)target_size;
    std::vector<int> tried;
    for (int w = 0; w < n_; ++w) {
      if (c[w] != target) continue;
      if (!tried.empty() && !autos_.empty()) {
        auto orb = orbits(prefix_);
        bool skip = false;
        for (int t : tried)
          if (orb[t] == orb[w]) {
            skip = true;
            break;
          }
        if (skip) continue;
      }
      tried.push_back(w);
      Colors child = c;
      for (int v = 0; v < n_; ++v)
        if (c[v] == target && v != w) child[v] = static_cast<std::int8_t>(target + 1);
      prefix_.push_back(w);
      search(child, depth + 1);
      prefix_.pop_back();
    }
  }

  void leaf(const Colors& c) {
    std::vector<int> order(n_);
    for (int v = 0; v < n_; ++v) order[c[v]] = v;
    std::string enc = header_;
    enc.reserve(header_.size() + n_ * (n_ - 1) / 2);
    for (int i = 0; i < n_; ++i)
      for (int j = i + 1; j < n_; ++j) enc.push_back(static_cast<char>(g_.mult(order[i], order[j])));
    if (best_order_.empty() || enc < best_) {
      best_ = std::move(enc);
      best_order_ = std::move(order);
    } else if (enc == best_) {
      std::vector<int> a(n_);
      for (int p = 0; p < n_; ++p) a[best_order_[p]] = order[p];
      autos_.push_back(std::move(a));
    }
  }

  const Multigraph& g_;
  int n_;
  std::string header_;
  std::string best_;
  std::vector<int> best_order_;
  std::vector<std::vector<int>> autos_;
  std::vector<int> prefix_;
};

}  // namespace detail

inline CanonicalLabeling canonical_labeling(const RootedMultigraph& g, int bound = kDefaultCanonicalBound) {
  if (g.order() > bound) {
    throw too_large("canonical form supports at most " + std::to_string(bound) + " vertices");
  }
  if (g.order() == 0) {
    CanonicalLabeling out;
    out.form.bytes = std::string("\0\0", 2);
    return out;
  }
  return detail::Canonicalizer(g).result();
}

inline CanonicalForm canonical_form(const RootedMultigraph& g, int bound = kDefaultCanonicalBound) {
  return canonical_labeling(g, bound).form;
}

inline CanonicalForm canonical_form(const Multigraph& g, int bound = kDefaultCanonicalBound) {
  return canonical_form(RootedMultigraph(g), bound);
}

inline bool isomorphic(const RootedMultigraph& a, const RootedMultigraph& b) {
  return a.order() == b.order() && a.roots.size() == b.roots.size() &&
         canonical_form(a, kMaxVertices) == canonical_form(b, kMaxVertices);
}

}  // namespace imm
