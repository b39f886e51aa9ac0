#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>
#include <sstream>

#include "immersion/graph_io.hpp"
#include "immersion/structure.hpp"
#include "immersion/verifier.hpp"
#include "test_graphs.hpp"

using namespace imm;

namespace {

const std::string kGraphs = std::string(IMM_DATA_DIR) + "/graphs";

Multigraph cycle(int n) {
  Multigraph g(n);
  for (int i = 0; i < n; ++i) g.set_mult(i, (i + 1) % n, 1);
  return g;
}

Multigraph star(int leaves) {
  Multigraph g(leaves + 1);
  for (int i = 1; i <= leaves; ++i) g.set_mult(0, i, 1);
  return g;
}

// Orbits of vertices (or ordered vertex pairs) under all automorphisms found
// by trying every permutation.
int brute_orbit_count(const Multigraph& g, int roots) {
  const int n = g.order();
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::vector<std::vector<int>> autos;
  do {
    bool ok = true;
    for (int u = 0; u < n && ok; ++u)
      for (int v = u + 1; v < n && ok; ++v) ok = g.mult(u, v) == g.mult(p[u], p[v]);
    if (ok) autos.push_back(p);
  } while (std::next_permutation(p.begin(), p.end()));
  std::set<std::vector<int>> reps;
  std::vector<std::vector<int>> tuples;
  if (roots == 0) return 1;
  for (int a = 0; a < n; ++a) {
    if (roots == 1) {
      tuples.push_back({a});
      continue;
    }
    for (int b = 0; b < n; ++b)
      if (a != b) tuples.push_back({a, b});
  }
  for (const auto& t : tuples) {
    std::vector<int> best = t;
    for (const auto& a : autos) {
      std::vector<int> img;
      for (int x : t) img.push_back(a[x]);
      best = std::min(best, img);
    }
    reps.insert(best);
  }
  return static_cast<int>(reps.size());
}

bool all_cuts_meet(const Multigraph& g, const Roots& r, const CutDemand& d) {
  const int n = g.order();
  for (std::uint32_t m = 1; m + 1 < (1u << n); ++m) {
    const VertexSet X(m);
    if (cut_size(g, X) < d(X, X.complement(n), r)) return false;
  }
  return true;
}

// Every point of the box [1, cap]^E.
std::vector<Point> box(const Support& s) {
  std::vector<Point> out;
  Point p = s.ones();
  for (;;) {
    out.push_back(p);
    int i = 0;
    while (i < s.edge_count() && p[i] == s.cap()) p[i++] = 1;
    if (i == s.edge_count()) return out;
    ++p[i];
  }
}

}  // namespace

TEST(SimpleGraphs, InternalGeneratorMatchesFiles) {
  const int expected[] = {0, 1, 1, 2, 6, 21, 112};
  for (int n = 1; n <= 6; ++n) {
    const auto gen = generate_connected_simple(n);
    const auto file = load_simple_graphs(graph_file(kGraphs, n));
    ASSERT_EQ(static_cast<int>(gen.size()), expected[n]) << n;
    ASSERT_EQ(file.size(), gen.size()) << n;
    std::set<CanonicalForm> a, b;
    for (const auto& g : gen) a.insert(canonical_form(g));
    for (const auto& g : file) {
      EXPECT_TRUE(g.is_connected());
      if (n > 1) {
        EXPECT_EQ(g.max_mult(), 1);
      }
      b.insert(canonical_form(g));
    }
    EXPECT_EQ(a, b) << n;
  }
}

TEST(SimpleGraphs, LargerFilesAreDistinctAndConnected) {
  const std::size_t expected[] = {853, 11117};
  for (int n : {7, 8}) {
    const auto file = load_simple_graphs(graph_file(kGraphs, n));
    EXPECT_EQ(file.size(), expected[n - 7]);
    std::set<CanonicalForm> forms;
    for (const auto& g : file) {
      ASSERT_EQ(g.order(), n);
      EXPECT_TRUE(g.is_connected());
      forms.insert(canonical_form(g));
    }
    EXPECT_EQ(forms.size(), file.size());
  }
}

TEST(SimpleGraphs, EmptyStreamAndMalformedLine) {
  std::istringstream empty("");
  EXPECT_TRUE(read_graph6(empty).empty());
  std::istringstream bad("Dhc\nD!c\n");
  try {
    read_graph6(bad);
    FAIL() << "expected parse_error";
  } catch (const parse_error& e) {
    EXPECT_EQ(e.line(), 2);
  }
}

TEST(RootOrbits, SmallExamples) {
  EXPECT_EQ(root_orbits(cycle(6), 1).size(), 1u);
  EXPECT_EQ(root_orbits(star(4), 1).size(), 2u);
  EXPECT_EQ(root_orbits(cycle(5), 0).size(), 1u);
  EXPECT_EQ(root_orbits(cycle(5), 2).size(), 2u);  // adjacent or not
}

TEST(RootOrbits, AgreeWithBruteForceOrbits) {
  for (int n = 2; n <= 6; ++n)
    for (const Multigraph& g : load_simple_graphs(graph_file(kGraphs, n)))
      for (int k : {1, 2}) ASSERT_EQ(static_cast<int>(root_orbits(g, k).size()), brute_orbit_count(g, k)) << n;
}

TEST(Support, AutomorphismsMatchBruteForce) {
  for (int n = 2; n <= 6; ++n)
    for (const Multigraph& g : load_simple_graphs(graph_file(kGraphs, n))) {
      const auto a = Support::automorphisms(RootedMultigraph(g), 100000);
      std::vector<int> p(n);
      std::iota(p.begin(), p.end(), 0);
      std::size_t count = 0;
      do {
        bool ok = true;
        for (int u = 0; u < n && ok; ++u)
          for (int v = u + 1; v < n && ok; ++v) ok = g.mult(u, v) == g.mult(p[u], p[v]);
        count += ok;
      } while (std::next_permutation(p.begin(), p.end()));
      ASSERT_EQ(a.size(), count);
    }
}

TEST(Support, KeyAgreesWithCanonicalForm) {
  std::mt19937 rng(7);
  for (int n = 4; n <= 6; ++n) {
    const auto gs = load_simple_graphs(graph_file(kGraphs, n));
    for (int trial = 0; trial < 40; ++trial) {
      const Multigraph& g = gs[rng() % gs.size()];
      for (const RootedMultigraph& r : root_orbits(g, static_cast<int>(rng() % 3))) {
        const Support s(r, 3, demands::k_edge_connected(1));
        std::vector<Point> pts;
        for (int i = 0; i < 12; ++i) {
          Point p = s.ones();
          for (char& c : p) c = static_cast<char>(1 + rng() % 2);
          pts.push_back(p);
        }
        for (const Point& a : pts)
          for (const Point& b : pts) {
            const bool same = canonical_form(s.realize(a), kMaxVertices) == canonical_form(s.realize(b), kMaxVertices);
            ASSERT_EQ(s.key(a) == s.key(b), same);
          }
      }
    }
  }
}

TEST(Support, ConstraintsMatchHypotheses) {
  std::mt19937 rng(11);
  for (int n = 4; n <= 6; ++n) {
    const auto gs = load_simple_graphs(graph_file(kGraphs, n));
    for (int trial = 0; trial < 60; ++trial) {
      const Multigraph& g = gs[rng() % gs.size()];
      auto two = root_orbits(g, 2);
      auto one = root_orbits(g, 1);
      const RootedMultigraph r2 = two[rng() % two.size()], r1 = one[rng() % one.size()];
      const int m = 2 + static_cast<int>(rng() % 3);
      const Support dm(r2, 6, demands::dm(m)), rw4(r1, 6, demands::rooted_w4()), w4(RootedMultigraph(g), 6, demands::w4()),
          k4(r2, 6, demands::k_edge_connected(3)), strict(r1, 6, demands::rooted_w4_strict());
      for (int i = 0; i < 20; ++i) {
        Point p = dm.ones();
        for (char& c : p) c = static_cast<char>(1 + rng() % 5);
        ASSERT_EQ(dm.feasible(p), !dm_hypotheses(dm.realize(p), m));
        ASSERT_EQ(k4.feasible(p), !k4_hypotheses(k4.realize(p), K4Variant::TwoRoot));
        if (n >= 5) {
          ASSERT_EQ(w4.feasible(p), !w4_hypotheses(w4.realize(p).graph));
          ASSERT_EQ(rw4.feasible(p), !rooted_w4_hypotheses(rw4.realize(p)));
        }
        // strict: the theorem's conditions plus d(Y) >= 5 on internal cuts
        // with a root-free side of three or more vertices
        const RootedMultigraph h = strict.realize(p);
        bool ok = n >= 5 ? !rooted_w4_hypotheses(h) : all_cuts_meet(h.graph, h.roots, demands::rooted_w4());
        for (std::uint32_t mask = 1; mask + 1 < (1u << n) && ok; ++mask) {
          const VertexSet Y(mask);
          if (Y.contains(h.roots[0]) || Y.size() < 3 || n - Y.size() < 2) continue;
          ok = cut_size(h.graph, Y) >= 5;
        }
        ASSERT_EQ(strict.feasible(p), ok);
      }
    }
  }
}

TEST(MinimalPoints, MatchBruteForce) {
  std::mt19937 rng(3);
  for (int n = 4; n <= 5; ++n) {
    const auto gs = load_simple_graphs(graph_file(kGraphs, n));
    for (const Multigraph& g : gs) {
      if (g.edge_count() > 7) continue;
      for (const RootedMultigraph& r : root_orbits(g, 1)) {
        const Support s(r, 4, demands::rooted_w4());
        std::set<Point> expected;
        for (const Point& p : box(s)) {
          if (!s.feasible(p)) continue;
          bool minimal = true;
          for (int e = 0; e < s.edge_count() && minimal; ++e) {
            if (p[e] == 1) continue;
            Point q = p;
            --q[e];
            minimal = !s.feasible(q);
          }
          if (minimal) expected.insert(p);
        }
        const auto got = minimal_feasible_points(s);
        ASSERT_EQ(std::set<Point>(got.begin(), got.end()), expected);
      }
    }
  }
}

TEST(Sweep, NegativesAndFrontierMatchBruteForce) {
  const Pattern pat(PatternId::wheel(4, 1));
  for (const Multigraph& g : load_simple_graphs(graph_file(kGraphs, 5))) {
    if (g.edge_count() > 6) continue;
    for (const RootedMultigraph& r : root_orbits(g, 1)) {
      const Support s(r, 4, demands::rooted_w4());
      std::set<std::string> neg, lowest;
      std::map<Point, bool> imm;
      for (const Point& p : box(s))
        if (s.feasible(p)) imm[p] = immerses(s.realize(p), pat).has_value();
      for (const auto& [p, yes] : imm) {
        if (!yes) {
          neg.insert(s.key(p));
          continue;
        }
        bool low = true;
        for (int e = 0; e < s.edge_count() && low; ++e) {
          if (p[e] == 1) continue;
          Point q = p;
          --q[e];
          auto it = imm.find(q);
          low = it == imm.end() || !it->second;
        }
        if (low) lowest.insert(s.key(p));
      }
      const SweepResult sw = sweep(s, pat);
      std::set<std::string> got_neg, got_front;
      for (const Point& p : sw.negatives) got_neg.insert(s.key(p));
      for (const Point& p : sw.frontier) got_front.insert(s.key(p));
      ASSERT_EQ(got_neg, neg);
      ASSERT_EQ(got_neg.size(), sw.negatives.size());
      ASSERT_EQ(got_front, lowest);
    }
  }
}

TEST(Families, MembersCarryTheirTags) {
  for (int m = 2; m <= 4; ++m)
    for (const RootedMultigraph& g : type_b_family(m, 3, 7)) EXPECT_TRUE(is_type_b(lobe_decomposition(g), m));
  const auto t2 = type2_family(4, 7, 4);
  EXPECT_FALSE(t2.empty());
  for (const RootedMultigraph& g : t2) EXPECT_TRUE(find_type2(g).has_value());
  const auto c5 = case5_family(4, 7, 4);
  EXPECT_FALSE(c5.empty());
  for (const RootedMultigraph& g : c5) EXPECT_TRUE(find_case5(g.graph).has_value());
  for (const RootedMultigraph& g : doubled_cycle_family(3, 7, 1)) EXPECT_TRUE(is_doubled_cycle(g.graph));
}

TEST(Families, SausageExpansionsRoundTrip) {
  // rooted doubled triangle: the two free vertices form a chain of order 2,
  // and lengthening it gives every longer rooted doubled cycle
  Multigraph b = Multigraph::from_edges(3, {{0, 1, 2}, {1, 2, 2}, {2, 0, 2}});
  const RootedMultigraph base(b, Roots{0});
  const auto ex = sausage_expansions(base, 8);
  EXPECT_EQ(ex.size(), 6u);
  for (const RootedMultigraph& g : ex) {
    EXPECT_LE(g.order(), 8);
    EXPECT_EQ(canonical_form(sausage_reduce(g), kMaxVertices), canonical_form(base, kMaxVertices));
  }
}

TEST(Repair, DoubledCycleAllTwo) {
  // qualifies: all-2 meets the strict conditions; minimal: no decrement does
  auto status = [](int n) {
    const Support s(RootedMultigraph(cycle(n), Roots{0}), 8, demands::rooted_w4_strict());
    const Point p(n, char(2));
    bool minimal = true;
    for (int e = 0; e < n; ++e) {
      Point q = p;
      --q[e];
      minimal = minimal && !s.feasible(q);
    }
    return std::pair{s.feasible(p), minimal};
  };
  // On a triangle the two non-root vertices only need degree 3, so the
  // non-root edge can drop to 1.
  EXPECT_EQ(status(3), std::pair(true, false));
  EXPECT_EQ(status(4), std::pair(true, true));
  const auto rep = repair(RootedMultigraph(cycle(4), Roots{0}));
  EXPECT_EQ(std::count_if(rep.begin(), rep.end(), [](const RootedMultigraph& g) { return is_doubled_cycle(g.graph); }), 1);
  // From five vertices on, a root-free arc of three vertices is an internal
  // cut of size 4, so the all-2 assignment misses d(Y) >= 5.
  for (int n = 5; n <= 8; ++n) {
    EXPECT_FALSE(status(n).first) << n;
    for (const RootedMultigraph& g : repair(RootedMultigraph(cycle(n), Roots{0})))
      EXPECT_FALSE(is_doubled_cycle(g.graph));
  }
}

TEST(Repair, ImmersingSupportGivesEmptyList) {
  Multigraph k5(5);
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v) k5.set_mult(u, v, 1);
  EXPECT_TRUE(repair(RootedMultigraph(k5, Roots{0})).empty());
  EXPECT_TRUE(obstruction(RootedMultigraph(k5, Roots{0}), {}).empty());
}
