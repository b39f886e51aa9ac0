#include <gtest/gtest.h>

#include <random>

#include "immersion/structure.hpp"
#include "oracles/split_sequence.hpp"
#include "test_graphs.hpp"

using namespace imm;

namespace {

Multigraph complete(int n) {
  Multigraph g(n);
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) g.set_mult(u, v, 1);
  return g;
}

Multigraph petersen() {
  Multigraph g(10);
  for (int i = 0; i < 5; ++i) {
    g.set_mult(i, (i + 1) % 5, 1);
    g.set_mult(i, i + 5, 1);
    g.set_mult(5 + i, 5 + (i + 2) % 5, 1);
  }
  return g;
}

Multigraph chain4(int m) { return Multigraph::from_edges(4, {{0, 1, m}, {1, 2, m}, {2, 3, m}}); }

Multigraph doubled_cycle(int len) { return make_pattern(PatternId::doubled_cycle(len)).graph; }

}  // namespace

TEST(Segmentation, MultiplicityFourChain) {
  SegmentationQuery q;
  q.width = 4;
  q.head_max = q.tail_max = 1;
  q.head_must = VertexSet{0};
  q.tail_must = VertexSet{3};
  const auto s = find_segmentation(chain4(4), q);
  ASSERT_TRUE(s);
  EXPECT_EQ(s->chain, (std::vector<VertexSet>{VertexSet{0}, VertexSet{0, 1}, VertexSet{0, 1, 2}}));
  EXPECT_TRUE(verify_segmentation(chain4(4), *s));
  EXPECT_EQ(s->tail(4), VertexSet{3});
}

TEST(Segmentation, SpecSignatureAndDegenerateChain) {
  const auto s = find_segmentation(chain4(4), 2, 2, 4, 0);
  ASSERT_TRUE(s);
  EXPECT_TRUE(s->head().contains(0));
  EXPECT_TRUE(verify_segmentation(chain4(4), *s));
  EXPECT_FALSE(find_segmentation(chain4(4), 1, 1, 3));
  EXPECT_THROW(find_segmentation(chain4(4), 1, 1, 0), contract_violation);
}

TEST(Segmentation, VerifierRejectsBrokenChains) {
  const Multigraph g = chain4(4);
  EXPECT_FALSE(verify_segmentation(g, {{VertexSet{0}, VertexSet{0, 1, 2}}, 4}));
  EXPECT_FALSE(verify_segmentation(g, {{VertexSet{0}, VertexSet{0, 1}}, 3}));
  EXPECT_FALSE(verify_segmentation(g, {{VertexSet{0, 1, 2, 3}}, 4}));
  EXPECT_FALSE(verify_segmentation(g, {{}, 4}));
}

TEST(Segmentation, InteriorVerticesHaveEvenDegree) {
  std::mt19937 rng(61);
  int seen = 0;
  for (int t = 0; t < 300; ++t) {
    const int n = 4 + t % 5;
    const Multigraph g = testing_graphs::random_connected(n, 3, rng());
    const CutTable table(g);
    for (std::uint32_t X = 1; X + 1 < (1u << n); ++X)
      for (int v = 0; v < n; ++v) {
        const VertexSet S(X);
        if (S.contains(v) || S.with(v) == g.vertices() || table(S) != table(S.with(v))) continue;
        ASSERT_EQ(g.degree(v) % 2, 0);
        ++seen;
      }
  }
  EXPECT_GT(seen, 1000);
  for (int len = 4; len <= 8; ++len) {
    const Multigraph c = doubled_cycle(len);
    const auto s = find_segmentation(c, 1, 2, 4);
    ASSERT_TRUE(s);
    EXPECT_EQ(static_cast<int>(s->chain.size()), len - 2);
    for (std::size_t i = 1; i < s->chain.size(); ++i) EXPECT_EQ(c.degree((s->chain[i] - s->chain[i - 1]).first()) % 2, 0);
  }
}

TEST(Segmentation, HeadPairShrinksToSingleton) {
  std::mt19937 rng(62);
  int seen = 0;
  for (int t = 0; t < 600; ++t) {
    const int n = 4 + t % 4;
    const Multigraph g = testing_graphs::random_connected(n, 3, rng());
    const int tail_max = 1 + t % 3;
    for (int x = 0; x < n; ++x) {
      const int w = g.degree(x);
      SegmentationQuery q;
      q.width = w;
      q.head_max = 2;
      q.tail_max = tail_max;
      q.head_must = VertexSet::single(x);
      q.admissible = [](VertexSet head, VertexSet) { return head.size() == 2; };
      const auto s = find_segmentation(g, q);
      if (!s) continue;
      ++seen;
      SegmentationQuery r = q;
      r.head_max = 1;
      r.admissible = nullptr;
      const auto single = find_segmentation(g, r);
      ASSERT_TRUE(single);
      EXPECT_EQ(single->head(), VertexSet::single(x));
    }
  }
  EXPECT_GT(seen, 20);
}

TEST(ClassifyDm, D4Immerses) {
  const RootedMultigraph d4 = make_pattern(PatternId::dm(4));
  const DmResult r = classify_dm(d4, 4);
  EXPECT_EQ(r.tag, DmResult::Tag::Immerses);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(verify_witness(d4, d4, *r.witness));
}

TEST(ClassifyDm, DoubledCycleIsTypeB) {
  for (int len = 4; len <= 7; ++len)
    for (int b = 1; b < len; ++b) {
      const RootedMultigraph g(doubled_cycle(len), Roots{0, b});
      const DmResult r = classify_dm(g, 3);
      ASSERT_EQ(r.tag, DmResult::Tag::TypeB) << len << " " << b;
      EXPECT_TRUE(verify_lobes(g, *r.lobes));
      EXPECT_TRUE(is_type_b(*r.lobes, 3));
    }
}

TEST(ClassifyDm, ChainIsTypeA) {
  const RootedMultigraph g(chain4(4), Roots{0, 3});
  const DmResult r = classify_dm(g, 4);
  ASSERT_EQ(r.tag, DmResult::Tag::TypeA);
  EXPECT_TRUE(verify_segmentation(g.graph, *r.segmentation));
  EXPECT_TRUE(r.segmentation->head().contains(0));
  EXPECT_TRUE(r.segmentation->tail(4).contains(3));
  EXPECT_FALSE(immerses(g, Pattern(PatternId::dm(4))));
}

TEST(ClassifyDm, HypothesisViolationsCarryCertificates) {
  const RootedMultigraph g(chain4(4), Roots{0, 3});
  try {
    classify_dm(g, 5);
    FAIL();
  } catch (const hypothesis_violation& e) {
    EXPECT_EQ(e.condition(), "lambda_s >= m");
    ASSERT_TRUE(e.certificate());
    EXPECT_EQ(cut_size(g.graph, e.certificate()->side), 4);
  }
  const RootedMultigraph path(chain4(1), Roots{0, 3});
  EXPECT_THROW(classify_dm(path, 2), hypothesis_violation);
  EXPECT_THROW(classify_dm(RootedMultigraph(chain4(4), Roots{0}), 2), hypothesis_violation);
}

namespace {

std::optional<RootedMultigraph> random_dm_instance(std::mt19937& rng, int m) {
  const int n = 4 + rng() % 2;
  const RootedMultigraph g(testing_graphs::random_multigraph(n, 3, rng()), Roots{0, 1});
  if (dm_hypotheses(g, m)) return std::nullopt;
  return g;
}

}  // namespace

TEST(ClassifyDm, AgreesWithOracleAndSwapInvariant) {
  std::mt19937 rng(63);
  for (int m = 2; m <= 5; ++m) {
    oracle::SplitSequence o(make_pattern(PatternId::dm(m)));
    int checked = 0, negative = 0;
    for (int t = 0; t < 20000 && checked < 150; ++t) {
      const auto g = random_dm_instance(rng, m);
      if (!g) continue;
      ++checked;
      const DmResult r = classify_dm(*g, m);
      const bool imm = r.tag == DmResult::Tag::Immerses;
      ASSERT_EQ(imm, o.immerses(*g)) << to_text(*g);
      negative += !imm;
      if (r.segmentation) {
        EXPECT_TRUE(verify_segmentation(g->graph, *r.segmentation));
      }
      if (r.lobes) {
        EXPECT_TRUE(verify_lobes(*g, *r.lobes));
      }
      const RootedMultigraph swapped(g->graph, Roots{1, 0});
      EXPECT_EQ(classify_dm(swapped, m).tag, r.tag);
    }
    EXPECT_GT(checked, 100) << m;
    RecordProperty("negatives_m" + std::to_string(m), negative);
  }
}

TEST(ClassifyRootedW4, WheelAtHub) {
  const RootedMultigraph w = make_pattern(PatternId::wheel(4, 1));
  EXPECT_EQ(classify_rooted_w4(w).tag, RootedW4Result::Tag::Immerses);
}

TEST(ClassifyRootedW4, DoubledSixCycleIsType1) {
  for (int r = 0; r < 6; ++r) {
    const RootedMultigraph g(doubled_cycle(6), Roots{r});
    const RootedW4Result res = classify_rooted_w4(g);
    ASSERT_EQ(res.tag, RootedW4Result::Tag::Type1);
    EXPECT_TRUE(verify_segmentation(g.graph, *res.segmentation));
    EXPECT_TRUE(res.segmentation->head().contains(r));
    EXPECT_LE(res.segmentation->head().size(), 2);
    EXPECT_LE(res.segmentation->tail(6).size(), 3);
    EXPECT_FALSE(immerses(g, Pattern(PatternId::wheel(4, 1))));
  }
}

TEST(ClassifyRootedW4, Type2B) {
  Multigraph g = doubled_cycle(5);
  g.add_edges(0, 1);
  g.add_edges(1, 2);
  const RootedMultigraph r(g, Roots{0});
  const RootedW4Result res = classify_rooted_w4(r);
  ASSERT_EQ(res.tag, RootedW4Result::Tag::Type2);
  EXPECT_EQ(res.type2->variant, Type2Variant::B);
  EXPECT_EQ(res.type2->W, VertexSet{2});
  EXPECT_EQ(res.type2->middle, 1);
  EXPECT_TRUE(verify_type2(r, *res.type2));
  EXPECT_FALSE(immerses(r, Pattern(PatternId::wheel(4, 1))));
}

TEST(ClassifyRootedW4, Type2AAndC) {
  Multigraph a = doubled_cycle(6);
  a.add_edges(0, 3);
  const auto ca = find_type2(RootedMultigraph(a, Roots{0}));
  ASSERT_TRUE(ca);
  EXPECT_EQ(ca->variant, Type2Variant::A);
  Multigraph c = doubled_cycle(6);
  c.add_edges(0, 1);
  const auto cc = find_type2(RootedMultigraph(c, Roots{0}));
  ASSERT_TRUE(cc);
  EXPECT_EQ(cc->variant, Type2Variant::C);
  EXPECT_FALSE(verify_type2(RootedMultigraph(c, Roots{0}), *ca));
}

TEST(ClassifyRootedW4, PetersenViolatesRootDegree) {
  try {
    classify_rooted_w4(RootedMultigraph(petersen(), Roots{0}));
    FAIL();
  } catch (const hypothesis_violation& e) {
    EXPECT_EQ(e.condition(), "root degree >= 4");
  }
}

TEST(ClassifyW4, SpecExamples) {
  EXPECT_EQ(classify_w4(petersen()).tag, W4Result::Tag::Cubic);
  EXPECT_FALSE(immerses(RootedMultigraph(petersen()), Pattern(PatternId::wheel(4))));
  const W4Result c = classify_w4(doubled_cycle(6));
  ASSERT_EQ(c.tag, W4Result::Tag::Case5);
  EXPECT_EQ(c.W->size(), 1);
  EXPECT_FALSE(immerses(RootedMultigraph(doubled_cycle(6)), Pattern(PatternId::wheel(4))));
  const W4Result k = classify_w4(complete(5));
  ASSERT_EQ(k.tag, W4Result::Tag::Immerses);
  EXPECT_TRUE(verify_witness(RootedMultigraph(complete(5)), make_pattern(PatternId::wheel(4)), *k.witness));
}

TEST(ClassifyW4, HypothesisViolation) {
  Multigraph g = doubled_cycle(6);
  g.set_mult(0, 1, 1);
  try {
    classify_w4(g);
    FAIL();
  } catch (const hypothesis_violation& e) {
    EXPECT_EQ(e.condition(), "internally 4-edge-connected");
    ASSERT_TRUE(e.certificate());
    EXPECT_EQ(e.certificate()->size, 3);
    EXPECT_EQ(cut_size(g, e.certificate()->side), 3);
  }
}

TEST(ClassifyK4, SpecExamples) {
  for (int len = 3; len <= 6; ++len) {
    EXPECT_EQ(classify_k4(RootedMultigraph(doubled_cycle(std::max(len, 4))), K4Variant::NoRoot).tag,
              K4Result::Tag::DoubledCycle);
    EXPECT_EQ(classify_k4(RootedMultigraph(doubled_cycle(std::max(len, 4)), Roots{0, 2}), K4Variant::TwoRoot).tag,
              K4Result::Tag::DoubledCycle);
    EXPECT_EQ(classify_k4(RootedMultigraph(doubled_cycle(std::max(len, 4)), Roots{1}), K4Variant::OneRoot).tag,
              K4Result::Tag::DoubledCycle);
  }
  EXPECT_EQ(classify_k4(RootedMultigraph(complete(4)), K4Variant::NoRoot).tag, K4Result::Tag::Immerses);
  const K4Result s = classify_k4(RootedMultigraph(chain4(3)), K4Variant::NoRoot);
  ASSERT_EQ(s.tag, K4Result::Tag::Segmentation);
  EXPECT_EQ(s.segmentation->width, 3);
  EXPECT_LE(s.segmentation->head().size(), 2);
  EXPECT_LE(s.segmentation->tail(4).size(), 2);
  EXPECT_FALSE(immerses(RootedMultigraph(chain4(3)), Pattern(PatternId::k4())));
  EXPECT_THROW(classify_k4(RootedMultigraph(complete(4), Roots{0}), K4Variant::NoRoot), hypothesis_violation);
}

TEST(ClassifyK4, AgreesWithOracle) {
  std::mt19937 rng(64);
  for (K4Variant v : {K4Variant::NoRoot, K4Variant::OneRoot, K4Variant::TwoRoot}) {
    oracle::SplitSequence o(make_pattern(k4_pattern(v)));
    int checked = 0;
    for (int t = 0; t < 20000 && checked < 200; ++t) {
      const int n = 4 + rng() % 2;
      Roots r;
      for (int i = 0; i < root_count(v); ++i) r.push_back(i);
      const RootedMultigraph g(testing_graphs::random_multigraph(n, 3, rng()), r);
      if (k4_hypotheses(g, v)) continue;
      ++checked;
      const K4Result res = classify_k4(g, v);
      ASSERT_EQ(res.tag == K4Result::Tag::Immerses, o.immerses(g)) << variant_name(v) << "\n" << to_text(g);
      if (res.segmentation) {
        EXPECT_TRUE(verify_segmentation(g.graph, *res.segmentation));
      }
    }
    EXPECT_GT(checked, 150);
  }
}

TEST(ClassifyRootedW4, AgreesWithOracleWhereDecided) {
  std::mt19937 rng(65);
  oracle::SplitSequence o(make_pattern(PatternId::wheel(4, 1)));
  int checked = 0, undecided = 0;
  for (int t = 0; t < 50000 && checked < 200; ++t) {
    const RootedMultigraph g(testing_graphs::random_multigraph(5 + rng() % 2, 2, rng()), Roots{0});
    if (rooted_w4_hypotheses(g)) continue;
    ++checked;
    try {
      const RootedW4Result r = classify_rooted_w4(g);
      ASSERT_EQ(r.tag == RootedW4Result::Tag::Immerses, o.immerses(g)) << to_text(g);
      if (r.type2) {
        EXPECT_TRUE(verify_type2(g, *r.type2));
      }
    } catch (const theorem_violation&) {
      ++undecided;
      EXPECT_FALSE(o.immerses(g));
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Json, ResultsSerialize) {
  const RootedMultigraph g(chain4(4), Roots{0, 3});
  const json j = to_json(classify_dm(g, 4));
  EXPECT_EQ(j["tag"], "TypeA");
  EXPECT_EQ(j["segmentation"]["width"], 4);
  const json w = to_json(classify_w4(doubled_cycle(6)));
  EXPECT_EQ(w["tag"], "Case5");
  EXPECT_EQ(to_json(HypothesisFailure{"n >= 5", CutCertificate{VertexSet{1}, 2}})["certificate"]["size"], 2);
}
