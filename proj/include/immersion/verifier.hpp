#pragma once

// Exhaustive verification runs: theorem sweeps, the four-step computation for
// rooted W4 and catalog generation.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "immersion/catalog.hpp"
#include "immersion/enumeration.hpp"
#include "immersion/graph_io.hpp"
#include "immersion/structure.hpp"
#include "immersion/treewidth.hpp"

namespace imm {

// ---------------------------------------------------------------------------
// Inputs
// ---------------------------------------------------------------------------

inline std::vector<Multigraph> load_simple_graphs(const std::string& path) { return read_graph6_file(path); }

inline std::string graph_file(const std::string& dir, int n) {
  return (std::filesystem::path(dir) / ("conn" + std::to_string(n) + ".g6")).string();
}

// ---------------------------------------------------------------------------
// Theorems
// ---------------------------------------------------------------------------

enum class TheoremKind { Dm, RootedW4, W4, K4TwoRoot, K4LeOneRoot, Mader, TreewidthCorollary, RootedW4Lemma };

struct Theorem {
  TheoremKind kind = TheoremKind::RootedW4;
  int m = 0;  // for Dm

  std::string name() const {
    switch (kind) {
      case TheoremKind::Dm: return "dm:" + std::to_string(m);
      case TheoremKind::RootedW4: return "rooted-w4";
      case TheoremKind::W4: return "w4";
      case TheoremKind::K4TwoRoot: return "k4-two-root";
      case TheoremKind::K4LeOneRoot: return "k4-le-one-root";
      case TheoremKind::Mader: return "mader";
      case TheoremKind::TreewidthCorollary: return "treewidth-corollary";
      case TheoremKind::RootedW4Lemma: return "rooted-w4-lemma";
    }
    return "?";
  }

  static Theorem parse(const std::string& s) {
    if (s.rfind("dm:", 0) == 0) {
      std::size_t used = 0;
      int m = 0;
      try {
        m = std::stoi(s.substr(3), &used);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad theorem '" + s + "'");
      }
      if (used != s.size() - 3 || m < 2) throw std::invalid_argument("bad theorem '" + s + "'");
      return {TheoremKind::Dm, m};
    }
    static const std::map<std::string, TheoremKind> names = {
        {"rooted-w4", TheoremKind::RootedW4},       {"w4", TheoremKind::W4},
        {"k4-two-root", TheoremKind::K4TwoRoot},    {"k4-le-one-root", TheoremKind::K4LeOneRoot},
        {"mader", TheoremKind::Mader},              {"treewidth-corollary", TheoremKind::TreewidthCorollary},
        {"rooted-w4-lemma", TheoremKind::RootedW4Lemma}};
    auto it = names.find(s);
    if (it == names.end()) throw std::invalid_argument("unknown theorem '" + s + "'");
    return {it->second, 0};
  }

  /// Default multiplicity cap.
  int default_cap() const {
    switch (kind) {
      case TheoremKind::Dm: return m + 3;
      case TheoremKind::K4TwoRoot:
      case TheoremKind::K4LeOneRoot: return 6;
      case TheoremKind::Mader: return 3;
      default: return 8;
    }
  }

  int min_order() const {
    switch (kind) {
      case TheoremKind::Dm:
      case TheoremKind::K4TwoRoot:
      case TheoremKind::K4LeOneRoot: return 4;
      case TheoremKind::Mader: return 2;
      default: return 5;
    }
  }
};

// ---------------------------------------------------------------------------
// The four-step computation for rooted W4
// ---------------------------------------------------------------------------

/// Step 2: the minimal multiplicity assignments over E(simple) meeting the
/// strict conditions (d(root) >= 4, 3-edge-connected, internally
/// 4-edge-connected, d(Y) >= 5 on internal cuts with a root-free side of at
/// least three vertices) that do not immerse rooted W4.
inline std::vector<RootedMultigraph> repair(const RootedMultigraph& simple, int cap = 8) {
  const Support s(simple, cap, demands::rooted_w4_strict());
  const Pattern pat(PatternId::wheel(4, 1));
  std::vector<RootedMultigraph> out;
  for (const Point& p : minimal_feasible_points(s)) {
    RootedMultigraph g = s.realize(p);
    if (!immerses(g, pat)) out.push_back(std::move(g));
  }
  return out;
}

/// Step 3: every assignment above some member of `minimal`, at most cap per
/// pair, meeting the same conditions and not immersing rooted W4; one per
/// isomorphism class.
inline std::vector<RootedMultigraph> obstruction(const RootedMultigraph& simple,
                                                 const std::vector<RootedMultigraph>& minimal, int cap = 8) {
  const Support s(simple, cap, demands::rooted_w4_strict());
  std::vector<Point> starts;
  for (const RootedMultigraph& g : minimal) starts.push_back(s.point_of(g.graph));
  std::vector<RootedMultigraph> out;
  for (const Point& p : sweep_from(s, Pattern(PatternId::wheel(4, 1)), starts, false).negatives) {
    out.push_back(s.realize(p));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Reports
// ---------------------------------------------------------------------------

struct Counterexample {
  RootedMultigraph graph;
  std::string recognizer_tag;
  bool oracle_verdict = false;
  std::optional<ImmersionWitness> witness;
  std::string detail;
};

inline json to_json(const Counterexample& c) {
  json j = {{"graph", to_json(c.graph)},
            {"roots", c.graph.roots.to_vector()},
            {"recognizer_tag", c.recognizer_tag},
            {"oracle_verdict", c.oracle_verdict}};
  if (c.witness) j["witness"] = to_json(*c.witness);
  if (!c.detail.empty()) j["detail"] = c.detail;
  return j;
}

inline Counterexample counterexample_from_json(const json& j) {
  Counterexample c;
  c.graph = graph_from_json(j.at("graph"));
  c.recognizer_tag = j.at("recognizer_tag").get<std::string>();
  c.oracle_verdict = j.at("oracle_verdict").get<bool>();
  if (j.contains("witness")) {
    ImmersionWitness w;
    w.terminal_map = j["witness"].at("terminal_map").get<std::vector<int>>();
    w.routes = j["witness"].at("routes").get<std::vector<std::vector<int>>>();
    c.witness = w;
  }
  c.detail = j.value("detail", "");
  return c;
}

/// Tallies of one shard or of a whole run.
struct Tally {
  std::uint64_t examined = 0;
  std::uint64_t obstructions = 0;
  std::map<std::string, std::uint64_t> counters;
  std::vector<Counterexample> counterexamples;

  void merge(const Tally& o) {
    examined += o.examined;
    obstructions += o.obstructions;
    for (const auto& [k, v] : o.counters) counters[k] += v;
    counterexamples.insert(counterexamples.end(), o.counterexamples.begin(), o.counterexamples.end());
  }

  json to_json() const {
    json cx = json::array();
    for (const auto& c : counterexamples) cx.push_back(imm::to_json(c));
    return {{"examined", examined}, {"obstructions", obstructions}, {"counters", counters}, {"counterexamples", cx}};
  }

  static Tally from_json(const json& j) {
    Tally t;
    t.examined = j.at("examined").get<std::uint64_t>();
    t.obstructions = j.at("obstructions").get<std::uint64_t>();
    t.counters = j.at("counters").get<std::map<std::string, std::uint64_t>>();
    for (const auto& c : j.at("counterexamples")) t.counterexamples.push_back(counterexample_from_json(c));
    return t;
  }
};

struct VerificationReport {
  std::string theorem;
  std::vector<int> n;
  int cap = 0;
  Tally tally;
  std::int64_t elapsed_ms = 0;
  int workers = 1;
  bool resumed = false;

  bool ok() const { return tally.counterexamples.empty(); }

  json to_json(bool timing = true) const {
    json cx = json::array();
    for (const auto& c : tally.counterexamples) cx.push_back(imm::to_json(c));
    json j = {{"theorem", theorem},
              {"n", n},
              {"cap", cap},
              {"examined", tally.examined},
              {"obstructions", tally.obstructions},
              {"counters", tally.counters},
              {"counterexamples", cx},
              {"elapsed_ms", timing ? elapsed_ms : 0},
              {"workers", workers}};
    return j;
  }
};

// ---------------------------------------------------------------------------
// Per-graph evaluation
// ---------------------------------------------------------------------------

/// The recognizer's answer for one graph.
struct Verdict {
  std::string tag;
  bool says_immerses = false;
  bool violated = false;  // the classifier reported theorem_violation
  std::string detail;
};

class TheoremContext {
 public:
  TheoremContext(Theorem t, int cap, const ObstructionCatalog* catalog)
      : theorem_(t), cap_(cap), catalog_(catalog) {}

  const Theorem& theorem() const { return theorem_; }
  int cap() const { return cap_; }
  const ObstructionCatalog* catalog() const { return catalog_; }

  static K4Variant k4_variant(const RootedMultigraph& g) {
    return g.roots.size() == 2 ? K4Variant::TwoRoot : g.roots.size() == 1 ? K4Variant::OneRoot : K4Variant::NoRoot;
  }

  Pattern pattern(int roots) const {
    switch (theorem_.kind) {
      case TheoremKind::Dm: return Pattern(PatternId::dm(theorem_.m));
      case TheoremKind::RootedW4:
      case TheoremKind::RootedW4Lemma: return Pattern(PatternId::wheel(4, 1));
      case TheoremKind::W4:
      case TheoremKind::TreewidthCorollary: return Pattern(PatternId::wheel(4));
      case TheoremKind::K4TwoRoot: return Pattern(PatternId::dm(3));
      case TheoremKind::K4LeOneRoot: return Pattern(PatternId::k4(roots));
      case TheoremKind::Mader: break;
    }
    throw contract_violation("theorem has no pattern");
  }

  CutDemand demand() const {
    switch (theorem_.kind) {
      case TheoremKind::Dm: return demands::dm(theorem_.m);
      case TheoremKind::RootedW4: return demands::rooted_w4();
      case TheoremKind::RootedW4Lemma: return demands::rooted_w4_strict();
      case TheoremKind::W4:
      case TheoremKind::TreewidthCorollary: return demands::w4();
      case TheoremKind::K4TwoRoot:
      case TheoremKind::K4LeOneRoot: return demands::k_edge_connected(3);
      case TheoremKind::Mader: return demands::k_edge_connected(2);
    }
    throw contract_violation("unknown theorem");
  }

  std::vector<int> root_counts() const {
    switch (theorem_.kind) {
      case TheoremKind::Dm:
      case TheoremKind::K4TwoRoot: return {2};
      case TheoremKind::RootedW4:
      case TheoremKind::RootedW4Lemma: return {1};
      case TheoremKind::K4LeOneRoot: return {0, 1};
      default: return {0};
    }
  }

  Verdict classify(const RootedMultigraph& g) const {
    Verdict v;
    try {
      switch (theorem_.kind) {
        case TheoremKind::Dm: {
          const DmResult r = classify_dm(g, theorem_.m);
          v.tag = tag_name(r.tag);
          v.says_immerses = r.tag == DmResult::Tag::Immerses;
          break;
        }
        case TheoremKind::RootedW4:
        case TheoremKind::RootedW4Lemma: {
          const RootedW4Result r = classify_rooted_w4(g, catalog_);
          v.tag = tag_name(r.tag);
          v.says_immerses = r.tag == RootedW4Result::Tag::Immerses;
          break;
        }
        case TheoremKind::W4:
        case TheoremKind::TreewidthCorollary: {
          const W4Result r = classify_w4(g.graph, catalog_);
          v.tag = tag_name(r.tag);
          v.says_immerses = r.tag == W4Result::Tag::Immerses;
          break;
        }
        case TheoremKind::K4TwoRoot:
        case TheoremKind::K4LeOneRoot: {
          const K4Result r = classify_k4(g, k4_variant(g));
          v.tag = tag_name(r.tag);
          v.says_immerses = r.tag == K4Result::Tag::Immerses;
          break;
        }
        case TheoremKind::Mader: throw contract_violation("mader has no classifier");
      }
    } catch (const theorem_violation& e) {
      v.tag = "none";
      v.violated = true;
      v.detail = e.what();
    } catch (const hypothesis_violation& e) {
      v.tag = "hypothesis-violation";
      v.violated = true;
      v.detail = e.what();
    }
    return v;
  }

  /// The certificate side alone: says_immerses is set when no certificate
  /// applies.
  Verdict recognize(const RootedMultigraph& g) const {
    Verdict v;
    auto set = [&v](const auto& r) {
      v.says_immerses = !r;
      v.tag = r ? tag_name(r->tag) : "Immerses";
    };
    try {
      switch (theorem_.kind) {
        case TheoremKind::Dm: set(recognize_dm(g, theorem_.m)); break;
        case TheoremKind::RootedW4:
        case TheoremKind::RootedW4Lemma: set(recognize_rooted_w4(g, catalog_)); break;
        case TheoremKind::W4:
        case TheoremKind::TreewidthCorollary: set(recognize_w4(g.graph, catalog_)); break;
        case TheoremKind::K4TwoRoot:
        case TheoremKind::K4LeOneRoot: set(recognize_k4(g, k4_variant(g))); break;
        case TheoremKind::Mader: throw contract_violation("mader has no classifier");
      }
    } catch (const hypothesis_violation& e) {
      v.tag = "hypothesis-violation";
      v.violated = true;
      v.detail = e.what();
    }
    return v;
  }

  /// Compares the recognizer with a known oracle verdict; adds a
  /// counterexample to t on disagreement. A graph with no certificate and no
  /// immersion is exactly where the classifier raises theorem_violation.
  void check(const RootedMultigraph& g, bool oracle, Tally& t, const std::string& context = {}) const {
    ++t.examined;
    Verdict v = recognize(g);
    if (!v.violated && v.says_immerses && !oracle) {
      v.tag = "none";
      v.violated = true;
    }
    if (!v.violated && v.says_immerses == oracle) return;
    Counterexample c;
    c.graph = g;
    c.recognizer_tag = v.tag;
    c.oracle_verdict = oracle;
    if (oracle) c.witness = immerses(g, pattern(g.roots.size()));
    c.detail = context.empty() ? v.detail : context + (v.detail.empty() ? "" : ": " + v.detail);
    t.counterexamples.push_back(std::move(c));
  }

 private:
  Theorem theorem_;
  int cap_;
  const ObstructionCatalog* catalog_;
};

// ---------------------------------------------------------------------------
// Shards
// ---------------------------------------------------------------------------

namespace detail {

/// Every feasible point of a support up to isomorphism.
inline std::vector<Point> all_feasible_points(const Support& s) {
  std::vector<Point> out;
  std::unordered_set<std::string> seen;
  std::deque<Point> queue;
  for (const Point& p : minimal_feasible_points(s)) {
    if (seen.insert(s.key(p)).second) queue.push_back(p);
  }
  while (!queue.empty()) {
    Point p = std::move(queue.front());
    queue.pop_front();
    for (int e = 0; e < s.edge_count(); ++e) {
      if (p[e] >= s.cap()) continue;
      Point q = p;
      ++q[e];
      if (seen.insert(s.key(q)).second) queue.push_back(q);
    }
    out.push_back(std::move(p));
  }
  return out;
}

inline void mader_point(const Multigraph& g, Tally& t) {
  for (int v = 0; v < g.order(); ++v) {
    if (g.degree(v) < 4) continue;
    ++t.examined;
    Counterexample c;
    c.graph = RootedMultigraph(g, Roots{v});
    c.recognizer_tag = "mader-split";
    try {
      const SplitPair p = mader_split_pair(g, v);
      const Multigraph h = apply_split(g, v, p);
      for (int a = 0; a < g.order(); ++a)
        for (int b = a + 1; b < g.order(); ++b) {
          if (a == v || b == v) continue;
          if (min_cut(h, a, b).size != min_cut(g, a, b).size) {
            c.detail = "split (" + std::to_string(p.a) + ", " + std::to_string(p.b) + ") changes lambda(" +
                       std::to_string(a) + ", " + std::to_string(b) + ")";
            t.counterexamples.push_back(c);
            return;
          }
        }
    } catch (const theorem_violation& e) {
      c.detail = e.what();
      t.counterexamples.push_back(c);
    }
  }
}

}  // namespace detail

/// Runs one underlying simple graph through a theorem.
inline Tally run_shard(const TheoremContext& ctx, const Multigraph& simple) {
  Tally t;
  const TheoremKind kind = ctx.theorem().kind;
  if (simple.order() < ctx.theorem().min_order()) return t;

  if (kind == TheoremKind::Mader) {
    const Support s(RootedMultigraph(simple), ctx.cap(), ctx.demand());
    for (const Point& p : detail::all_feasible_points(s)) detail::mader_point(s.realize(p).graph, t);
    return t;
  }

  if (kind == TheoremKind::RootedW4Lemma) {
    const Pattern pat = ctx.pattern(1);
    const auto orbits = root_orbits(simple, 1);
    t.counters["rooted"] += orbits.size();
    for (const RootedMultigraph& r : orbits) {
      if (immerses(r, pat)) continue;
      ++t.counters["rooted_no_w4"];
      const auto minimal = repair(r, ctx.cap());
      t.counters["repaired"] += minimal.size();
      const auto found = obstruction(r, minimal, ctx.cap());
      t.obstructions += found.size();
      for (const RootedMultigraph& g : found) {
        ++t.examined;
        Verdict v = ctx.recognize(g);
        if (!v.violated && v.says_immerses) v.tag = "none";
        ++t.counters["obstruction_" + v.tag];
        if (v.violated || v.says_immerses) {
          t.counterexamples.push_back({g, v.tag, false, std::nullopt, "obstruction outside the recognized types"});
        }
      }
    }
    return t;
  }

  for (int roots : ctx.root_counts()) {
    const Pattern pat = ctx.pattern(roots);
    for (const RootedMultigraph& r : root_orbits(simple, roots)) {
      const Support s(r, ctx.cap(), ctx.demand());
      const bool tw_only = kind == TheoremKind::TreewidthCorollary;
      const SweepResult sw = sweep(s, pat, !tw_only);
      t.obstructions += sw.negatives.size();
      t.counters["minimal"] += sw.minimal.size();
      if (tw_only) {
        bool needs_check = false;
        for (const Point& p : sw.negatives) {
          ++t.examined;
          needs_check = needs_check || !is_cubic(s.realize(p).graph);
        }
        if (needs_check) {
          ++t.counters["supports_checked"];
          const TreewidthResult tw = treewidth_exact(simple);
          if (tw.width > 3) {
            for (const Point& p : sw.negatives) {
              const RootedMultigraph g = s.realize(p);
              if (is_cubic(g.graph)) continue;
              t.counterexamples.push_back({g, "treewidth-" + std::to_string(tw.width), false, std::nullopt,
                                           "non-cubic, no W4 immersion, treewidth above 3"});
              break;
            }
          }
        }
        continue;
      }
      for (const Point& p : sw.negatives) ctx.check(s.realize(p), false, t);
      for (const Point& p : sw.frontier) ctx.check(s.realize(p), true, t);
    }
  }
  return t;
}

// ---------------------------------------------------------------------------
// Families whose tags are not inherited by smaller feasible points
// ---------------------------------------------------------------------------

namespace detail {

inline bool feasible_for(const TheoremContext& ctx, const RootedMultigraph& g) {
  if (g.graph.max_mult() > ctx.cap() || !g.graph.is_connected()) return false;
  if (g.order() < ctx.theorem().min_order()) return false;
  const Support s(RootedMultigraph(g.graph.underlying_simple(), g.roots), ctx.cap(), ctx.demand());
  return s.feasible(s.point_of(g.graph));
}

inline void check_family(const TheoremContext& ctx, const std::vector<RootedMultigraph>& family, const char* name,
                         Tally& t) {
  for (const RootedMultigraph& g : family) {
    if (!feasible_for(ctx, g)) continue;
    ++t.counters[std::string("family_") + name];
    const Pattern pat = ctx.pattern(g.roots.size());
    ctx.check(g, immerses(g, pat).has_value(), t, std::string("family ") + name);
  }
}

inline std::vector<RootedMultigraph> catalog_expansions(const ObstructionCatalog& cat, bool rooted, int n_max) {
  std::vector<RootedMultigraph> out;
  for (const CatalogEntry& e : cat.entries()) {
    const bool is_rooted = e.tag == CatalogTag::RootedType3 || e.tag == CatalogTag::RootedType4;
    if (is_rooted != rooted) continue;
    auto ex = sausage_expansions(e.form.graph(), n_max);
    out.insert(out.end(), ex.begin(), ex.end());
  }
  return out;
}

}  // namespace detail

/// Graphs carrying a tag that smaller feasible points need not keep: each is
/// enumerated directly and compared with the oracle.
inline Tally run_families(const TheoremContext& ctx, int n_min, int n_max) {
  Tally t;
  const int cap = ctx.cap();
  switch (ctx.theorem().kind) {
    case TheoremKind::Dm:
      detail::check_family(ctx, type_b_family(ctx.theorem().m, n_min, n_max), "type_b", t);
      break;
    case TheoremKind::RootedW4:
      detail::check_family(ctx, type2_family(n_min, n_max, cap), "type2", t);
      if (ctx.catalog()) detail::check_family(ctx, detail::catalog_expansions(*ctx.catalog(), true, n_max), "catalog", t);
      break;
    case TheoremKind::W4:
      detail::check_family(ctx, case5_family(n_min, n_max, cap), "case5", t);
      if (ctx.catalog()) {
        detail::check_family(ctx, detail::catalog_expansions(*ctx.catalog(), false, n_max), "catalog", t);
      }
      break;
    case TheoremKind::K4TwoRoot:
      detail::check_family(ctx, doubled_cycle_family(n_min, n_max, 2), "doubled_cycle", t);
      break;
    case TheoremKind::K4LeOneRoot:
      detail::check_family(ctx, doubled_cycle_family(n_min, n_max, 0), "doubled_cycle", t);
      detail::check_family(ctx, doubled_cycle_family(n_min, n_max, 1), "doubled_cycle", t);
      break;
    default: break;
  }
  return t;
}

// ---------------------------------------------------------------------------
// Driver
// ---------------------------------------------------------------------------

struct VerifyOptions {
  Theorem theorem;
  std::vector<int> n;
  int cap = 0;  // 0 selects the theorem default
  int workers = 1;
  std::string graphs_dir = "data/graphs";
  const ObstructionCatalog* catalog = nullptr;
  std::string checkpoint;  // empty disables checkpointing
  int checkpoint_every = 1000;
  std::function<void(std::size_t done, std::size_t total)> progress;
};

namespace detail {

inline json checkpoint_key(const VerifyOptions& o, int cap) {
  return {{"theorem", o.theorem.name()}, {"n", o.n}, {"cap", cap}};
}

}  // namespace detail

/// Runs every shard, then the family checks. Counterexamples are sorted by
/// order, roots and canonical form.
inline VerificationReport verify_theorem(const VerifyOptions& o) {
  const auto start = std::chrono::steady_clock::now();
  const int cap = o.cap > 0 ? o.cap : o.theorem.default_cap();
  const TheoremContext ctx(o.theorem, cap, o.catalog);

  std::vector<Multigraph> shards;
  for (int n : o.n) {
    auto gs = load_simple_graphs(graph_file(o.graphs_dir, n));
    for (Multigraph& g : gs)
      if (g.order() != n) throw parse_error(0, "graph of order " + std::to_string(g.order()) + " in file for n = " + std::to_string(n));
    shards.insert(shards.end(), gs.begin(), gs.end());
  }

  Tally total;
  std::size_t start_shard = 0;
  VerificationReport report;
  if (!o.checkpoint.empty() && std::filesystem::exists(o.checkpoint)) {
    std::ifstream in(o.checkpoint);
    const json cp = json::parse(in);
    if (cp.at("key") == detail::checkpoint_key(o, cap)) {
      start_shard = cp.at("next_shard").get<std::size_t>();
      total = Tally::from_json(cp.at("tally"));
      report.resumed = true;
    }
  }

  const std::size_t count = shards.size();
  std::vector<std::optional<Tally>> results(count);
  std::atomic<std::size_t> next{start_shard};
  std::mutex mu;
  std::size_t prefix = start_shard;
  std::size_t last_saved = start_shard;
  std::exception_ptr failure;

  auto save_checkpoint = [&](std::size_t upto) {
    const std::string tmp = o.checkpoint + ".tmp";
    {
      std::ofstream out(tmp);
      out << json{{"key", detail::checkpoint_key(o, cap)}, {"next_shard", upto}, {"tally", total.to_json()}}.dump()
          << '\n';
    }
    std::filesystem::rename(tmp, o.checkpoint);
  };

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      Tally t;
      try {
        t = run_shard(ctx, shards[i]);
      } catch (...) {
        std::lock_guard lock(mu);
        if (!failure) failure = std::current_exception();
        next = count;
        return;
      }
      std::lock_guard lock(mu);
      results[i] = std::move(t);
      while (prefix < count && results[prefix]) {
        total.merge(*results[prefix]);
        results[prefix].reset();
        ++prefix;
      }
      if (!o.checkpoint.empty() && prefix - last_saved >= static_cast<std::size_t>(o.checkpoint_every)) {
        save_checkpoint(prefix);
        last_saved = prefix;
      }
      if (o.progress) o.progress(prefix, count);
    }
  };

  const int workers = std::max(1, o.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);
  if (!o.checkpoint.empty()) save_checkpoint(prefix);

  if (!o.n.empty()) {
    const auto [lo, hi] = std::minmax_element(o.n.begin(), o.n.end());
    total.merge(run_families(ctx, std::max(*lo, o.theorem.min_order()), *hi));
  }

  auto key = [](const Counterexample& c) {
    return std::make_tuple(c.graph.order(), c.graph.roots.to_vector(), canonical_form(c.graph, kMaxVertices),
                           c.recognizer_tag, c.detail);
  };
  std::sort(total.counterexamples.begin(), total.counterexamples.end(),
            [&](const Counterexample& a, const Counterexample& b) { return key(a) < key(b); });

  report.theorem = o.theorem.name();
  report.n = o.n;
  report.cap = cap;
  report.tally = std::move(total);
  report.workers = workers;
  report.elapsed_ms =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start).count();
  return report;
}

/// Replays a counterexample: true when recognizer and oracle still disagree.
inline bool replays(const Theorem& th, int cap, const ObstructionCatalog* catalog, const Counterexample& c) {
  const TheoremContext ctx(th, cap, catalog);
  if (th.kind == TheoremKind::Mader) {
    Tally t;
    detail::mader_point(c.graph.graph, t);
    return !t.counterexamples.empty();
  }
  if (th.kind == TheoremKind::TreewidthCorollary) {
    return !immerses(c.graph, ctx.pattern(0)) && !is_cubic(c.graph.graph) && treewidth_exact(c.graph.graph).width > 3;
  }
  const bool oracle = immerses(c.graph, ctx.pattern(c.graph.roots.size())).has_value();
  const Verdict v = ctx.classify(c.graph);
  return oracle == c.oracle_verdict && (v.violated || v.says_immerses != oracle);
}

// ---------------------------------------------------------------------------
// Catalog generation
// ---------------------------------------------------------------------------

struct CatalogOptions {
  int n_min = 5;
  int n_max = 7;
  int cap = 8;
  std::string graphs_dir = "data/graphs";
};

/// Sweeps rooted and unrooted W4 over n_min..n_max and stores the sausage
/// reductions of the non-immersing graphs that the structural recognizers
/// (type 1 / type 2, cubic / case 5) leave over.
inline ObstructionCatalog generate_catalog(const CatalogOptions& o) {
  if (o.n_max > 8) throw too_large("catalog generation supports n <= 8");
  struct Group {
    RootedMultigraph base;
    bool expanded = false;
    int min_chain = kMaxVertices;
  };
  std::map<CanonicalForm, Group> rooted, unrooted;
  const Pattern rw4(PatternId::wheel(4, 1)), w4(PatternId::wheel(4));
  for (int n = o.n_min; n <= o.n_max; ++n) {
    for (const Multigraph& simple : load_simple_graphs(graph_file(o.graphs_dir, n))) {
      for (const RootedMultigraph& r : root_orbits(simple, 1)) {
        const Support s(r, o.cap, demands::rooted_w4());
        for (const Point& p : sweep(s, rw4, false).negatives) {
          const RootedMultigraph g = s.realize(p);
          if (find_type1(g, CutTable(g.graph)) || find_type2(g)) continue;
          const RootedMultigraph red = sausage_reduce(g);
          rooted.try_emplace(canonical_form(red, kMaxVertices), Group{red});
        }
      }
      const Support s(RootedMultigraph(simple), o.cap, demands::w4());
      for (const Point& p : sweep(s, w4, false).negatives) {
        const Multigraph g = s.realize(p).graph;
        if (is_cubic(g) || find_case5(g)) continue;
        const Multigraph red = sausage_reduce(g);
        Group& grp = unrooted.try_emplace(canonical_form(red, kMaxVertices), Group{RootedMultigraph(red)}).first->second;
        if (red.order() != g.order()) grp.expanded = true;
        for (const SausageChain& c : find_sausages(g)) grp.min_chain = std::min(grp.min_chain, c.order());
      }
    }
  }
  std::vector<CatalogEntry> entries;
  for (const auto& [form, grp] : rooted) {
    const CatalogTag tag = find_sausages(grp.base).empty() ? CatalogTag::RootedType4 : CatalogTag::RootedType3;
    entries.push_back({form, tag, grp.base.order(), degree_sequence(grp.base.graph), 0});
  }
  for (const auto& [form, grp] : unrooted) {
    CatalogEntry e{form, CatalogTag::W4Sporadic, grp.base.order(), degree_sequence(grp.base.graph), 0};
    if (grp.expanded) {
      e.tag = CatalogTag::W4Sausage;
      e.min_chain = grp.min_chain == kMaxVertices ? 0 : grp.min_chain;
    }
    entries.push_back(std::move(e));
  }
  json provenance = {{"n_min", o.n_min}, {"n_max", o.n_max}, {"cap", o.cap}, {"rooted_constraints", "rooted-w4"},
                     {"unrooted_constraints", "w4"}};
  return ObstructionCatalog(std::move(entries), provenance);
}

}  // namespace imm
