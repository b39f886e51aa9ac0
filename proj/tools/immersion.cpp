// immersion: command-line front end.
//
// Data goes to stdout as JSON (one document per input graph, one per line);
// diagnostics go to stderr. Exit status: 0 computed, 1 hypothesis violation
// or counterexample, 2 usage or input error.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "immersion/verifier.hpp"

#ifndef IMM_DATA_DIR
#define IMM_DATA_DIR "data"
#endif

using namespace imm;

namespace {

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Input {
  std::string path = "-";
  std::string format = "text";
  std::optional<std::string> roots;  // comma-separated vertex ids
};

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

std::vector<RootedMultigraph> read_input(const Input& in) {
  std::ifstream file;
  std::istream* is = &std::cin;
  if (in.path != "-") {
    file.open(in.path);
    if (!file) throw std::runtime_error("cannot open " + in.path);
    is = &file;
  }
  std::vector<RootedMultigraph> gs;
  if (in.format == "text") {
    gs = read_text(*is);
  } else if (in.format == "graph6") {
    for (Multigraph& g : read_graph6(*is)) gs.emplace_back(std::move(g));
  } else {
    json j;
    try {
      j = json::parse(*is);
    } catch (const json::exception& e) {
      throw parse_error(0, e.what());
    }
    if (j.is_array()) {
      for (const json& x : j) gs.push_back(graph_from_json(x));
    } else {
      gs.push_back(graph_from_json(j));
    }
  }
  if (in.roots) {
    std::vector<int> ids;
    std::stringstream ss(*in.roots);
    for (std::string tok; std::getline(ss, tok, ',');) {
      if (tok.empty()) continue;
      try {
        std::size_t used = 0;
        ids.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw std::invalid_argument("bad --roots entry '" + tok + "'");
      }
    }
    for (RootedMultigraph& g : gs) {
      Roots r;
      for (int x : ids) {
        if (x < 0 || x >= g.order() || r.contains(x)) throw contract_violation("bad --roots for a graph of order " + std::to_string(g.order()));
        r.push_back(x);
      }
      g = RootedMultigraph(g.graph, r);
    }
  }
  return gs;
}

void add_input(CLI::App* cmd, Input& in) {
  cmd->add_option("input", in.path, "graph file, '-' for stdin")->capture_default_str();
  cmd->add_option("--input-format", in.format, "text, graph6 or json")
      ->check(CLI::IsMember({"text", "graph6", "json"}))
      ->capture_default_str();
  cmd->add_option("--roots", in.roots, "comma-separated root vertices, replacing those in the input");
}

void emit(const json& j) { std::cout << j.dump() << '\n'; }

json violation_json(const hypothesis_violation& e) { return {{"hypothesis_violation", to_json(e.failure())}}; }

PatternId parse_pattern(const std::string& raw, int host_roots) {
  const std::string s = lower(raw);
  if (s == "k4") return PatternId::k4(host_roots);
  if (s == "w4") return PatternId::wheel(4, host_roots);
  if (s.rfind("dm:", 0) == 0) {
    const Theorem t = Theorem::parse(s);
    return PatternId::dm(t.m);
  }
  throw std::invalid_argument("unknown pattern '" + raw + "' (k4, w4, dm:<m>)");
}

// immerse ------------------------------------------------------------------

int run_immerse(const Input& in, const std::string& pattern) {
  for (const RootedMultigraph& g : read_input(in)) {
    const PatternId id = parse_pattern(pattern, std::min(g.roots.size(), 2));
    const Pattern p(id);
    if (g.roots.size() < p.graph().roots.size()) throw contract_violation("pattern needs " + std::to_string(p.graph().roots.size()) + " host roots");
    json j = {{"pattern", lower(pattern)}, {"pattern_roots", p.graph().roots.size()}};
    if (auto w = immerses(g, p)) {
      j["immerses"] = true;
      j["witness"] = to_json(*w);
      j["witness_verified"] = verify_witness(g, p.graph(), *w);
    } else {
      j["immerses"] = false;
    }
    emit(j);
  }
  return kOk;
}

// classify -----------------------------------------------------------------

int run_classify(const Input& in, const std::string& kind_raw, const std::string& catalog_path) {
  const std::string kind = lower(kind_raw);
  std::optional<ObstructionCatalog> cat;
  auto catalog = [&]() -> const ObstructionCatalog* {
    if (!cat) cat = ObstructionCatalog::load(catalog_path);
    return &*cat;
  };
  int status = kOk;
  for (const RootedMultigraph& g : read_input(in)) {
    json j;
    try {
      if (kind.rfind("dm:", 0) == 0) {
        j = to_json(classify_dm(g, Theorem::parse(kind).m));
      } else if (kind == "rooted-w4") {
        j = to_json(classify_rooted_w4(g, catalog()));
      } else if (kind == "w4") {
        if (g.roots.size() != 0) throw contract_violation("w4 takes an unrooted graph");
        j = to_json(classify_w4(g.graph, catalog()));
      } else if (kind == "k4") {
        const K4Variant v = TheoremContext::k4_variant(g);
        j = to_json(classify_k4(g, v));
        j["variant"] = variant_name(v);
      } else {
        throw std::invalid_argument("unknown classifier '" + kind_raw + "' (dm:<m>, rooted-w4, w4, k4)");
      }
    } catch (const hypothesis_violation& e) {
      j = violation_json(e);
      status = kViolation;
    } catch (const theorem_violation& e) {
      j = {{"theorem_violation", e.what()}};
      status = kViolation;
    }
    emit(j);
  }
  return status;
}

// reduce / sausage-reduce / treewidth --------------------------------------

int run_reduce(const Input& in) {
  for (const RootedMultigraph& g : read_input(in)) {
    const ReductionTrace t = full_reduction(g.graph);
    json steps = json::array(), comps = json::array();
    for (const ReductionStep& s : t.steps)
      steps.push_back({{"rule", rule_name(s.rule)}, {"component", s.component}, {"cut", to_json(s.cut)}});
    for (const Multigraph& c : t.components) comps.push_back(to_json(RootedMultigraph(c)));
    emit({{"steps", steps}, {"components", comps}});
  }
  return kOk;
}

int run_sausage_reduce(const Input& in) {
  for (const RootedMultigraph& g : read_input(in)) {
    json chains = json::array();
    for (const SausageChain& c : find_sausages(g)) chains.push_back(c.path);
    emit({{"chains", chains}, {"reduced", to_json(sausage_reduce(g))}});
  }
  return kOk;
}

int run_treewidth(const Input& in) {
  for (const RootedMultigraph& g : read_input(in)) {
    const TreewidthResult r = treewidth_exact(g.graph);
    json bags = json::array();
    for (VertexSet b : r.decomposition.bags) bags.push_back(b.members());
    emit({{"treewidth", r.width},
          {"elimination_order", r.elimination_order},
          {"decomposition", {{"bags", bags}, {"edges", r.decomposition.edges}}}});
  }
  return kOk;
}

// verify / catalog ---------------------------------------------------------

struct VerifyArgs {
  std::string theorem;
  std::vector<int> n;
  int cap = 0;
  int workers = 1;
  std::string catalog;
  std::string checkpoint;
  std::string graphs;
  bool no_timing = false;
  bool progress = false;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions o;
  o.theorem = Theorem::parse(a.theorem);
  o.n = a.n;
  o.cap = a.cap;
  o.workers = a.workers;
  o.graphs_dir = a.graphs;
  o.checkpoint = a.checkpoint;
  ObstructionCatalog cat;
  const TheoremKind k = o.theorem.kind;
  if (k == TheoremKind::RootedW4 || k == TheoremKind::W4 || k == TheoremKind::RootedW4Lemma) {
    cat = ObstructionCatalog::load(a.catalog);
    o.catalog = &cat;
  }
  if (a.progress) {
    o.progress = [](std::size_t done, std::size_t total) {
      if (done % 500 == 0 || done == total) std::cerr << "verify: " << done << "/" << total << " graphs\n";
    };
  }
  const VerificationReport r = verify_theorem(o);
  if (r.resumed) std::cerr << "verify: resumed from " << a.checkpoint << '\n';
  emit(r.to_json(!a.no_timing));
  if (!r.ok()) std::cerr << "verify: " << r.tally.counterexamples.size() << " counterexamples\n";
  return r.ok() ? kOk : kViolation;
}

int run_catalog(int n_max, int cap, const std::string& graphs, const std::string& out) {
  CatalogOptions o;
  o.n_max = n_max;
  o.cap = cap;
  o.graphs_dir = graphs;
  const ObstructionCatalog c = generate_catalog(o);
  if (out.empty()) {
    emit(c.to_json());
  } else {
    c.save(out);
    std::cerr << "catalog: " << c.size() << " entries written to " << out << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graph immersion decisions and structure-theorem verification"};
  app.require_subcommand(1);
  std::string format = "json";
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"json"}))->capture_default_str();

  const std::string data = IMM_DATA_DIR;
  std::string catalog_path = data + "/catalog.json";

  Input in;
  std::string pattern;
  auto* immerse = app.add_subcommand("immerse", "decide whether a pattern immerses in each input graph");
  add_input(immerse, in);
  immerse->add_option("--pattern", pattern, "k4, w4 or dm:<m>")->required();

  std::string kind;
  auto* classify = app.add_subcommand("classify", "run a structure classifier");
  classify->add_option("kind", kind, "dm:<m>, rooted-w4, w4 or k4")->required();
  add_input(classify, in);
  classify->add_option("--catalog", catalog_path, "obstruction catalog")->capture_default_str();

  auto* reduce = app.add_subcommand("reduce", "apply the cut reductions until none applies");
  add_input(reduce, in);
  auto* sausage = app.add_subcommand("sausage-reduce", "shorten every chain of sausages to order 2");
  add_input(sausage, in);
  auto* tw = app.add_subcommand("treewidth", "exact treewidth with a decomposition");
  add_input(tw, in);

  VerifyArgs va;
  va.catalog = catalog_path;
  va.graphs = data + "/graphs";
  auto* verify = app.add_subcommand("verify", "check a theorem over all qualifying graphs");
  verify->add_option("--theorem", va.theorem,
                     "dm:<m>, rooted-w4, w4, k4-two-root, k4-le-one-root, mader, treewidth-corollary, rooted-w4-lemma")
      ->required();
  verify->add_option("--n", va.n, "vertex counts (repeat or comma-separate)")->delimiter(',')->required();
  verify->add_option("--cap", va.cap, "multiplicity cap (default depends on the theorem)");
  verify->add_option("--workers", va.workers, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  verify->add_option("--catalog", va.catalog, "obstruction catalog")->capture_default_str();
  verify->add_option("--checkpoint", va.checkpoint, "checkpoint file for resuming");
  verify->add_option("--graphs", va.graphs, "directory holding conn<n>.g6 files")->capture_default_str();
  verify->add_flag("--no-timing", va.no_timing, "report elapsed_ms as 0");
  verify->add_flag("--progress", va.progress, "print progress to stderr");

  int n_max = 7, cat_cap = 8;
  std::string cat_graphs = data + "/graphs", cat_out;
  auto* catalog = app.add_subcommand("catalog", "regenerate the obstruction catalog");
  catalog->add_option("--n", n_max, "largest order searched")->check(CLI::Range(5, 8))->capture_default_str();
  catalog->add_option("--cap", cat_cap, "multiplicity cap")->capture_default_str();
  catalog->add_option("--graphs", cat_graphs, "directory holding conn<n>.g6 files")->capture_default_str();
  catalog->add_option("--out", cat_out, "output file (stdout if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    std::cerr << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*immerse) return run_immerse(in, pattern);
    if (*classify) return run_classify(in, kind, catalog_path);
    if (*reduce) return run_reduce(in);
    if (*sausage) return run_sausage_reduce(in);
    if (*tw) return run_treewidth(in);
    if (*verify) return run_verify(va);
    if (*catalog) return run_catalog(n_max, cat_cap, cat_graphs, cat_out);
  } catch (const parse_error& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
