#pragma once

// Sporadic obstruction catalogs, keyed by canonical form.

#include <algorithm>
#include <fstream>
#include <optional>
#include <tuple>
#include <string>
#include <unordered_map>
#include <vector>

#include "immersion/canonical.hpp"
#include "json.hpp"

namespace imm {

enum class CatalogTag { RootedType3, RootedType4, W4Sporadic, W4Sausage };

inline const char* tag_name(CatalogTag t) {
  switch (t) {
    case CatalogTag::RootedType3: return "rooted-type-3";
    case CatalogTag::RootedType4: return "rooted-type-4";
    case CatalogTag::W4Sporadic: return "w4-sporadic";
    case CatalogTag::W4Sausage: return "w4-sausage";
  }
  return "?";
}

inline CatalogTag parse_tag(const std::string& s) {
  if (s == "rooted-type-3") return CatalogTag::RootedType3;
  if (s == "rooted-type-4") return CatalogTag::RootedType4;
  if (s == "w4-sporadic") return CatalogTag::W4Sporadic;
  if (s == "w4-sausage") return CatalogTag::W4Sausage;
  throw std::invalid_argument("unknown catalog tag '" + s + "'");
}

/// One sausage-reduced base graph. For w4-sausage entries every maximal chain
/// of sausages of the matched graph must have order at least `min_chain`.
struct CatalogEntry {
  CanonicalForm form;
  CatalogTag tag = CatalogTag::RootedType4;
  int n = 0;
  std::vector<int> degrees;  // non-increasing
  int min_chain = 0;
};

class ObstructionCatalog {
 public:
  ObstructionCatalog() = default;
  explicit ObstructionCatalog(std::vector<CatalogEntry> entries, nlohmann::json provenance = {})
      : entries_(std::move(entries)), provenance_(std::move(provenance)) {
    std::sort(entries_.begin(), entries_.end(), [](const CatalogEntry& a, const CatalogEntry& b) {
      return std::tie(a.n, a.form) < std::tie(b.n, b.form);
    });
    for (std::size_t i = 0; i < entries_.size(); ++i) index_[entries_[i].form] = i;
  }

  const std::vector<CatalogEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  const nlohmann::json& provenance() const { return provenance_; }

  /// Position of the entry with this form, if any.
  std::optional<std::size_t> find(const CanonicalForm& f) const {
    auto it = index_.find(f);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  nlohmann::json to_json() const {
    nlohmann::json list = nlohmann::json::array();
    for (const auto& e : entries_) {
      nlohmann::json j = {{"canonical", e.form.hex()}, {"tag", tag_name(e.tag)}, {"degrees", e.degrees}, {"n", e.n}};
      if (e.tag == CatalogTag::W4Sausage) j["min_chain"] = e.min_chain;
      list.push_back(j);
    }
    return {{"provenance", provenance_}, {"entries", list}};
  }

  static ObstructionCatalog from_json(const nlohmann::json& j) {
    std::vector<CatalogEntry> es;
    const nlohmann::json& list = j.is_array() ? j : j.at("entries");
    for (const auto& x : list) {
      CatalogEntry e;
      e.form = CanonicalForm::from_hex(x.at("canonical").get<std::string>());
      e.tag = parse_tag(x.at("tag").get<std::string>());
      e.n = x.at("n").get<int>();
      e.degrees = x.at("degrees").get<std::vector<int>>();
      e.min_chain = x.value("min_chain", 0);
      es.push_back(std::move(e));
    }
    return ObstructionCatalog(std::move(es), j.is_object() ? j.value("provenance", nlohmann::json{}) : nlohmann::json{});
  }

  static ObstructionCatalog load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open catalog " + path);
    return from_json(nlohmann::json::parse(in));
  }

  void save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write catalog " + path);
    out << to_json().dump(2) << '\n';
  }

 private:
  std::vector<CatalogEntry> entries_;
  nlohmann::json provenance_;
  std::unordered_map<CanonicalForm, std::size_t, CanonicalFormHash> index_;
};

inline std::vector<int> degree_sequence(const Multigraph& g) {
  std::vector<int> d;
  for (int v = 0; v < g.order(); ++v) d.push_back(g.degree(v));
  std::sort(d.rbegin(), d.rend());
  return d;
}

}  // namespace imm
