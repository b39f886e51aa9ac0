#pragma once

// Readers and writers: the block text format, graph6 and JSON.
//
// Text format, one graph per block, blocks separated by blank lines, '#'
// starts a comment:
//
//   n r
//   <r root ids>        (line omitted when r = 0)
//   u v m               (one line per pair with m >= 1)

#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "immersion/immersion.hpp"
#include "immersion/multigraph.hpp"
#include "json.hpp"

namespace imm {

using json = nlohmann::json;

namespace detail {

inline std::vector<long> parse_ints(const std::string& line, int line_no) {
  std::istringstream in(line);
  std::vector<long> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long v = 0;
    try {
      v = std::stol(tok, &used);
    } catch (const std::exception&) {
      throw parse_error(line_no, "expected an integer, got '" + tok + "'");
    }
    if (used != tok.size()) throw parse_error(line_no, "expected an integer, got '" + tok + "'");
    out.push_back(v);
  }
  return out;
}

inline std::string strip_comment(std::string line) {
  if (auto p = line.find('#'); p != std::string::npos) line.erase(p);
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) line.pop_back();
  return line;
}

}  // namespace detail

inline std::vector<RootedMultigraph> read_text(std::istream& in) {
  std::vector<RootedMultigraph> out;
  std::string raw;
  int line_no = 0;
  enum class State { Header, Roots, Edges } state = State::Header;
  Multigraph g;
  Roots roots;
  std::vector<bool> seen;
  int expected_roots = 0;
  auto finish = [&] {
    if (state == State::Roots) throw parse_error(line_no, "missing roots line");
    if (state == State::Edges) out.emplace_back(g, roots);
    state = State::Header;
  };
  while (std::getline(in, raw)) {
    ++line_no;
    const std::string line = detail::strip_comment(raw);
    if (line.find_first_not_of(" \t") == std::string::npos) {
      if (raw.find('#') == std::string::npos) finish();
      continue;
    }
    const auto v = detail::parse_ints(line, line_no);
    switch (state) {
      case State::Header: {
        if (v.size() != 2) throw parse_error(line_no, "header must be 'n r'");
        if (v[0] < 0 || v[0] > kMaxVertices) throw parse_error(line_no, "vertex count out of range");
        if (v[1] < 0 || v[1] > 2 || v[1] > v[0]) throw parse_error(line_no, "root count out of range");
        g = Multigraph(static_cast<int>(v[0]));
        roots = Roots();
        seen.assign(v[0] * v[0], false);
        expected_roots = static_cast<int>(v[1]);
        state = expected_roots > 0 ? State::Roots : State::Edges;
        break;
      }
      case State::Roots: {
        if (static_cast<int>(v.size()) != expected_roots) throw parse_error(line_no, "wrong number of roots");
        Roots r;
        for (long x : v) {
          if (x < 0 || x >= g.order()) throw parse_error(line_no, "root out of range");
          if (r.contains(static_cast<int>(x))) throw parse_error(line_no, "repeated root");
          r.push_back(static_cast<int>(x));
        }
        roots = r;
        state = State::Edges;
        break;
      }
      case State::Edges: {
        if (v.size() != 3) throw parse_error(line_no, "edge line must be 'u v m'");
        const long a = v[0], b = v[1], m = v[2];
        if (a < 0 || b < 0 || a >= g.order() || b >= g.order()) throw parse_error(line_no, "vertex out of range");
        if (a == b) throw parse_error(line_no, "loops are not allowed");
        if (m < 1 || m > kMaxMultiplicity) throw parse_error(line_no, "multiplicity out of range");
        const long lo = std::min(a, b), hi = std::max(a, b);
        if (seen[lo * g.order() + hi]) throw parse_error(line_no, "duplicate pair");
        seen[lo * g.order() + hi] = true;
        g.set_mult(static_cast<int>(a), static_cast<int>(b), static_cast<int>(m));
        break;
      }
    }
  }
  finish();
  return out;
}

inline std::vector<RootedMultigraph> read_text(const std::string& text) {
  std::istringstream in(text);
  return read_text(in);
}

inline void write_text(std::ostream& out, const RootedMultigraph& g) {
  out << g.order() << ' ' << g.roots.size() << '\n';
  if (g.roots.size() > 0) {
    for (int i = 0; i < g.roots.size(); ++i) out << (i ? " " : "") << g.roots[i];
    out << '\n';
  }
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.graph.mult(u, v) > 0) out << u << ' ' << v << ' ' << g.graph.mult(u, v) << '\n';
}

inline std::string to_text(const RootedMultigraph& g) {
  std::ostringstream out;
  write_text(out, g);
  return out.str();
}

// graph6 (simple graphs only).

inline Multigraph parse_graph6(const std::string& line_in, int line_no = 1) {
  std::string line = line_in;
  if (line.rfind(">>graph6<<", 0) == 0) line.erase(0, 10);
  while (!line.empty() && (line.back() == '\r' || line.back() == '\n')) line.pop_back();
  if (line.empty()) throw parse_error(line_no, "empty graph6 record");
  for (char c : line)
    if (c < 63 || c > 126) throw parse_error(line_no, "invalid graph6 character");
  std::size_t pos = 0;
  long n = 0;
  if (line[0] != 126) {
    n = line[0] - 63;
    pos = 1;
  } else {
    if (line.size() < 4 || line[1] == 126) throw parse_error(line_no, "graph6 order too large");
    n = ((line[1] - 63) << 12) | ((line[2] - 63) << 6) | (line[3] - 63);
    pos = 4;
  }
  if (n > kMaxVertices) throw parse_error(line_no, "graph6 order exceeds " + std::to_string(kMaxVertices));
  const std::size_t bits = static_cast<std::size_t>(n * (n - 1) / 2);
  const std::size_t bytes = (bits + 5) / 6;
  if (line.size() - pos != bytes) throw parse_error(line_no, "graph6 record has the wrong length");
  Multigraph g(static_cast<int>(n));
  std::size_t k = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i, ++k) {
      const int byte = line[pos + k / 6] - 63;
      if ((byte >> (5 - k % 6)) & 1) g.set_mult(i, j, 1);
    }
  return g;
}

inline std::string to_graph6(const Multigraph& g) {
  const int n = g.order();
  std::string s(1, static_cast<char>(63 + n));
  int acc = 0, nbits = 0;
  for (int j = 1; j < n; ++j)
    for (int i = 0; i < j; ++i) {
      acc = (acc << 1) | (g.mult(i, j) > 0 ? 1 : 0);
      if (++nbits == 6) {
        s.push_back(static_cast<char>(63 + acc));
        acc = nbits = 0;
      }
    }
  if (nbits > 0) s.push_back(static_cast<char>(63 + (acc << (6 - nbits))));
  return s;
}

/// Simple graphs from a graph6 stream, one per line; blank lines are skipped.
inline std::vector<Multigraph> read_graph6(std::istream& in) {
  std::vector<Multigraph> out;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    out.push_back(parse_graph6(line, line_no));
  }
  return out;
}

inline std::vector<Multigraph> read_graph6_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return read_graph6(in);
}

// JSON.

inline json to_json(const RootedMultigraph& g) {
  json edges = json::array();
  for (int u = 0; u < g.order(); ++u)
    for (int v = u + 1; v < g.order(); ++v)
      if (g.graph.mult(u, v) > 0) edges.push_back({u, v, g.graph.mult(u, v)});
  return {{"n", g.order()}, {"roots", g.roots.to_vector()}, {"edges", edges}};
}

inline RootedMultigraph graph_from_json(const json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (n < 0 || n > kMaxVertices) throw parse_error(0, "vertex count out of range");
    Multigraph g(n);
    for (const auto& e : j.at("edges")) {
      const int u = e.at(0).get<int>(), v = e.at(1).get<int>(), m = e.at(2).get<int>();
      if (u < 0 || v < 0 || u >= n || v >= n || u == v || m < 1) throw parse_error(0, "bad edge");
      if (g.mult(u, v) != 0) throw parse_error(0, "duplicate pair");
      g.set_mult(u, v, m);
    }
    Roots r;
    if (j.contains("roots"))
      for (const auto& x : j.at("roots")) r.push_back(x.get<int>());
    return RootedMultigraph(g, r);
  } catch (const json::exception& e) {
    throw parse_error(0, e.what());
  } catch (const contract_violation& e) {
    throw parse_error(0, e.what());
  }
}

inline json to_json(const ImmersionWitness& w) { return {{"terminal_map", w.terminal_map}, {"routes", w.routes}}; }

inline json to_json(const CutCertificate& c) { return {{"side", c.side.members()}, {"size", c.size}}; }

}  // namespace imm
