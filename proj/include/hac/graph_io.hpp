#pragma once

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "hac/dendrogram.hpp"
#include "hac/graph.hpp"

namespace hac::io {

// Graph file: UTF-8 text, '#' comment lines, optional "n <count>" header,
// optional "size <v> <s>" lines, edge lines "<u> <v> <w>" where w is a
// decimal literal or "p/q".
template <class W>
inline WeightedGraph<W> parse_graph(std::istream& in) {
  WeightedGraph<W> g;
  std::string line;
  int lineno = 0;
  bool have_n = false;
  int max_vertex = -1;
  std::vector<std::pair<int, long long>> sizes;
  while (std::getline(in, line)) {
    lineno++;
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ss >> tok) {
      if (tok[0] == '#') break;
      toks.push_back(tok);
    }
    if (toks.empty()) continue;
    auto want_int = [&](const std::string& s) -> long long {
      try {
        size_t pos = 0;
        long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw std::invalid_argument(s);
        return v;
      } catch (const std::exception&) {
        throw ParseError("bad integer '" + s + "'", lineno);
      }
    };
    if (toks[0] == "n") {
      if (toks.size() != 2) throw ParseError("expected 'n <count>'", lineno);
      if (have_n) throw ParseError("duplicate 'n' header", lineno);
      g.n = static_cast<int>(want_int(toks[1]));
      have_n = true;
    } else if (toks[0] == "size") {
      if (toks.size() != 3) throw ParseError("expected 'size <v> <s>'", lineno);
      sizes.push_back({static_cast<int>(want_int(toks[1])), want_int(toks[2])});
    } else {
      if (toks.size() != 3) throw ParseError("expected edge '<u> <v> <w>'", lineno);
      int u = static_cast<int>(want_int(toks[0]));
      int v = static_cast<int>(want_int(toks[1]));
      W w;
      try {
        w = WeightTraits<W>::parse(toks[2]);
      } catch (const std::exception& e) {
        throw ParseError(e.what(), lineno);
      }
      g.edges.push_back({u, v, w});
      max_vertex = std::max({max_vertex, u, v});
    }
  }
  for (auto& [v, s] : sizes) max_vertex = std::max(max_vertex, v);
  if (!have_n) g.n = max_vertex + 1;
  if (!sizes.empty()) {
    g.sizes.assign(g.n, 1);
    for (auto& [v, s] : sizes) {
      if (v < 0 || v >= g.n) throw ParseError("size line for vertex " + std::to_string(v) +
                                              " out of range");
      g.sizes[v] = s;
    }
  }
  try {
    validate_graph(g);
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  return g;
}

template <class W>
inline void write_graph(std::ostream& os, const WeightedGraph<W>& g) {
  os << "n " << g.n << "\n";
  for (int v = 0; v < g.n; v++)
    if (g.size_of(v) != 1) os << "size " << v << " " << g.size_of(v) << "\n";
  for (const auto& e : g.edges)
    os << e.u << " " << e.v << " " << WeightTraits<W>::format(e.w) << "\n";
}

// Dendrogram file: one JSON object per line, in step order. Rational
// similarities are strings ("p/q" or "p"), float64 similarities are numbers.
template <class W>
inline void write_dendrogram(std::ostream& os, const Dendrogram<W>& d) {
  for (const auto& m : d.merges) {
    os << "{\"step\":" << m.step << ",\"a\":" << m.a << ",\"b\":" << m.b
       << ",\"parent\":" << m.parent << ",\"sim\":";
    if constexpr (WeightTraits<W>::exact)
      os << '"' << WeightTraits<W>::format(m.similarity) << '"';
    else
      os << WeightTraits<W>::format(m.similarity);
    os << ",\"size\":" << m.size << "}\n";
  }
}

template <class W>
inline std::string dendrogram_to_string(const Dendrogram<W>& d) {
  std::ostringstream ss;
  write_dendrogram(ss, d);
  return ss.str();
}

template <class W>
inline Dendrogram<W> parse_dendrogram(std::istream& in) {
  Dendrogram<W> d;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad JSON: ") + e.what(), lineno);
    }
    try {
      MergeRecord<W> m;
      m.step = j.at("step").get<int>();
      m.a = j.at("a").get<int>();
      m.b = j.at("b").get<int>();
      m.parent = j.at("parent").get<int>();
      m.size = j.at("size").get<long long>();
      const auto& sim = j.at("sim");
      if (sim.is_string())
        m.similarity = WeightTraits<W>::parse(sim.get<std::string>());
      else
        m.similarity = WeightTraits<W>::parse(sim.dump());
      d.merges.push_back(std::move(m));
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      throw ParseError(std::string("bad dendrogram record: ") + e.what(), lineno);
    }
  }
  if (!d.merges.empty()) {
    d.leaf_count = d.merges[0].parent - d.merges[0].step + 1;
    try {
      validate_dendrogram(d);
    } catch (const UsageError& e) {
      throw ParseError(e.what());
    }
  }
  return d;
}

}  // namespace hac::io
