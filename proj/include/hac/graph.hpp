#pragma once

#include <algorithm>
#include <utility>
#include <vector>

#include "hac/errors.hpp"
#include "hac/weight.hpp"

namespace hac {

// Undirected weighted graph with contiguous 0-based vertex ids and optional
// per-vertex initial sizes (default 1). Edge weights are strictly positive;
// similarity 0 is represented by the absence of an edge.
template <class W>
struct WeightedGraph {
  struct Edge {
    int u, v;
    W w;
  };

  int n = 0;
  std::vector<long long> sizes;  // empty means all-ones
  std::vector<Edge> edges;

  long long size_of(int v) const { return sizes.empty() ? 1 : sizes[v]; }
  long long total_size() const {
    if (sizes.empty()) return n;
    long long s = 0;
    for (long long x : sizes) s += x;
    return s;
  }
};

template <class W>
inline void validate_graph(const WeightedGraph<W>& g) {
  if (g.n < 0) throw UsageError("negative vertex count");
  if (!g.sizes.empty() && static_cast<int>(g.sizes.size()) != g.n)
    throw UsageError("sizes array does not match vertex count");
  for (long long s : g.sizes)
    if (s < 1) throw UsageError("vertex sizes must be >= 1");
  const W zero = WeightTraits<W>::from_int(0);
  std::vector<std::pair<int, int>> seen;
  seen.reserve(g.edges.size());
  for (const auto& e : g.edges) {
    if (e.u < 0 || e.u >= g.n || e.v < 0 || e.v >= g.n) throw UsageError("edge endpoint out of range");
    if (e.u == e.v) throw UsageError("self-loops are not allowed");
    if (!(e.w > zero)) throw UsageError("edge weights must be > 0");
    seen.emplace_back(std::min(e.u, e.v), std::max(e.u, e.v));
  }
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end())
    throw UsageError("duplicate edge");
}

// max initial edge weight / min initial edge weight. Exact in rational mode.
template <class W>
inline W aspect_ratio(const WeightedGraph<W>& g) {
  if (g.edges.empty()) throw UsageError("aspect ratio of an edgeless graph");
  W lo = g.edges[0].w, hi = g.edges[0].w;
  for (const auto& e : g.edges) {
    if (e.w < lo) lo = e.w;
    if (e.w > hi) hi = e.w;
  }
  return hi / lo;
}

inline WeightedGraph<double> to_float_graph(const WeightedGraph<Rational>& g) {
  WeightedGraph<double> out;
  out.n = g.n;
  out.sizes = g.sizes;
  out.edges.reserve(g.edges.size());
  for (const auto& e : g.edges) out.edges.push_back({e.u, e.v, e.w.to_double()});
  return out;
}

}  // namespace hac
