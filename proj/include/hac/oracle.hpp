#pragma once

#include "hac/cluster_state.hpp"
#include "hac/dendrogram.hpp"

namespace hac {

// Global tie rule shared by every engine: higher similarity first, then the
// smaller cluster pair. A cluster's tie key is the minimum original vertex id
// it contains (stable under merging, and identical across runs that realize
// the same clustering through different merge steps). Returns true if
// (s1, a1, b1) beats (s2, a2, b2), where a*, b* are tie keys.
template <class W>
inline bool pair_better(const W& s1, int a1, int b1, const W& s2, int a2, int b2) {
  if (s1 != s2) return s1 > s2;
  int lo1 = std::min(a1, b1), hi1 = std::max(a1, b1);
  int lo2 = std::min(a2, b2), hi2 = std::max(a2, b2);
  if (lo1 != lo2) return lo1 < lo2;
  return hi1 < hi2;
}

// Reference greedy average-linkage HAC. Rescans every live edge each step to
// find the global argmax; nothing is shared with the fast engines beyond the
// core data model. Quadratic per step and meant to be: this is the oracle.
template <class W>
inline Dendrogram<W> run_greedy(const WeightedGraph<W>& g) {
  validate_graph(g);
  ClusterState<W> state(g);
  std::vector<int> key(g.n);  // min contained original vertex, per cluster id
  for (int v = 0; v < g.n; v++) key[v] = v;
  Dendrogram<W> out;
  out.leaf_count = g.n;
  int step = 0;
  for (;;) {
    int best_a = -1, best_b = -1;
    W best_sim = WeightTraits<W>::from_int(0);
    for (int u = 0; u < state.cluster_count(); u++) {
      if (!state.active(u)) continue;
      for (const auto& [v, w] : state.neighbors(u)) {
        if (v < u) continue;
        W sim = normalized_similarity(w, state.size(u), state.size(v));
        if (best_a == -1 ||
            pair_better(sim, key[u], key[v], best_sim, key[best_a], key[best_b])) {
          best_sim = sim;
          best_a = u;
          best_b = v;
        }
      }
    }
    if (best_a == -1) break;  // no positive-similarity pair remains
    long long sz = state.size(best_a) + state.size(best_b);
    int parent = state.contract(best_a, best_b);
    key.push_back(std::min(key[best_a], key[best_b]));
    step++;
    out.merges.push_back({step, best_a, best_b, parent, best_sim, sz});
  }
  return out;
}

// Same code path as run_greedy; initial sizes already participate in the
// normalized similarities. Exposed under the name the reductions use.
template <class W>
inline Dendrogram<W> run_greedy_with_sizes(const WeightedGraph<W>& g) {
  return run_greedy(g);
}

}  // namespace hac
