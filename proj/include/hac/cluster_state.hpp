#pragma once

#include <map>
#include <vector>

#include "hac/graph.hpp"

namespace hac {

// Live clusters during a run: sizes, activity flags, and aggregated
// inter-cluster edge weights. Contraction follows the graph-contraction view
// of HAC: parallel edges created by a merge collapse into one edge carrying
// the weight sum, self-loops are dropped, and the new cluster gets a fresh id
// (leaves are 0..n-1, the contraction at step s creates id n-1+s).
//
// Mutated by exactly one thread at a time.
template <class W>
class ClusterState {
 public:
  explicit ClusterState(const WeightedGraph<W>& g) : leaf_count_(g.n) {
    size_.reserve(2 * g.n);
    adj_.resize(g.n);
    active_.assign(g.n, 1);
    for (int v = 0; v < g.n; v++) size_.push_back(g.size_of(v));
    for (const auto& e : g.edges) {
      auto it = adj_[e.u].find(e.v);
      if (it == adj_[e.u].end()) {
        adj_[e.u].emplace(e.v, e.w);
        adj_[e.v].emplace(e.u, e.w);
      } else {
        it->second += e.w;
        adj_[e.v].find(e.u)->second += e.w;
      }
    }
    active_count_ = g.n;
  }

  int leaf_count() const { return leaf_count_; }
  int cluster_count() const { return static_cast<int>(adj_.size()); }
  int active_count() const { return active_count_; }
  bool active(int c) const { return active_[c]; }
  long long size(int c) const { return size_[c]; }
  const std::map<int, W>& neighbors(int c) const { return adj_[c]; }

  // Aggregated weight between two clusters; zero if they share no edge.
  W weight_between(int a, int b) const {
    auto it = adj_[a].find(b);
    return it == adj_[a].end() ? WeightTraits<W>::from_int(0) : it->second;
  }

  // Contracts a and b into a fresh cluster and returns its id. Requires both
  // active and distinct, and (unless allow_zero_weight) a positive aggregated
  // weight between them.
  int contract(int a, int b, bool allow_zero_weight = false) {
    if (a == b) throw UsageError("contract: identical clusters");
    if (a < 0 || b < 0 || a >= cluster_count() || b >= cluster_count() || !active_[a] || !active_[b])
      throw UsageError("contract: inactive or invalid cluster id");
    if (!allow_zero_weight && adj_[a].find(b) == adj_[a].end())
      throw UsageError("contract: clusters share no positive-weight edge");
    int z = static_cast<int>(adj_.size());
    std::map<int, W> merged;
    for (int side : {a, b}) {
      for (auto& [c, w] : adj_[side]) {
        adj_[c].erase(side);
        if (c == a || c == b) continue;
        auto it = merged.find(c);
        if (it == merged.end())
          merged.emplace(c, w);
        else
          it->second += w;
      }
    }
    for (auto& [c, w] : merged) adj_[c].emplace(z, w);
    adj_.push_back(std::move(merged));
    size_.push_back(size_[a] + size_[b]);
    active_.push_back(1);
    active_[a] = 0;
    active_[b] = 0;
    adj_[a].clear();
    adj_[b].clear();
    active_count_--;
    return z;
  }

  long long total_active_size() const {
    long long s = 0;
    for (size_t c = 0; c < size_.size(); c++)
      if (active_[c]) s += size_[c];
    return s;
  }

 private:
  int leaf_count_;
  int active_count_;
  std::vector<std::map<int, W>> adj_;
  std::vector<long long> size_;
  std::vector<char> active_;
};

}  // namespace hac
