#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <vector>

#include "hac/errors.hpp"
#include "hac/weight.hpp"

namespace hac {

// One cluster merge. Leaves occupy ids 0..n-1; the parent created at step s
// (1-based) has id n-1+s.
template <class W>
struct MergeRecord {
  int step;
  int a, b;
  int parent;
  W similarity;
  long long size;  // size of the parent cluster
};

// Forest of binary merge trees in step order. A connected input yields n-1
// merges; in general there are n - #components.
template <class W>
struct Dendrogram {
  int leaf_count = 0;
  std::vector<MergeRecord<W>> merges;
};

template <class W>
inline W normalized_similarity(const W& total_weight, long long size_a, long long size_b) {
  if (size_a < 1 || size_b < 1) throw UsageError("cluster sizes must be >= 1");
  return total_weight / (WeightTraits<W>::from_int(size_a) * WeightTraits<W>::from_int(size_b));
}

// Step at which leaves u and v first share a cluster (the step of their
// lowest common ancestor), or nullopt if they never merge.
template <class W>
inline std::optional<int> merge_index(const Dendrogram<W>& d, int u, int v) {
  if (u < 0 || u >= d.leaf_count || v < 0 || v >= d.leaf_count)
    throw UsageError("merge_index: not a leaf id");
  if (u == v) throw UsageError("merge_index: identical leaves");
  int total = d.leaf_count + static_cast<int>(d.merges.size());
  std::vector<int> parent(total, -1);
  for (const auto& m : d.merges) {
    parent[m.a] = m.parent;
    parent[m.b] = m.parent;
  }
  std::vector<char> mark(total, 0);
  for (int x = u; x != -1; x = parent[x]) mark[x] = 1;
  for (int x = v; x != -1; x = parent[x])
    if (mark[x]) return x - d.leaf_count + 1;
  return std::nullopt;
}

template <class W>
struct DendrogramStats {
  int height = 0;       // max root-to-leaf edge count over the forest
  int merge_count = 0;
  std::vector<W> similarities;  // in step order
};

template <class W>
inline DendrogramStats<W> dendrogram_stats(const Dendrogram<W>& d) {
  DendrogramStats<W> s;
  s.merge_count = static_cast<int>(d.merges.size());
  std::vector<int> h(d.leaf_count + d.merges.size(), 0);
  for (const auto& m : d.merges) {
    h[m.parent] = 1 + std::max(h[m.a], h[m.b]);
    s.similarities.push_back(m.similarity);
  }
  std::vector<char> has_parent(h.size(), 0);
  for (const auto& m : d.merges) {
    has_parent[m.a] = 1;
    has_parent[m.b] = 1;
  }
  for (size_t i = 0; i < h.size(); i++)
    if (!has_parent[i]) s.height = std::max(s.height, h[i]);
  return s;
}

// Structural well-formedness; throws UsageError on violation. Used by tests.
template <class W>
inline void validate_dendrogram(const Dendrogram<W>& d) {
  int total = d.leaf_count + static_cast<int>(d.merges.size());
  std::vector<char> used_as_child(total, 0);
  const W zero = WeightTraits<W>::from_int(0);
  int step = 0;
  for (const auto& m : d.merges) {
    step++;
    if (m.step != step) throw UsageError("merge steps not contiguous");
    if (m.parent != d.leaf_count - 1 + step) throw UsageError("parent id out of sequence");
    if (m.a == m.b || m.a < 0 || m.b < 0 || m.a >= m.parent || m.b >= m.parent)
      throw UsageError("bad child ids");
    if (used_as_child[m.a] || used_as_child[m.b]) throw UsageError("cluster merged twice");
    used_as_child[m.a] = 1;
    used_as_child[m.b] = 1;
    if (!(m.similarity > zero)) throw UsageError("non-positive merge similarity");
  }
}

template <class W>
inline bool similarity_nonincreasing(const Dendrogram<W>& d) {
  for (size_t i = 1; i < d.merges.size(); i++)
    if (d.merges[i].similarity > d.merges[i - 1].similarity) return false;
  return true;
}

// Leaf sets of every internal node, each sorted. The laminar family of leaf
// sets (with per-node similarity) determines the forest shape, so equality of
// these maps is equality of dendrograms as unordered trees.
template <class W>
inline std::map<std::vector<int>, W> cluster_family(const Dendrogram<W>& d) {
  std::map<std::vector<int>, W> fam;
  std::vector<std::vector<int>> sets(d.leaf_count + d.merges.size());
  for (int i = 0; i < d.leaf_count; i++) sets[i] = {i};
  for (const auto& m : d.merges) {
    std::vector<int>&a = sets[m.a], &b = sets[m.b];
    std::vector<int> merged;
    merged.resize(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), merged.begin());
    fam.emplace(merged, m.similarity);
    sets[m.parent] = std::move(merged);
    a.clear();
    a.shrink_to_fit();
    b.clear();
    b.shrink_to_fit();
  }
  return fam;
}

// Equality as unordered trees with equal per-merge similarities.
template <class W>
inline bool dendrograms_equal(const Dendrogram<W>& x, const Dendrogram<W>& y) {
  if (x.leaf_count != y.leaf_count || x.merges.size() != y.merges.size()) return false;
  auto fx = cluster_family(x), fy = cluster_family(y);
  if (fx.size() != fy.size()) return false;
  for (auto itx = fx.begin(), ity = fy.begin(); itx != fx.end(); ++itx, ++ity) {
    if (itx->first != ity->first) return false;
    if (!(itx->second == ity->second)) return false;
  }
  return true;
}

}  // namespace hac
