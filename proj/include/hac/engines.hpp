#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <unordered_map>
#include <vector>

#include "hac/dendrogram.hpp"
#include "hac/graph.hpp"
#include "hac/oracle.hpp"

namespace hac {

// Operation counters for validating the O(mh log n) work bound. Monotone
// during a run. heap_ops counts elementary heap events (op calls plus sift
// steps); neighbor_elements_touched counts |N(A)| + |N(B)| per merge.
struct Telemetry {
  std::uint64_t heap_ops = 0;
  std::uint64_t neighbor_elements_touched = 0;
  std::uint64_t merges = 0;
  std::uint64_t best_edge_calls = 0;
  std::uint64_t unsuccessful_extractions = 0;   // extracted entry whose endpoint died
  std::uint64_t superseded_entries = 0;         // lazily dropped stale versions
  std::uint64_t stale_priority_reinserts = 0;   // defensive path; stays 0 with eager refresh
};

struct EngineOptions {
  // Fault injection for the verification harness: picks the higher neighbor
  // id on priority ties instead of the lower one.
  bool flip_tie_rule = false;
};

namespace detail {
struct HeapContext {
  const std::vector<int>* tie_key = nullptr;  // min contained original vertex, per slot
  Telemetry* telem = nullptr;
  bool flip_ties = false;
};
}  // namespace detail

// Per-cluster max-priority structure over neighbors, keyed by normalized
// similarity with the global tie rule (lower neighbor id wins). Indexed
// binary heap: erase/update by neighbor id are logarithmic.
template <class W>
class NeighborHeap {
 public:
  struct Entry {
    int nbr;  // engine slot of the neighbor
    W raw;    // aggregated edge weight
    W sim;    // raw / (S(self) * S(nbr))
  };

  NeighborHeap() = default;
  explicit NeighborHeap(const detail::HeapContext* ctx) : ctx_(ctx) {}

  int size() const { return static_cast<int>(heap_.size()); }
  bool empty() const { return heap_.empty(); }
  const std::vector<Entry>& entries() const { return heap_; }

  const Entry* top() const {
    if (heap_.empty()) return nullptr;
    ctx_->telem->heap_ops++;
    return &heap_[0];
  }

  bool contains(int nbr) const { return pos_.count(nbr) > 0; }

  const W* raw_of(int nbr) const {
    auto it = pos_.find(nbr);
    return it == pos_.end() ? nullptr : &heap_[it->second].raw;
  }

  void insert(Entry e) {
    ctx_->telem->heap_ops++;
    heap_.push_back(std::move(e));
    pos_[heap_.back().nbr] = static_cast<int>(heap_.size()) - 1;
    sift_up(static_cast<int>(heap_.size()) - 1);
  }

  void erase(int nbr) {
    auto it = pos_.find(nbr);
    if (it == pos_.end()) throw UsageError("heap erase: no such neighbor");
    ctx_->telem->heap_ops++;
    int i = it->second;
    pos_.erase(it);
    int last = static_cast<int>(heap_.size()) - 1;
    if (i != last) {
      heap_[i] = std::move(heap_[last]);
      pos_[heap_[i].nbr] = i;
      heap_.pop_back();
      if (!sift_up(i)) sift_down(i);
    } else {
      heap_.pop_back();
    }
  }

  void update(int nbr, W raw, W sim) {
    auto it = pos_.find(nbr);
    if (it == pos_.end()) throw UsageError("heap update: no such neighbor");
    ctx_->telem->heap_ops++;
    int i = it->second;
    heap_[i].raw = std::move(raw);
    heap_[i].sim = std::move(sim);
    if (!sift_up(i)) sift_down(i);
  }

  // Replaces the whole content (heapify).
  void build(std::vector<Entry> entries) {
    heap_ = std::move(entries);
    pos_.clear();
    for (int i = 0; i < static_cast<int>(heap_.size()); i++) pos_[heap_[i].nbr] = i;
    ctx_->telem->heap_ops += heap_.size();
    for (int i = static_cast<int>(heap_.size()) / 2 - 1; i >= 0; i--) sift_down(i);
  }

  void clear() {
    heap_.clear();
    pos_.clear();
  }

  void set_context(const detail::HeapContext* ctx) { ctx_ = ctx; }

 private:
  // True if x outranks y.
  bool better(const Entry& x, const Entry& y) const {
    if (x.sim != y.sim) return x.sim > y.sim;
    int ix = (*ctx_->tie_key)[x.nbr], iy = (*ctx_->tie_key)[y.nbr];
    return ctx_->flip_ties ? ix > iy : ix < iy;
  }

  bool sift_up(int i) {
    bool moved = false;
    while (i > 0) {
      int p = (i - 1) / 2;
      if (!better(heap_[i], heap_[p])) break;
      ctx_->telem->heap_ops++;
      std::swap(heap_[i], heap_[p]);
      pos_[heap_[i].nbr] = i;
      pos_[heap_[p].nbr] = p;
      i = p;
      moved = true;
    }
    return moved;
  }

  void sift_down(int i) {
    int n = static_cast<int>(heap_.size());
    for (;;) {
      int l = 2 * i + 1, r = 2 * i + 2, m = i;
      if (l < n && better(heap_[l], heap_[m])) m = l;
      if (r < n && better(heap_[r], heap_[m])) m = r;
      if (m == i) break;
      ctx_->telem->heap_ops++;
      std::swap(heap_[i], heap_[m]);
      pos_[heap_[i].nbr] = i;
      pos_[heap_[m].nbr] = m;
      i = m;
    }
  }

  std::vector<Entry> heap_;
  std::unordered_map<int, int> pos_;
  const detail::HeapContext* ctx_ = nullptr;
};

template <class W>
struct BestEdge {
  int cluster;
  int nbr;
  W sim;
};

template <class W>
struct EngineState;

template <class W>
using AfterMergeHook = std::function<void(const EngineState<W>&)>;

// Mutable engine state shared by the NN-chain and heap-based engines.
// Clusters live in fixed slots 0..n-1; a merge deactivates one slot and the
// other keeps representing the union. dendro_id maps slots to the evolving
// dendrogram cluster ids used by the tie rule.
template <class W>
struct EngineState {
  explicit EngineState(const WeightedGraph<W>& g, EngineOptions opts = {}) {
    validate_graph(g);
    n = g.n;
    size.reserve(n);
    for (int v = 0; v < n; v++) size.push_back(g.size_of(v));
    active.assign(n, 1);
    dendro_id.resize(n);
    tie_key.resize(n);
    for (int v = 0; v < n; v++) dendro_id[v] = tie_key[v] = v;
    ctx.tie_key = &tie_key;
    ctx.telem = &telemetry;
    ctx.flip_ties = opts.flip_tie_rule;
    heaps.assign(n, NeighborHeap<W>(&ctx));
    std::vector<std::vector<typename NeighborHeap<W>::Entry>> init(n);
    for (const auto& e : g.edges) {
      W sim = normalized_similarity(e.w, size[e.u], size[e.v]);
      init[e.u].push_back({e.v, e.w, sim});
      init[e.v].push_back({e.u, e.w, sim});
    }
    for (int v = 0; v < n; v++) heaps[v].build(std::move(init[v]));
    dendro.leaf_count = n;
  }

  int n = 0;
  std::vector<long long> size;
  std::vector<char> active;
  std::vector<int> dendro_id;  // evolving dendrogram id per slot (record metadata)
  std::vector<int> tie_key;    // min contained original vertex per slot (tie rule)
  std::vector<NeighborHeap<W>> heaps;
  Telemetry telemetry;
  Dendrogram<W> dendro;
  detail::HeapContext ctx;
  const AfterMergeHook<W>* after_merge = nullptr;

  std::optional<BestEdge<W>> best_edge(int c) {
    if (c < 0 || c >= n || !active[c]) throw UsageError("best_edge: inactive cluster");
    telemetry.best_edge_calls++;
    const auto* t = heaps[c].top();
    if (!t) return std::nullopt;
    return BestEdge<W>{c, t->nbr, t->sim};
  }

  struct MergeOutcome {
    int survivor;
    W similarity;
    std::vector<int> touched;  // every slot whose heap was updated
  };

  // Merges cluster a into cluster b (a is deactivated, b survives), keeping
  // every neighbor heap exact: the common neighborhood is found by
  // sort-and-merge over neighbor slots, common neighbors drop their reference
  // to a and take the summed weight for b, a-only neighbors are redirected to
  // b, and every entry incident to b is re-normalized for b's new size.
  MergeOutcome merge_clusters(int a, int b) {
    if (a == b) throw UsageError("merge_clusters: identical clusters");
    if (a < 0 || b < 0 || a >= n || b >= n || !active[a] || !active[b])
      throw UsageError("merge_clusters: inactive cluster");
    const W* raw_ab = heaps[a].raw_of(b);
    if (!raw_ab) throw UsageError("merge_clusters: clusters are not adjacent");
    W sim_ab = normalized_similarity(*raw_ab, size[a], size[b]);

    telemetry.neighbor_elements_touched += heaps[a].size() + heaps[b].size();

    auto ea = heaps[a].entries();
    auto eb = heaps[b].entries();
    heaps[a].clear();
    heaps[b].clear();
    auto by_slot = [](const auto& x, const auto& y) { return x.nbr < y.nbr; };
    std::sort(ea.begin(), ea.end(), by_slot);
    std::sort(eb.begin(), eb.end(), by_slot);
    telemetry.heap_ops += ea.size() + eb.size();

    long long new_size = size[a] + size[b];
    int step = static_cast<int>(dendro.merges.size()) + 1;
    int parent = n - 1 + step;
    int id_a = dendro_id[a], id_b = dendro_id[b];
    // The surviving slot takes its new identity up front: the neighbor-heap
    // updates below compare ties against the key the cluster has from now on.
    size[b] = new_size;
    active[a] = 0;
    dendro_id[b] = parent;
    tie_key[b] = std::min(tie_key[a], tie_key[b]);

    MergeOutcome out;
    out.survivor = b;
    out.similarity = sim_ab;

    std::vector<typename NeighborHeap<W>::Entry> merged;
    merged.reserve(ea.size() + eb.size());
    size_t i = 0, j = 0;
    while (i < ea.size() || j < eb.size()) {
      int which;  // 0 = a-only, 1 = b-only, 2 = common
      int c;
      W raw = WeightTraits<W>::from_int(0);
      if (j >= eb.size() || (i < ea.size() && ea[i].nbr < eb[j].nbr)) {
        c = ea[i].nbr;
        raw = ea[i].raw;
        which = 0;
        i++;
      } else if (i >= ea.size() || eb[j].nbr < ea[i].nbr) {
        c = eb[j].nbr;
        raw = eb[j].raw;
        which = 1;
        j++;
      } else {
        c = ea[i].nbr;
        raw = ea[i].raw + eb[j].raw;
        which = 2;
        i++;
        j++;
      }
      if (c == a || c == b) continue;  // self-loop removed
      W sim = normalized_similarity(raw, new_size, size[c]);
      if (which == 0) {
        heaps[c].erase(a);
        heaps[c].insert({b, raw, sim});
      } else if (which == 1) {
        heaps[c].update(b, raw, sim);
      } else {
        heaps[c].erase(a);
        heaps[c].update(b, raw, sim);
      }
      out.touched.push_back(c);
      merged.push_back({c, std::move(raw), std::move(sim)});
    }
    heaps[b].build(std::move(merged));

    dendro.merges.push_back(
        {step, std::min(id_a, id_b), std::max(id_a, id_b), parent, sim_ab, new_size});
    telemetry.merges++;
    if (after_merge && *after_merge) (*after_merge)(*this);
    return out;
  }
};

// Nearest-neighbor chain engine. Grows a stack of successive best neighbors
// from each seed; when the top's best neighbor is already on the stack the
// reciprocal pair merges (top merged into the cluster below it) and both
// leave the stack. A seed whose stack emptied is reseeded while it is still
// active with positive-weight edges, so every component is fully merged.
template <class W>
inline Dendrogram<W> run_nn_chain(const WeightedGraph<W>& g, Telemetry* telem_out = nullptr,
                                  EngineOptions opts = {}, const AfterMergeHook<W>* hook = nullptr) {
  EngineState<W> st(g, opts);
  st.after_merge = hook;
  std::vector<char> on_stack(st.n, 0);
  std::vector<int> stack;
  for (int v = 0; v < st.n; v++) {
    while (st.active[v] && !st.heaps[v].empty()) {
      stack.assign(1, v);
      on_stack[v] = 1;
      while (!stack.empty()) {
        int t = stack.back();
        auto be = st.best_edge(t);
        if (!be) {  // isolated: only the stack bottom can reach this
          on_stack[t] = 0;
          stack.pop_back();
          continue;
        }
        int b = be->nbr;
        if (on_stack[b]) {
          stack.pop_back();
          on_stack[t] = 0;
          int u = stack.back();
          st.merge_clusters(t, u);  // t inactive; u remains active
          stack.pop_back();
          on_stack[u] = 0;
        } else {
          stack.push_back(b);
          on_stack[b] = 1;
        }
      }
    }
  }
  if (telem_out) *telem_out = st.telemetry;
  return st.dendro;
}

namespace detail {
template <class W>
struct GlobalEntry {
  W sim;
  int lo, hi;  // pair tie keys at insertion time
  int owner, nbr;
  std::uint32_t version;
};

// Plain binary max-heap with sift-step counting.
template <class W>
class GlobalHeap {
 public:
  explicit GlobalHeap(Telemetry* t) : telem_(t) {}
  bool empty() const { return h_.empty(); }

  void push(GlobalEntry<W> e) {
    telem_->heap_ops++;
    h_.push_back(std::move(e));
    int i = static_cast<int>(h_.size()) - 1;
    while (i > 0) {
      int p = (i - 1) / 2;
      if (!better(h_[i], h_[p])) break;
      telem_->heap_ops++;
      std::swap(h_[i], h_[p]);
      i = p;
    }
  }

  GlobalEntry<W> pop() {
    telem_->heap_ops++;
    GlobalEntry<W> top = std::move(h_[0]);
    h_[0] = std::move(h_.back());
    h_.pop_back();
    int n = static_cast<int>(h_.size());
    int i = 0;
    for (;;) {
      int l = 2 * i + 1, r = 2 * i + 2, m = i;
      if (l < n && better(h_[l], h_[m])) m = l;
      if (r < n && better(h_[r], h_[m])) m = r;
      if (m == i) break;
      telem_->heap_ops++;
      std::swap(h_[i], h_[m]);
      i = m;
    }
    return top;
  }

 private:
  bool better(const GlobalEntry<W>& x, const GlobalEntry<W>& y) const {
    if (x.sim != y.sim) return x.sim > y.sim;
    if (x.lo != y.lo) return x.lo < y.lo;
    if (x.hi != y.hi) return x.hi < y.hi;
    return x.owner < y.owner;
  }

  std::vector<GlobalEntry<W>> h_;
  Telemetry* telem_;
};
}  // namespace detail

template <class W>
struct HeapRunResult {
  Dendrogram<W> dendrogram;
  Telemetry telemetry;
};

// Heap-based engine: a global max structure holds the best edge of each
// active cluster. Entries referencing a dead cluster are discarded lazily and
// replaced via best_edge; entries belonging to clusters whose neighborhood a
// merge touched are superseded by version and re-pushed eagerly, which keeps
// every live entry's priority exact.
template <class W>
inline HeapRunResult<W> run_heap_based(const WeightedGraph<W>& g, EngineOptions opts = {},
                                       const AfterMergeHook<W>* hook = nullptr) {
  EngineState<W> st(g, opts);
  st.after_merge = hook;
  detail::GlobalHeap<W> pq(&st.telemetry);
  std::vector<std::uint32_t> version(st.n, 0);

  auto push_best = [&](int c) {
    auto be = st.best_edge(c);
    if (!be) return;
    pq.push({be->sim, std::min(st.tie_key[c], st.tie_key[be->nbr]),
             std::max(st.tie_key[c], st.tie_key[be->nbr]), c, be->nbr, version[c]});
  };
  for (int v = 0; v < st.n; v++) push_best(v);

  while (!pq.empty()) {
    auto e = pq.pop();
    if (e.version != version[e.owner]) {
      st.telemetry.superseded_entries++;
      continue;
    }
    if (!st.active[e.nbr]) {
      st.telemetry.unsuccessful_extractions++;
      version[e.owner]++;
      push_best(e.owner);
      continue;
    }
    const auto* top = st.heaps[e.owner].top();
    if (!top || top->nbr != e.nbr || !(top->sim == e.sim) ||
        std::min(st.tie_key[e.owner], st.tie_key[e.nbr]) != e.lo ||
        std::max(st.tie_key[e.owner], st.tie_key[e.nbr]) != e.hi) {
      st.telemetry.stale_priority_reinserts++;
      version[e.owner]++;
      push_best(e.owner);
      continue;
    }
    auto out = st.merge_clusters(e.owner, e.nbr);  // owner inactive; nbr survives
    version[e.owner]++;
    version[out.survivor]++;
    push_best(out.survivor);
    for (int c : out.touched) {
      if (c == out.survivor) continue;
      version[c]++;
      push_best(c);
    }
  }
  return {std::move(st.dendro), st.telemetry};
}

}  // namespace hac
