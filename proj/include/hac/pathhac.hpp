#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "hac/dendrogram.hpp"
#include "hac/graph.hpp"
#include "hac/oracle.hpp"
#include "hac/task_pool.hpp"

namespace hac {

// ---------------------------------------------------------------------------
// Pure pieces of the path algorithm, exposed for direct testing.
// ---------------------------------------------------------------------------

// Unique t >= 1 with (2/3)^t * w_max < w <= (2/3)^(t-1) * w_max.
template <class W>
inline int bucket_index(const W& w, const W& w_max) {
  const W zero = WeightTraits<W>::from_int(0);
  if (!(w > zero)) throw UsageError("bucket_index: weight must be > 0");
  if (w > w_max) throw UsageError("bucket_index: weight above w_max");
  const W two_thirds = WeightTraits<W>::from_int(2) / WeightTraits<W>::from_int(3);
  W thr = w_max;
  int t = 0;
  do {
    thr = thr * two_thirds;
    t++;
  } while (!(thr < w));
  return t;
}

// Subchain piece lengths for one arm, sizes listed from the reciprocal pair
// outward. The arm splits before index i (1-based) whenever
// S(c_i) < 2 * S(c_{i-1}), except i == 2.
inline std::vector<int> split_arm(const std::vector<long long>& sizes) {
  std::vector<int> lens;
  int cur = 0;
  for (size_t i = 0; i < sizes.size(); i++) {
    if (i >= 1 && i != 1 && sizes[i] < 2 * sizes[i - 1]) {
      lens.push_back(cur);
      cur = 0;
    }
    cur++;
  }
  if (cur > 0) lens.push_back(cur);
  return lens;
}

// Exclusive XOR prefix scan: b[0] = 0, b[i] = a[0] ^ ... ^ a[i-1]. Associative,
// so it evaluates in logarithmic depth; this reference runs left to right.
inline std::vector<std::uint8_t> xor_scan_bits(const std::vector<std::uint8_t>& a) {
  std::vector<std::uint8_t> b(a.size());
  std::uint8_t acc = 0;
  for (size_t i = 0; i < a.size(); i++) {
    b[i] = acc;
    acc ^= a[i];
  }
  return b;
}

enum class Category : std::uint8_t { A = 0, B = 1 };

// Resolves subchain categories from the f-table. f[j] = {f(j,A), f(j,B)} is
// the category subchain j+1 takes when subchain j realizes A resp. B; there
// are K subchains and K-1 table entries. Subchain 0 holds the reciprocal pair
// and is always B. Where f(j,A) == f(j,B) the successor is determined
// outright and the scan restarts; in between, categories propagate as an XOR
// prefix scan over the f(j,A) codes.
inline std::vector<Category> xor_category_scan(const std::vector<std::array<Category, 2>>& f) {
  int k = static_cast<int>(f.size()) + 1;
  std::vector<Category> cat(k);
  cat[0] = Category::B;
  int j = 1;
  while (j < k) {
    int seg_start = j;
    Category start_cat = f[j - 1][static_cast<int>(cat[j - 1])];
    int seg_end = seg_start + 1;
    while (seg_end < k && f[seg_end - 1][0] != f[seg_end - 1][1]) seg_end++;
    int len = seg_end - seg_start;
    std::vector<std::uint8_t> bits(len, 0);
    for (int m = 0; m + 1 < len; m++) bits[m] = static_cast<std::uint8_t>(f[seg_start + m][0]);
    auto scan = xor_scan_bits(bits);
    for (int m = 0; m < len; m++)
      cat[seg_start + m] =
          static_cast<Category>(static_cast<std::uint8_t>(start_cat) ^ scan[m]);
    j = seg_end;
  }
  return cat;
}

// Chain decomposition of one run of in-bucket edges. Every maximal unimodal
// segment between two valley (locally minimal under the tie rule) edges is a
// chain with its peak edge marked; the valley edges belong to no chain and
// can sit only between the last clusters of two chains.
struct ChainDecomp {
  struct Chain {
    int first_edge, last_edge;  // inclusive edge index range within the run
    int peak_edge;
  };
  std::vector<Chain> chains;
  std::vector<int> valley_edges;
};

template <class W>
inline ChainDecomp decompose_chains(const std::vector<W>& sims, const std::vector<int>& lo_id,
                                    const std::vector<int>& hi_id) {
  int k = static_cast<int>(sims.size());
  ChainDecomp out;
  auto better = [&](int i, int j) {
    return pair_better(sims[i], lo_id[i], hi_id[i], sims[j], lo_id[j], hi_id[j]);
  };
  int start = 0;
  for (int i = 0; i <= k; i++) {
    bool is_valley = i > 0 && i < k - 1 && better(i - 1, i) && better(i + 1, i);
    if (i == k || is_valley) {
      if (start <= i - 1) {
        int peak = start;
        for (int e = start + 1; e <= i - 1; e++)
          if (better(e, peak)) peak = e;
        out.chains.push_back({start, i - 1, peak});
      }
      if (is_valley) out.valley_edges.push_back(i);
      start = i + 1;
    }
  }
  return out;
}

// Optional run-time audit: collects violations instead of aborting so the
// verification harness can report them.
struct PathAudit {
  std::vector<std::string> violations;
  int phases = 0;
  int sweeps = 0;
  int max_bucket = 0;
  int phase_bound = 0;
  int max_subchain_len = 0;
  int max_seed_len = 0;
  int max_group_len = 0;
  long long drop_checks_23 = 0;
  long long drop_checks_13 = 0;
  long long deferred_strays = 0;

  void fail(const std::string& msg) {
    if (violations.size() < 32) violations.push_back(msg);
  }
};

namespace pathdetail {

// Sequential exact average-linkage simulation on a short cluster segment, run
// until no edge similarity exceeds `lo`. ids are the clusters' tie keys
// (minimum contained original vertex), so min-combining them on merge keeps
// the keys exact.
template <class W>
struct SegmentSim {
  std::vector<long long> size;
  std::vector<int> id;
  std::vector<W> raw;  // raw[i] joins local clusters i and i+1
  std::vector<char> edge_alive;
  std::vector<int> left_of, right_of;

  struct Merge {
    int edge;
    W sim;
  };
  std::vector<Merge> merges;

  void init() {
    int k = static_cast<int>(size.size());
    edge_alive.assign(k > 0 ? k - 1 : 0, 1);
    left_of.resize(edge_alive.size());
    right_of.resize(edge_alive.size());
    for (size_t e = 0; e < edge_alive.size(); e++) {
      left_of[e] = static_cast<int>(e);
      right_of[e] = static_cast<int>(e) + 1;
    }
  }

  void run(const W& lo) {
    for (;;) {
      int best = -1;
      W best_sim = WeightTraits<W>::from_int(0);
      for (size_t e = 0; e < edge_alive.size(); e++) {
        if (!edge_alive[e]) continue;
        W s = normalized_similarity(raw[e], size[left_of[e]], size[right_of[e]]);
        if (!(s > lo)) continue;
        if (best == -1 || pair_better(s, id[left_of[e]], id[right_of[e]], best_sim,
                                      id[left_of[best]], id[right_of[best]])) {
          best = static_cast<int>(e);
          best_sim = s;
        }
      }
      if (best == -1) return;
      int l = left_of[best], r = right_of[best];
      size[l] += size[r];
      id[l] = std::min(id[l], id[r]);
      edge_alive[best] = 0;
      merges.push_back({best, best_sim});
      for (size_t e = 0; e < edge_alive.size(); e++) {
        if (!edge_alive[e]) continue;
        if (left_of[e] == r) left_of[e] = l;
        if (right_of[e] == r) right_of[e] = l;
      }
    }
  }

  bool merged(int e) const {
    for (const auto& m : merges)
      if (m.edge == e) return true;
    return false;
  }
};

}  // namespace pathdetail

// ---------------------------------------------------------------------------
// The parallel path engine.
// ---------------------------------------------------------------------------

template <class W>
class PathRunner {
 public:
  PathRunner(const WeightedGraph<W>& g, int workers, PathAudit* audit)
      : workers_(std::max(1, workers)), audit_(audit) {
    validate_graph(g);
    order_path(g);
    n_ = g.n;
    out_.leaf_count = g.n;
    if (n_ <= 1) return;

    csz_.resize(n_);
    cid_.resize(n_);
    key_.resize(n_);
    nxt_.resize(n_);
    prv_.resize(n_);
    redge_.resize(n_);
    for (int i = 0; i < n_; i++) {
      csz_[i] = g.size_of(vid_[i]);
      cid_[i] = vid_[i];
      key_[i] = vid_[i];
      nxt_[i] = i + 1 < n_ ? i + 1 : -1;
      prv_[i] = i - 1;
      redge_[i] = i + 1 < n_ ? i : -1;
      total_size_ += csz_[i];
    }
    ealive_.assign(n_ - 1, 1);
    eleft_.resize(n_ - 1);
    enq_.assign(n_ - 1, -1);
    lastb_.assign(n_ - 1, 0);
    for (int e = 0; e + 1 < n_; e++) eleft_[e] = e;

    W wmax = edge_sim(0);
    for (int e = 1; e + 1 < n_; e++) {
      W s = edge_sim(e);
      if (s > wmax) wmax = s;
    }
    thr_.push_back(wmax);
    log2_bound_ = 1;
    while ((1LL << log2_bound_) <= total_size_) log2_bound_++;
    if (audit_) audit_->phase_bound = phase_bound(g);
  }

  Dendrogram<W> run() {
    if (n_ <= 1) return out_;
    long long alive = n_ - 1;
    for (int e = 0; e + 1 < n_; e++) enqueue(e);
    int t = 1;
    int last_sweep_bucket = 0;
    while (alive > 0) {
      if (t >= static_cast<int>(buckets_.size()))
        throw UsageError("path engine: live edges missing from every bucket");
      std::vector<int> pending = std::move(buckets_[t]);
      buckets_[t].clear();
      std::vector<int> inwin;
      for (int e : pending) {
        if (!ealive_[e] || enq_[e] != t) continue;  // merged or superseded entry
        int tb = bucket_of(edge_sim(e));
        if (tb != t) {
          if (audit_ && tb < lastb_[e]) audit_->fail("bucket index decreased");
          lastb_[e] = tb;
          enq_[e] = tb;
          bucket_vec(tb).push_back(e);
        } else {
          enq_[e] = -1;
          inwin.push_back(e);
        }
      }
      std::sort(inwin.begin(), inwin.end());
      if (inwin.empty()) {
        if (buckets_[t].empty()) t++;
        continue;
      }
      if (audit_) {
        audit_->sweeps++;
        if (t != last_sweep_bucket) {
          audit_->phases++;
          audit_->max_bucket = std::max(audit_->max_bucket, t);
          if (t > audit_->phase_bound) audit_->fail("phase count exceeded bound");
        }
      }
      last_sweep_bucket = t;
      alive -= sweep(t, inwin);
    }
    return out_;
  }

 private:
  struct Subchain {
    int inner = 0, outer = 0;  // run cluster indices; inner faces the peak
    Category cat = Category::B;
  };

  struct ChainWork {
    std::vector<Subchain> left, right;                 // index 0 is the seed in both
    std::vector<std::array<Category, 2>> fl, fr;       // f-tables per direction
    int peak_edge = 0;                                 // run edge index
  };

  struct RunWork {
    std::vector<int> edges;  // global edge ids, left to right
    std::vector<int> slots;  // run cluster index -> slot
    std::vector<W> sims;
    std::vector<ChainWork> chains;
  };

  struct ClassifyTask {
    RunWork* rw;
    ChainWork* cw;
    bool left_dir;
    int j;  // 0 = seed (fills both directions' f[0])
  };

  struct Watch {
    int slot;
    int watch_edge;     // global edge whose drop is checked
    int expected_edge;  // cat-A only: the boundary merge that must happen first (-1 = none)
    int factor_num;     // 2 -> <= 2/3, 1 -> <= 1/3
    bool done = false;
  };

  void order_path(const WeightedGraph<W>& g) {
    if (g.n == 0) return;
    if (static_cast<int>(g.edges.size()) != g.n - 1)
      throw UsageError("path engine: input is not a simple path");
    if (g.n == 1) {
      vid_ = {0};
      return;
    }
    std::vector<std::vector<std::pair<int, int>>> adj(g.n);
    for (int e = 0; e < static_cast<int>(g.edges.size()); e++) {
      adj[g.edges[e].u].push_back({g.edges[e].v, e});
      adj[g.edges[e].v].push_back({g.edges[e].u, e});
    }
    int start = -1;
    for (int v = 0; v < g.n; v++) {
      if (adj[v].size() > 2) throw UsageError("path engine: input is not a simple path");
      if (adj[v].size() == 1 && start == -1) start = v;
    }
    if (start == -1) throw UsageError("path engine: input is not a simple path");
    vid_.reserve(g.n);
    eraw_.reserve(g.n - 1);
    int prev = -1, cur = start;
    for (;;) {
      vid_.push_back(cur);
      int next_v = -1, edge = -1;
      for (auto [nb, e] : adj[cur])
        if (nb != prev) {
          next_v = nb;
          edge = e;
        }
      if (next_v == -1) break;
      eraw_.push_back(g.edges[edge].w);
      prev = cur;
      cur = next_v;
    }
    if (static_cast<int>(vid_.size()) != g.n)
      throw UsageError("path engine: input is not a simple path");
    if (vid_.front() > vid_.back()) {
      std::reverse(vid_.begin(), vid_.end());
      std::reverse(eraw_.begin(), eraw_.end());
    }
  }

  int phase_bound(const WeightedGraph<W>& g) const {
    // T <= ceil(log_{3/2}(aspect * S^2)) + 1
    W target = aspect_ratio(g) * WeightTraits<W>::from_int(total_size_) *
               WeightTraits<W>::from_int(total_size_);
    const W ratio = WeightTraits<W>::from_int(3) / WeightTraits<W>::from_int(2);
    W acc = WeightTraits<W>::from_int(1);
    int k = 0;
    while (acc < target && k < 1000000) {
      acc = acc * ratio;
      k++;
    }
    return k + 1;
  }

  W edge_sim(int e) const {
    int l = eleft_[e];
    return normalized_similarity(eraw_[e], csz_[l], csz_[nxt_[l]]);
  }

  std::vector<int>& bucket_vec(int t) {
    if (t >= static_cast<int>(buckets_.size())) buckets_.resize(t + 1);
    return buckets_[t];
  }

  int bucket_of(const W& w) {
    const W two_thirds = WeightTraits<W>::from_int(2) / WeightTraits<W>::from_int(3);
    while (!(thr_.back() < w)) thr_.push_back(thr_.back() * two_thirds);
    int lo = 0, hi = static_cast<int>(thr_.size()) - 1;
    while (lo < hi) {
      int mid = (lo + hi) / 2;
      if (thr_[mid] < w)
        hi = mid;
      else
        lo = mid + 1;
    }
    return lo;
  }

  void enqueue(int e) {
    int t = bucket_of(edge_sim(e));
    if (audit_ && t < lastb_[e]) audit_->fail("bucket index decreased");
    lastb_[e] = t;
    if (enq_[e] == t) return;
    enq_[e] = t;
    bucket_vec(t).push_back(e);
  }

  pathdetail::SegmentSim<W> make_sim(const RunWork& rw, int lo_c, int hi_c) const {
    pathdetail::SegmentSim<W> sim;
    for (int c = lo_c; c <= hi_c; c++) {
      int slot = rw.slots[c];
      sim.size.push_back(csz_[slot]);
      sim.id.push_back(key_[slot]);
      if (c < hi_c) sim.raw.push_back(eraw_[rw.edges[c]]);
    }
    sim.init();
    return sim;
  }

  // Simulates one subchain under its two category hypotheses (category A
  // removes the subchain's peak-side cluster: it merged into the preceding
  // subchain and its far edge left the bucket). The outgoing boundary edge is
  // included with the next subchain's first cluster as a frozen-size target;
  // the f-value says whether that edge merged while still in the bucket.
  void classify(const W& lo, const ClassifyTask& task) {
    const RunWork& rw = *task.rw;
    ChainWork& cw = *task.cw;
    if (task.j == 0) {
      const Subchain& seed = cw.left[0];
      bool has_left = cw.left.size() > 1;
      bool has_right = cw.right.size() > 1;
      int ext_lo = seed.inner - (has_left ? 1 : 0);
      int ext_hi = seed.outer + (has_right ? 1 : 0);
      auto sim = make_sim(rw, ext_lo, ext_hi);
      sim.run(lo);
      if (has_left) {
        Category c = sim.merged(0) ? Category::A : Category::B;
        cw.fl[0] = {c, c};
      }
      if (has_right) {
        Category c = sim.merged(ext_hi - ext_lo - 1) ? Category::A : Category::B;
        cw.fr[0] = {c, c};
      }
      return;
    }
    const auto& list = task.left_dir ? cw.left : cw.right;
    auto& table = task.left_dir ? cw.fl : cw.fr;
    const Subchain& sc = list[task.j];
    std::array<Category, 2> f{Category::B, Category::B};
    for (int hyp = 0; hyp < 2; hyp++) {
      bool drop_inner = hyp == static_cast<int>(Category::A);
      if (task.left_dir) {
        int hi_c = drop_inner ? sc.inner - 1 : sc.inner;
        if (hi_c < sc.outer) continue;  // emptied: boundary endpoint merged away
        auto sim = make_sim(rw, sc.outer - 1, hi_c);  // frozen target at the left end
        sim.run(lo);
        f[hyp] = sim.merged(0) ? Category::A : Category::B;
      } else {
        int lo_c = drop_inner ? sc.inner + 1 : sc.inner;
        if (lo_c > sc.outer) continue;
        auto sim = make_sim(rw, lo_c, sc.outer + 1);  // frozen target at the right end
        sim.run(lo);
        f[hyp] = sim.merged(sc.outer + 1 - lo_c - 1) ? Category::A : Category::B;
      }
    }
    table[task.j] = f;
  }

  void audit_chain_arms(const RunWork& rw, const ChainDecomp& dec) {
    for (const auto& ch : dec.chains) {
      for (int e = ch.first_edge; e < ch.peak_edge; e++)
        if (rw.sims[e] > rw.sims[e + 1])
          audit_->fail("in-bucket weights not non-decreasing toward the reciprocal pair");
      for (int e = ch.peak_edge; e < ch.last_edge; e++)
        if (rw.sims[e + 1] > rw.sims[e])
          audit_->fail("in-bucket weights not non-increasing away from the reciprocal pair");
    }
  }

  void check_watches(int p, int q, int merged_edge) {
    for (auto& w : watches_) {
      if (w.done || (w.slot != p && w.slot != q)) continue;
      w.done = true;
      if (w.expected_edge >= 0 && merged_edge != w.expected_edge) {
        audit_->fail("category-A first cluster merged across the wrong edge");
        continue;
      }
      if (w.watch_edge == merged_edge || !ealive_[w.watch_edge]) continue;
      W before = edge_sim(w.watch_edge);
      long long grown = csz_[p] + csz_[q];
      int l = eleft_[w.watch_edge], r = nxt_[l];
      long long sl = (l == p || l == q) ? grown : csz_[l];
      long long sr = (r == p || r == q) ? grown : csz_[r];
      W after = normalized_similarity(eraw_[w.watch_edge], sl, sr);
      W bound = before * WeightTraits<W>::from_int(w.factor_num) / WeightTraits<W>::from_int(3);
      if (after > bound)
        audit_->fail(w.factor_num == 2 ? "2/3-drop violated" : "1/3-drop violated");
      else if (w.factor_num == 2)
        audit_->drop_checks_23++;
      else
        audit_->drop_checks_13++;
    }
  }

  // One sweep over the validated in-window edges; returns merges committed.
  int sweep(int t, const std::vector<int>& inwin) {
    const W lo = thr_[t];

    std::vector<RunWork> work;
    for (size_t i = 0; i < inwin.size();) {
      size_t j = i;
      while (j + 1 < inwin.size() && eleft_[inwin[j + 1]] == nxt_[eleft_[inwin[j]]]) j++;
      RunWork rw;
      rw.edges.assign(inwin.begin() + i, inwin.begin() + j + 1);
      work.push_back(std::move(rw));
      i = j + 1;
    }

    for (RunWork& rw : work) {
      rw.slots.push_back(eleft_[rw.edges[0]]);
      std::vector<int> lo_id, hi_id;
      for (int e : rw.edges) {
        rw.slots.push_back(nxt_[eleft_[e]]);
        rw.sims.push_back(edge_sim(e));
        int a = key_[eleft_[e]], b = key_[nxt_[eleft_[e]]];
        lo_id.push_back(std::min(a, b));
        hi_id.push_back(std::max(a, b));
      }
      auto dec = decompose_chains<W>(rw.sims, lo_id, hi_id);
      if (audit_) {
        audit_->deferred_strays += dec.valley_edges.size();
        audit_chain_arms(rw, dec);
      }
      for (const auto& ch : dec.chains) {
        ChainWork cw;
        cw.peak_edge = ch.peak_edge;
        std::vector<long long> lsz, rsz;
        for (int c = ch.peak_edge; c >= ch.first_edge; c--) lsz.push_back(csz_[rw.slots[c]]);
        for (int c = ch.peak_edge + 1; c <= ch.last_edge + 1; c++) rsz.push_back(csz_[rw.slots[c]]);
        auto lpieces = split_arm(lsz);
        auto rpieces = split_arm(rsz);
        Subchain seed;
        seed.inner = ch.peak_edge - (lpieces[0] - 1);   // leftmost seed cluster
        seed.outer = ch.peak_edge + 1 + (rpieces[0] - 1);  // rightmost seed cluster
        cw.left.push_back(seed);
        cw.right.push_back(seed);
        int pos = seed.inner - 1;
        for (size_t p = 1; p < lpieces.size(); p++) {
          Subchain sc;
          sc.inner = pos;
          sc.outer = pos - (lpieces[p] - 1);
          cw.left.push_back(sc);
          pos = sc.outer - 1;
        }
        pos = seed.outer + 1;
        for (size_t p = 1; p < rpieces.size(); p++) {
          Subchain sc;
          sc.inner = pos;
          sc.outer = pos + (rpieces[p] - 1);
          cw.right.push_back(sc);
          pos = sc.outer + 1;
        }
        if (audit_) {
          int seed_len = seed.outer - seed.inner + 1;
          audit_->max_seed_len = std::max(audit_->max_seed_len, seed_len);
          if (seed_len > 2 * log2_bound_) audit_->fail("seed subchain exceeds 2*(log2(S)+1)");
          for (size_t p = 1; p < lpieces.size(); p++) {
            audit_->max_subchain_len = std::max(audit_->max_subchain_len, lpieces[p]);
            if (lpieces[p] > log2_bound_) audit_->fail("subchain exceeds log2(S)+1");
          }
          for (size_t p = 1; p < rpieces.size(); p++) {
            audit_->max_subchain_len = std::max(audit_->max_subchain_len, rpieces[p]);
            if (rpieces[p] > log2_bound_) audit_->fail("subchain exceeds log2(S)+1");
          }
        }
        cw.fl.assign(cw.left.size() > 1 ? cw.left.size() - 1 : 0, {Category::B, Category::B});
        cw.fr.assign(cw.right.size() > 1 ? cw.right.size() - 1 : 0, {Category::B, Category::B});
        rw.chains.push_back(std::move(cw));
      }
    }

    // Stage 1: classify subchains under both hypotheses, in parallel.
    std::vector<ClassifyTask> tasks;
    for (auto& rw : work)
      for (auto& cw : rw.chains) {
        if (cw.left.size() > 1 || cw.right.size() > 1) tasks.push_back({&rw, &cw, true, 0});
        for (int j = 1; j < static_cast<int>(cw.left.size()) - 1; j++)
          tasks.push_back({&rw, &cw, true, j});
        for (int j = 1; j < static_cast<int>(cw.right.size()) - 1; j++)
          tasks.push_back({&rw, &cw, false, j});
      }
    parallel_for(workers_, static_cast<int>(tasks.size()), [&](int i) { classify(lo, tasks[i]); });

    // Category resolution per chain and direction.
    for (auto& rw : work)
      for (auto& cw : rw.chains) {
        if (cw.left.size() > 1) {
          auto cats = xor_category_scan(cw.fl);
          for (size_t j = 0; j < cw.left.size(); j++) cw.left[j].cat = cats[j];
        }
        if (cw.right.size() > 1) {
          auto cats = xor_category_scan(cw.fr);
          for (size_t j = 0; j < cw.right.size(); j++) cw.right[j].cat = cats[j];
        }
      }

    // Execution groups: category-A subchains donate their peak-side cluster
    // to the neighboring group toward the peak. Valley edges stay out; they
    // are re-bucketed after the commit and picked up by a later sweep.
    struct Group {
      RunWork* rw;
      int lo_c, hi_c;
      pathdetail::SegmentSim<W> sim;
    };
    std::vector<Group> groups;
    watches_.clear();
    for (auto& rw : work)
      for (auto& cw : rw.chains) {
        std::vector<std::pair<int, int>> spans;
        int seed_pos = static_cast<int>(cw.left.size()) - 1;
        for (int j = static_cast<int>(cw.left.size()) - 1; j >= 1; j--)
          spans.push_back({cw.left[j].outer, cw.left[j].inner});
        spans.push_back({cw.left[0].inner, cw.left[0].outer});
        for (int j = 1; j < static_cast<int>(cw.right.size()); j++)
          spans.push_back({cw.right[j].inner, cw.right[j].outer});
        for (int j = 1; j < static_cast<int>(cw.left.size()); j++) {
          if (cw.left[j].cat != Category::A) continue;
          int sp = seed_pos - j;
          spans[sp].second -= 1;
          spans[sp + 1].first -= 1;
        }
        for (int j = 1; j < static_cast<int>(cw.right.size()); j++) {
          if (cw.right[j].cat != Category::A) continue;
          int sp = seed_pos + j;
          spans[sp].first += 1;
          spans[sp - 1].second += 1;
        }
        if (audit_) {
          add_watches(rw, cw);
          for (auto [lo_c, hi_c] : spans) {
            if (lo_c > hi_c) continue;
            audit_->max_group_len = std::max(audit_->max_group_len, hi_c - lo_c + 1);
            if (hi_c - lo_c + 1 > 2 * log2_bound_ + 2)
              audit_->fail("execution group exceeds 2*(log2(S)+1)+2");
          }
        }
        for (auto [lo_c, hi_c] : spans)
          if (lo_c <= hi_c) groups.push_back({&rw, lo_c, hi_c, {}});
      }

    // Stage 2: exact simulation per group, in parallel.
    parallel_for(workers_, static_cast<int>(groups.size()), [&](int i) {
      Group& g = groups[i];
      g.sim = make_sim(*g.rw, g.lo_c, g.hi_c);
      g.sim.run(lo);
    });

    // Commit in canonical order (groups were built left to right).
    int committed = 0;
    for (auto& g : groups) {
      for (const auto& m : g.sim.merges) {
        int e = g.rw->edges[g.lo_c + m.edge];
        int p = eleft_[e], q = nxt_[p];
        W s = edge_sim(e);
        if (audit_) {
          if (!(s == m.sim)) audit_->fail("commit similarity mismatch");
          check_watches(p, q, e);
        }
        int step = static_cast<int>(out_.merges.size()) + 1;
        int parent = out_.leaf_count - 1 + step;
        out_.merges.push_back({step, std::min(cid_[p], cid_[q]), std::max(cid_[p], cid_[q]), parent,
                               s, csz_[p] + csz_[q]});
        csz_[p] += csz_[q];
        cid_[p] = parent;
        key_[p] = std::min(key_[p], key_[q]);
        ealive_[e] = 0;
        nxt_[p] = nxt_[q];
        if (nxt_[q] != -1) prv_[nxt_[q]] = p;
        redge_[p] = redge_[q];
        if (redge_[q] != -1) eleft_[redge_[q]] = p;
        committed++;
      }
    }
    if (committed == 0) throw UsageError("path engine: sweep made no progress");
    if (audit_) {
      for (auto& rw : work)
        for (auto& cw : rw.chains)
          if (ealive_[rw.edges[cw.peak_edge]]) audit_->fail("reciprocal pair did not merge");
      for (const auto& w : watches_)
        if (!w.done && w.expected_edge >= 0 && ealive_[w.expected_edge])
          audit_->fail("category-A boundary edge never merged");
    }

    for (int e : inwin)
      if (ealive_[e]) enqueue(e);
    return committed;
  }

  // Registers drop-lemma watches for realized categories (audit runs only).
  void add_watches(const RunWork& rw, const ChainWork& cw) {
    int last_edge = static_cast<int>(rw.edges.size()) - 1;
    for (int dir = 0; dir < 2; dir++) {
      const auto& list = dir == 0 ? cw.left : cw.right;
      bool leftward = dir == 0;
      for (int j = 1; j < static_cast<int>(list.size()); j++) {
        const Subchain& sc = list[j];
        int len = leftward ? sc.inner - sc.outer + 1 : sc.outer - sc.inner + 1;
        int inward_edge = leftward ? sc.inner : sc.inner - 1;    // run edge toward the peak
        int outward_edge = leftward ? sc.inner - 1 : sc.inner;   // run edge away from it
        if (sc.cat == Category::A) {
          Watch w;
          w.slot = rw.slots[sc.inner];
          w.expected_edge = rw.edges[inward_edge];
          w.watch_edge = outward_edge >= 0 && outward_edge <= last_edge ? rw.edges[outward_edge] : -1;
          w.factor_num = 2;
          if (w.watch_edge >= 0) watches_.push_back(w);
        } else if (len >= 2) {
          Watch w;
          w.slot = rw.slots[sc.inner];
          w.expected_edge = -1;
          w.watch_edge = rw.edges[inward_edge];
          w.factor_num = 1;
          watches_.push_back(w);
        }
      }
    }
  }

  int workers_;
  PathAudit* audit_;
  int n_ = 0;
  long long total_size_ = 0;
  int log2_bound_ = 1;
  std::vector<int> vid_;
  std::vector<W> eraw_;
  std::vector<char> ealive_;
  std::vector<int> eleft_, enq_, lastb_;
  std::vector<int> nxt_, prv_, redge_;
  std::vector<long long> csz_;
  std::vector<int> cid_;  // evolving dendrogram ids (record metadata)
  std::vector<int> key_;  // min contained original vertex (tie rule)
  std::vector<W> thr_;
  std::vector<std::vector<int>> buckets_;
  std::vector<Watch> watches_;
  Dendrogram<W> out_;
};

// Average-linkage HAC on a simple path. Deterministic for any worker count:
// classification and group simulations are pure parallel tasks and merges
// commit in canonical left-to-right order.
template <class W>
inline Dendrogram<W> run_path_hac(const WeightedGraph<W>& g, int workers = 1,
                                  PathAudit* audit = nullptr) {
  PathRunner<W> runner(g, workers, audit);
  return runner.run();
}

}  // namespace hac
