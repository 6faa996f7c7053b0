#pragma once

#include <cstdint>
#include <random>
#include <set>

#include "hac/graph.hpp"
#include "hac/rational.hpp"
#include "hac/reductions.hpp"

namespace hac::gen {

// Seeded generator with hand-rolled distributions so instances are
// reproducible across platforms. The name appears in reports for replay.
class Rng {
 public:
  static constexpr const char* kName = "mt19937_64-hac/v1";
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t u64() { return eng_(); }

  std::uint64_t below(std::uint64_t k) {  // uniform in [0, k)
    if (k == 0) throw UsageError("below(0)");
    std::uint64_t limit = UINT64_MAX - UINT64_MAX % k;
    for (;;) {
      std::uint64_t v = eng_();
      if (v < limit) return v % k;
    }
  }

  long long range(long long lo, long long hi) {  // inclusive
    return lo + static_cast<long long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

 private:
  std::mt19937_64 eng_;
};

// Distinct positive rationals in [1, max_value]; denominators are small
// powers of two so aggregated sums stay cheap to compare exactly.
inline std::vector<Rational> distinct_weights(int count, long long max_value, Rng& rng) {
  std::set<std::pair<long long, long long>> seen;
  std::vector<Rational> out;
  while (static_cast<int>(out.size()) < count) {
    long long den = 1LL << rng.range(0, 6);
    long long num = rng.range(den, max_value * den);
    long long g = std::__gcd(num, den);
    if (!seen.insert({num / g, den / g}).second) continue;
    out.push_back(Rational::fraction(num, den));
  }
  return out;
}

inline WeightedGraph<Rational> random_path(int n, long long max_value, Rng& rng) {
  WeightedGraph<Rational> g;
  g.n = n;
  if (n < 2) return g;
  auto ws = distinct_weights(n - 1, max_value, rng);
  for (int i = 0; i + 1 < n; i++) g.edges.push_back({i, i + 1, ws[i]});
  return g;
}

// Connected graph: random spanning tree plus extra distinct edges.
inline WeightedGraph<Rational> random_connected(int n, int m, Rng& rng, long long max_value = 1000000,
                                                bool distinct = true) {
  if (m < n - 1) throw UsageError("random_connected: too few edges");
  long long max_m = static_cast<long long>(n) * (n - 1) / 2;
  if (m > max_m) throw UsageError("random_connected: too many edges");
  std::set<std::pair<int, int>> used;
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v < n; v++) {
    int u = static_cast<int>(rng.below(v));
    pairs.push_back({std::min(u, v), std::max(u, v)});
    used.insert(pairs.back());
  }
  while (static_cast<int>(pairs.size()) < m) {
    int u = static_cast<int>(rng.below(n));
    int v = static_cast<int>(rng.below(n));
    if (u == v) continue;
    auto key = std::make_pair(std::min(u, v), std::max(u, v));
    if (!used.insert(key).second) continue;
    pairs.push_back(key);
  }
  WeightedGraph<Rational> g;
  g.n = n;
  if (distinct) {
    auto ws = distinct_weights(m, max_value, rng);
    for (int i = 0; i < m; i++) g.edges.push_back({pairs[i].first, pairs[i].second, ws[i]});
  } else {
    for (int i = 0; i < m; i++)
      g.edges.push_back({pairs[i].first, pairs[i].second, Rational(rng.range(1, 4))});
  }
  return g;
}

inline reductions::SimpleGraph random_simple(int t, int density_percent, Rng& rng) {
  reductions::SimpleGraph g;
  g.t = t;
  for (int u = 0; u < t; u++)
    for (int v = u + 1; v < t; v++)
      if (rng.below(100) < static_cast<std::uint64_t>(density_percent)) g.edges.push_back({u, v});
  return g;
}

inline std::vector<int> random_permutation(int n, Rng& rng) {
  std::vector<int> p(n);
  for (int i = 0; i < n; i++) p[i] = i;
  for (int i = n - 1; i > 0; i--) std::swap(p[i], p[static_cast<int>(rng.below(i + 1))]);
  return p;
}

inline reductions::AdaptiveMinInstance random_admin(int n, Rng& rng) {
  reductions::AdaptiveMinInstance inst;
  inst.n = n;
  for (int i = 0; i < n; i++) inst.a.push_back(random_permutation(n, rng));
  inst.x = static_cast<int>(rng.below(n));
  return inst;
}

inline reductions::LfmInstance random_lfm(int n, Rng& rng) {
  reductions::LfmInstance inst;
  inst.n = n;
  for (int l = 0; l < n; l++)
    for (int r = 0; r < n; r++)
      if (rng.below(2) == 0) inst.edges.push_back({l, r});
  if (inst.edges.empty()) inst.edges.push_back({static_cast<int>(rng.below(n)),
                                                static_cast<int>(rng.below(n))});
  inst.query = inst.edges[rng.below(inst.edges.size())];
  return inst;
}

// All simple graphs on t vertices up to isomorphism (canonical form by
// minimizing the adjacency bitmask over vertex permutations).
inline std::vector<reductions::SimpleGraph> all_graphs_up_to_iso(int t) {
  int bits = t * (t - 1) / 2;
  auto pair_bit = [t](int u, int v) {
    if (u > v) std::swap(u, v);
    // index of (u, v) in lexicographic pair order
    return u * t - u * (u + 1) / 2 + (v - u - 1);
  };
  std::vector<int> perm(t);
  for (int i = 0; i < t; i++) perm[i] = i;
  std::set<std::uint64_t> canon_seen;
  std::vector<reductions::SimpleGraph> out;
  for (std::uint64_t mask = 0; mask < (1ULL << bits); mask++) {
    std::uint64_t canon = UINT64_MAX;
    std::vector<int> p = perm;
    do {
      std::uint64_t m2 = 0;
      for (int u = 0; u < t; u++)
        for (int v = u + 1; v < t; v++)
          if (mask >> pair_bit(u, v) & 1) m2 |= 1ULL << pair_bit(p[u], p[v]);
      canon = std::min(canon, m2);
    } while (std::next_permutation(p.begin(), p.end()));
    if (!canon_seen.insert(canon).second) continue;
    reductions::SimpleGraph g;
    g.t = t;
    for (int u = 0; u < t; u++)
      for (int v = u + 1; v < t; v++)
        if (canon >> pair_bit(u, v) & 1) g.edges.push_back({u, v});
    out.push_back(std::move(g));
  }
  return out;
}

}  // namespace hac::gen
