#include <doctest.h>

#include "hac/cluster_state.hpp"
#include "hac/dendrogram.hpp"
#include "hac/generators.hpp"
#include "hac/graph.hpp"
#include "hac/oracle.hpp"

using namespace hac;

namespace {

WeightedGraph<Rational> make_graph(int n, std::vector<std::tuple<int, int, Rational>> edges,
                                   std::vector<long long> sizes = {}) {
  WeightedGraph<Rational> g;
  g.n = n;
  g.sizes = std::move(sizes);
  for (auto& [u, v, w] : edges) g.edges.push_back({u, v, w});
  return g;
}

}  // namespace

TEST_SUITE_BEGIN("core");

TEST_CASE("normalized similarity") {
  CHECK(normalized_similarity(Rational(6), 2, 3) == Rational(1));
  CHECK(normalized_similarity(Rational::fraction(7, 3), 1, 1) == Rational::fraction(7, 3));
  CHECK(normalized_similarity(Rational(5), 2, 2) == Rational::fraction(5, 4));
  CHECK(normalized_similarity(0.5, 1, 2) == 0.25);
  CHECK_THROWS_AS(normalized_similarity(Rational(1), 0, 1), UsageError);
}

TEST_CASE("graph validation") {
  CHECK_THROWS_AS(validate_graph(make_graph(2, {{0, 0, Rational(1)}})), UsageError);
  CHECK_THROWS_AS(validate_graph(make_graph(2, {{0, 1, Rational(0)}})), UsageError);
  CHECK_THROWS_AS(validate_graph(make_graph(2, {{0, 1, Rational(1)}, {1, 0, Rational(2)}})),
                  UsageError);
  CHECK_THROWS_AS(validate_graph(make_graph(2, {{0, 2, Rational(1)}})), UsageError);
  CHECK_THROWS_AS(validate_graph(make_graph(2, {{0, 1, Rational(1)}}, {1, 0})), UsageError);
  CHECK_NOTHROW(validate_graph(make_graph(3, {{0, 1, Rational(1)}, {1, 2, Rational(2)}})));
}

TEST_CASE("contract_edge basics") {
  // Triangle with w(a,b)=5, w(b,c)=3, w(a,c)=2: contracting (a,b) leaves one
  // edge of summed weight 5 to c.
  auto g = make_graph(3, {{0, 1, Rational(5)}, {1, 2, Rational(3)}, {0, 2, Rational(2)}});
  ClusterState<Rational> st(g);
  int z = st.contract(0, 1);
  CHECK(z == 3);
  CHECK(st.size(z) == 2);
  CHECK(st.weight_between(z, 2) == Rational(5));
  CHECK_FALSE(st.active(0));
  CHECK_FALSE(st.active(1));
  CHECK(st.active_count() == 2);

  SUBCASE("pair contracts to an edgeless cluster") {
    auto g2 = make_graph(2, {{0, 1, Rational(7)}});
    ClusterState<Rational> st2(g2);
    int z2 = st2.contract(0, 1);
    CHECK(st2.size(z2) == 2);
    CHECK(st2.neighbors(z2).empty());
  }

  SUBCASE("star: contracting center with one leaf keeps the other weight") {
    auto g3 = make_graph(3, {{0, 1, Rational(4)}, {0, 2, Rational(9)}});
    ClusterState<Rational> st3(g3);
    int z3 = st3.contract(0, 1);
    CHECK(st3.weight_between(z3, 2) == Rational(9));
  }

  SUBCASE("usage errors") {
    ClusterState<Rational> st4(g);
    CHECK_THROWS_AS(st4.contract(0, 0), UsageError);
    st4.contract(0, 1);
    CHECK_THROWS_AS(st4.contract(0, 2), UsageError);  // 0 is inactive now
    auto g5 = make_graph(3, {{0, 1, Rational(1)}});
    ClusterState<Rational> st5(g5);
    CHECK_THROWS_AS(st5.contract(0, 2), UsageError);  // zero aggregated weight
    CHECK_NOTHROW(st5.contract(0, 2, /*allow_zero_weight=*/true));
  }
}

TEST_CASE("conservation under random contractions") {
  gen::Rng rng(7);
  for (int iter = 0; iter < 40; iter++) {
    int n = 3 + static_cast<int>(rng.below(30));
    int maxm = n * (n - 1) / 2;
    int m = n - 1 + static_cast<int>(rng.below(std::min(n, maxm - n + 2)));
    auto g = gen::random_connected(n, m, rng);
    ClusterState<Rational> st(g);
    long long total = st.total_active_size();
    // contract random adjacent pairs; after each, re-derive aggregated
    // weights from the original edges and compare.
    std::vector<int> member(n);
    for (int v = 0; v < n; v++) member[v] = v;
    for (int step = 0; step < n / 2; step++) {
      int a = -1, b = -1;
      for (int c = 0; c < st.cluster_count() && a == -1; c++)
        if (st.active(c) && !st.neighbors(c).empty()) {
          a = c;
          b = st.neighbors(c).begin()->first;
        }
      if (a == -1) break;
      int z = st.contract(a, b);
      for (int v = 0; v < n; v++)
        if (member[v] == a || member[v] == b) member[v] = z;
      CHECK(st.total_active_size() == total);
      std::map<std::pair<int, int>, Rational> want;
      for (const auto& e : g.edges) {
        int cu = member[e.u], cv = member[e.v];
        if (cu == cv) continue;
        auto key = std::minmax(cu, cv);
        auto it = want.find(key);
        if (it == want.end())
          want.emplace(key, e.w);
        else
          it->second += e.w;
      }
      for (auto& [key, w] : want) CHECK(st.weight_between(key.first, key.second) == w);
      size_t live_edges = 0;
      for (int c = 0; c < st.cluster_count(); c++)
        if (st.active(c)) live_edges += st.neighbors(c).size();
      CHECK(live_edges == 2 * want.size());
    }
  }
}

TEST_CASE("merge_index") {
  SUBCASE("single edge") {
    auto d = run_greedy(make_graph(2, {{0, 1, Rational(1)}}));
    CHECK(merge_index(d, 0, 1) == 1);
  }
  SUBCASE("path 0-1-2 with weights (3,2)") {
    auto d = run_greedy(make_graph(3, {{0, 1, Rational(3)}, {1, 2, Rational(2)}}));
    CHECK(merge_index(d, 0, 2) == 2);
    CHECK(merge_index(d, 0, 1) == 1);
  }
  SUBCASE("disconnected pair never merges") {
    auto d = run_greedy(make_graph(4, {{0, 1, Rational(1)}, {2, 3, Rational(2)}}));
    CHECK_FALSE(merge_index(d, 0, 2).has_value());
    CHECK(merge_index(d, 2, 3).has_value());
  }
  SUBCASE("usage errors") {
    auto d = run_greedy(make_graph(2, {{0, 1, Rational(1)}}));
    CHECK_THROWS_AS(merge_index(d, 0, 0), UsageError);
    CHECK_THROWS_AS(merge_index(d, 0, 5), UsageError);
  }
}

TEST_CASE("dendrogram stats") {
  SUBCASE("single vertex") {
    WeightedGraph<Rational> g;
    g.n = 1;
    auto d = run_greedy(g);
    auto s = dendrogram_stats(d);
    CHECK(s.height == 0);
    CHECK(s.merge_count == 0);
  }
  SUBCASE("caterpillar") {
    // Strictly decreasing path weights force merges onto one growing cluster.
    auto g = make_graph(5, {{0, 1, Rational(100)},
                            {1, 2, Rational::fraction(1, 2)},
                            {2, 3, Rational::fraction(1, 100)},
                            {3, 4, Rational::fraction(1, 5000)}});
    auto d = run_greedy(g);
    auto s = dendrogram_stats(d);
    CHECK(s.merge_count == 4);
    CHECK(s.height == 4);
  }
  SUBCASE("balanced four leaves") {
    auto g = make_graph(4, {{0, 1, Rational(10)}, {2, 3, Rational(9)}, {1, 2, Rational(1)}});
    auto d = run_greedy(g);
    CHECK(dendrogram_stats(d).height == 2);
  }
}

TEST_CASE("aspect ratio") {
  CHECK(aspect_ratio(make_graph(3, {{0, 1, Rational(3)}, {1, 2, Rational(3)}})) == Rational(1));
  CHECK(aspect_ratio(make_graph(3, {{0, 1, Rational(1)}, {1, 2, Rational(4)}})) == Rational(4));
  CHECK(aspect_ratio(make_graph(3, {{0, 1, Rational::fraction(1, 3)}, {1, 2, Rational(3)}})) ==
        Rational(9));
  WeightedGraph<Rational> empty;
  empty.n = 2;
  CHECK_THROWS_AS(aspect_ratio(empty), UsageError);
}

TEST_CASE("dendrogram equality is structural") {
  auto g = make_graph(4, {{0, 1, Rational(10)}, {2, 3, Rational(9)}, {1, 2, Rational(1)}});
  auto d1 = run_greedy(g);
  auto d2 = run_greedy(g);
  CHECK(dendrograms_equal(d1, d2));
  // Different tree: chain the merges instead.
  auto g2 = make_graph(4, {{0, 1, Rational(10)}, {1, 2, Rational(9)}, {2, 3, Rational(8)}});
  auto d3 = run_greedy(g2);
  CHECK_FALSE(dendrograms_equal(d1, d3));
  validate_dendrogram(d1);
  validate_dendrogram(d3);
}

TEST_SUITE_END();
