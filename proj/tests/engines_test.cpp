#include <doctest.h>

#include "hac/cluster_state.hpp"
#include "hac/engines.hpp"
#include "hac/generators.hpp"

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

// Checks the neighbor heaps against a ClusterState replay of the merges made
// so far: every stored raw weight matches the aggregated crossing weight,
// every priority equals w / (S*S), entries are symmetric, and no entry
// references an inactive cluster.
void audit_heaps(const WeightedGraph<Rational>& g, const EngineState<Rational>& st) {
  ClusterState<Rational> ref(g);
  for (const auto& m : st.dendro.merges) ref.contract(m.a, m.b);
  for (int c = 0; c < st.n; c++) {
    if (!st.active[c]) continue;
    int id = st.dendro_id[c];
    REQUIRE(ref.active(id));
    REQUIRE(ref.size(id) == st.size[c]);
    const auto& heap = st.heaps[c];
    REQUIRE(static_cast<size_t>(heap.size()) == ref.neighbors(id).size());
    for (const auto& e : heap.entries()) {
      REQUIRE(st.active[e.nbr]);
      int nid = st.dendro_id[e.nbr];
      REQUIRE(ref.weight_between(id, nid) == e.raw);
      REQUIRE(e.sim == normalized_similarity(e.raw, st.size[c], st.size[e.nbr]));
      REQUIRE(st.heaps[e.nbr].contains(c));
    }
  }
}

}  // namespace

TEST_SUITE_BEGIN("engines");

TEST_CASE("merge_clusters updates common neighbors") {
  // Triangle 5/3/2: after merging a=0 into b=1, c's single entry carries
  // raw 5 at priority 5/2.
  auto g = make_graph(3, {{0, 1, Rational(5)}, {1, 2, Rational(3)}, {0, 2, Rational(2)}});
  EngineState<Rational> st(g);
  auto out = st.merge_clusters(0, 1);
  CHECK(out.survivor == 1);
  CHECK(out.similarity == Rational(5));
  REQUIRE(st.heaps[2].size() == 1);
  CHECK(st.heaps[2].top()->nbr == 1);
  CHECK(st.heaps[2].top()->raw == Rational(5));
  CHECK(st.heaps[2].top()->sim == Rational::fraction(5, 2));
  CHECK(st.dendro_id[1] == 3);
  audit_heaps(g, st);
}

TEST_CASE("merge_clusters with disjoint neighborhoods") {
  auto g = make_graph(2, {{0, 1, Rational(4)}});
  EngineState<Rational> st(g);
  auto out = st.merge_clusters(0, 1);
  CHECK(st.heaps[out.survivor].empty());
  CHECK(st.telemetry.merges == 1);
}

TEST_CASE("merge_clusters redirects a-only neighbors") {
  auto g = make_graph(3, {{0, 1, Rational(1)}, {0, 2, Rational(4)}});
  EngineState<Rational> st(g);
  st.merge_clusters(0, 1);
  REQUIRE(st.heaps[2].size() == 1);
  CHECK(st.heaps[2].top()->nbr == 1);
  CHECK(st.heaps[2].top()->sim == Rational(2));  // 4 / (2*1)
  audit_heaps(g, st);
}

TEST_CASE("merge_clusters usage errors") {
  auto g = make_graph(3, {{0, 1, Rational(1)}});
  EngineState<Rational> st(g);
  CHECK_THROWS_AS(st.merge_clusters(0, 0), UsageError);
  CHECK_THROWS_AS(st.merge_clusters(0, 2), UsageError);  // not adjacent
  st.merge_clusters(0, 1);
  CHECK_THROWS_AS(st.merge_clusters(0, 1), UsageError);
}

TEST_CASE("best_edge") {
  auto g = make_graph(4, {{0, 1, Rational(3)}, {0, 2, Rational(1)}});
  EngineState<Rational> st(g);
  auto be = st.best_edge(0);
  REQUIRE(be.has_value());
  CHECK(be->nbr == 1);
  CHECK(be->sim == Rational(3));
  CHECK_FALSE(st.best_edge(3).has_value());

  SUBCASE("priority ties pick the lower cluster id") {
    auto g2 = make_graph(8, {{5, 7, Rational(2)}, {5, 4, Rational(2)}});
    EngineState<Rational> st2(g2);
    CHECK(st2.best_edge(5)->nbr == 4);
  }
  SUBCASE("flipped tie rule picks the higher id (fault injection)") {
    auto g2 = make_graph(8, {{5, 7, Rational(2)}, {5, 4, Rational(2)}});
    EngineOptions opts;
    opts.flip_tie_rule = true;
    EngineState<Rational> st2(g2, opts);
    CHECK(st2.best_edge(5)->nbr == 7);
  }
}

TEST_CASE("nn-chain on the 3-path equals the oracle") {
  auto g = make_graph(3, {{0, 1, Rational(3)}, {1, 2, Rational(2)}});
  auto d = run_nn_chain(g);
  CHECK(dendrograms_equal(d, run_greedy(g)));
  validate_dendrogram(d);
}

TEST_CASE("nn-chain on two vertices") {
  auto g = make_graph(2, {{0, 1, Rational(1)}});
  auto d = run_nn_chain(g);
  REQUIRE(d.merges.size() == 1);
}

TEST_CASE("nn-chain walks the increasing path") {
  // Weights 1 + i/100: the chain walks to the heavy end before merging.
  WeightedGraph<Rational> g;
  g.n = 10;
  for (int i = 0; i + 1 < g.n; i++)
    g.edges.push_back({i, i + 1, Rational(1) + Rational::fraction(i + 1, 100)});
  auto d = run_nn_chain(g);
  CHECK(dendrograms_equal(d, run_greedy(g)));
}

TEST_CASE("nn-chain reseeds survivors left by an emptied stack") {
  // Seeding from 0 merges 3 into 0; seeding from 1 merges 2 into 1. Both
  // survivors sit on already-visited slots and the (0,1) edge is still live;
  // the reseeding pass must finish the component.
  auto g = make_graph(4, {{0, 3, Rational(100)}, {1, 2, Rational(10)}, {0, 1, Rational(1)}});
  auto d = run_nn_chain(g);
  CHECK(d.merges.size() == 3);
  CHECK(dendrograms_equal(d, run_greedy(g)));
}

TEST_CASE("heap engine matches the oracle on fixtures") {
  SUBCASE("3-path") {
    auto g = make_graph(3, {{0, 1, Rational(3)}, {1, 2, Rational(2)}});
    auto r = run_heap_based(g);
    CHECK(dendrograms_equal(r.dendrogram, run_greedy(g)));
  }
  SUBCASE("K4 with random distinct rationals") {
    gen::Rng rng(1234);
    auto g = gen::random_connected(4, 6, rng);
    auto r = run_heap_based(g);
    CHECK(dendrograms_equal(r.dendrogram, run_greedy(g)));
  }
  SUBCASE("single edge telemetry") {
    auto g = make_graph(2, {{0, 1, Rational(1)}});
    auto r = run_heap_based(g);
    CHECK(r.telemetry.merges == 1);
    CHECK(r.telemetry.unsuccessful_extractions == 0);
  }
}

TEST_CASE("engine equivalence with heap audits on random graphs") {
  gen::Rng rng(99);
  for (int iter = 0; iter < 60; iter++) {
    int n = 2 + static_cast<int>(rng.below(30));
    int maxm = n * (n - 1) / 2;
    int m = std::min(maxm, n - 1 + static_cast<int>(rng.below(n + 1)));
    auto g = gen::random_connected(n, m, rng);
    auto oracle = run_greedy(g);
    AfterMergeHook<Rational> hook = [&](const EngineState<Rational>& st) { audit_heaps(g, st); };
    auto heap = run_heap_based(g, {}, &hook);
    auto chain = run_nn_chain(g, nullptr, {}, &hook);
    CHECK(dendrograms_equal(heap.dendrogram, oracle));
    CHECK(dendrograms_equal(chain, oracle));
    CHECK(heap.telemetry.unsuccessful_extractions <= g.edges.size());
    auto h = dendrogram_stats(heap.dendrogram).height;
    CHECK(heap.telemetry.neighbor_elements_touched <= 2 * g.edges.size() * h);
  }
}

TEST_CASE("heap engine matches the oracle under ties") {
  gen::Rng rng(5);
  for (int iter = 0; iter < 40; iter++) {
    int n = 2 + static_cast<int>(rng.below(20));
    int maxm = n * (n - 1) / 2;
    int m = std::min(maxm, n - 1 + static_cast<int>(rng.below(n + 1)));
    auto g = gen::random_connected(n, m, rng, 4, /*distinct=*/false);
    auto r = run_heap_based(g);
    CHECK(dendrograms_equal(r.dendrogram, run_greedy(g)));
  }
}

TEST_CASE("telemetry counters are populated") {
  gen::Rng rng(2);
  auto g = gen::random_connected(24, 40, rng);
  auto r = run_heap_based(g);
  CHECK(r.telemetry.merges == 23);
  CHECK(r.telemetry.heap_ops > 0);
  CHECK(r.telemetry.best_edge_calls > 0);
  CHECK(r.telemetry.neighbor_elements_touched > 0);
}

TEST_SUITE_END();
