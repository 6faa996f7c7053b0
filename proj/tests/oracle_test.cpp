#include <doctest.h>

#include "hac/generators.hpp"
#include "hac/graph_io.hpp"
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

TEST_SUITE_BEGIN("oracle");

TEST_CASE("path 0-1-2 with weights (3,2)") {
  auto d = run_greedy(make_graph(3, {{0, 1, Rational(3)}, {1, 2, Rational(2)}}));
  REQUIRE(d.merges.size() == 2);
  CHECK(d.merges[0].a == 0);
  CHECK(d.merges[0].b == 1);
  CHECK(d.merges[0].similarity == Rational(3));
  CHECK(d.merges[0].parent == 3);
  CHECK(d.merges[1].similarity == Rational(1));  // 2 / (2*1)
  CHECK(d.merges[1].size == 3);
}

TEST_CASE("single vertex yields an empty dendrogram") {
  WeightedGraph<Rational> g;
  g.n = 1;
  auto d = run_greedy(g);
  CHECK(d.merges.empty());
  CHECK(d.leaf_count == 1);
}

TEST_CASE("two components merge in weight order") {
  auto d = run_greedy(make_graph(4, {{0, 1, Rational(5)}, {2, 3, Rational(7)}}));
  REQUIRE(d.merges.size() == 2);
  CHECK(d.merges[0].a == 2);
  CHECK(d.merges[0].b == 3);
  CHECK(d.merges[1].a == 0);
  CHECK(d.merges[1].b == 1);
}

TEST_CASE("initial sizes scale similarities") {
  auto d = run_greedy_with_sizes(make_graph(2, {{0, 1, Rational(1)}}, {2, 3}));
  REQUIRE(d.merges.size() == 1);
  CHECK(d.merges[0].similarity == Rational::fraction(1, 6));
  CHECK(d.merges[0].size == 5);
}

TEST_CASE("all-ones sizes match the unsized run") {
  gen::Rng rng(3);
  auto g = gen::random_connected(12, 20, rng);
  auto d1 = run_greedy(g);
  auto g2 = g;
  g2.sizes.assign(g.n, 1);
  auto d2 = run_greedy_with_sizes(g2);
  CHECK(dendrograms_equal(d1, d2));
}

TEST_CASE("sized star merges the heavier normalized leaf first") {
  // center size 4 with leaves of weight 1/3 and 1/5
  auto d = run_greedy(make_graph(
      3, {{0, 1, Rational::fraction(1, 3)}, {0, 2, Rational::fraction(1, 5)}}, {4, 1, 1}));
  REQUIRE(d.merges.size() == 2);
  CHECK(d.merges[0].b == 1);
  CHECK(d.merges[0].similarity == Rational::fraction(1, 12));
}

TEST_CASE("similarity sequence is non-increasing and runs are deterministic") {
  gen::Rng rng(11);
  for (int iter = 0; iter < 30; iter++) {
    int n = 2 + static_cast<int>(rng.below(24));
    int maxm = n * (n - 1) / 2;
    int m = std::min(maxm, n - 1 + static_cast<int>(rng.below(n + 1)));
    auto g = gen::random_connected(n, m, rng);
    auto d1 = run_greedy(g);
    auto d2 = run_greedy(g);
    CHECK(similarity_nonincreasing(d1));
    CHECK(d1.merges.size() == static_cast<size_t>(n - 1));
    CHECK(io::dendrogram_to_string(d1) == io::dendrogram_to_string(d2));
    validate_dendrogram(d1);
  }
}

TEST_CASE("merge count equals n minus component count") {
  auto d = run_greedy(make_graph(7, {{0, 1, Rational(2)},
                                     {1, 2, Rational(1)},
                                     {3, 4, Rational(5)},
                                     {5, 6, Rational::fraction(1, 2)}}));
  CHECK(d.merges.size() == 7 - 3);
}

TEST_SUITE_END();
