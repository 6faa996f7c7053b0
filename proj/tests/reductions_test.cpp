#include <doctest.h>

#include <sstream>

#include "hac/engines.hpp"
#include "hac/generators.hpp"
#include "hac/oracle.hpp"
#include "hac/reductions.hpp"

using namespace hac;
using namespace hac::reductions;

TEST_SUITE_BEGIN("reductions");

namespace {

SimpleGraph k3() { return {3, {{0, 1}, {1, 2}, {0, 2}}}; }
SimpleGraph path3() { return {3, {{0, 1}, {1, 2}}}; }

}  // namespace

TEST_CASE("triangle gadget shape") {
  auto inst = build_triangle_instance(k3());
  CHECK(inst.gadget.n == 3 + 9);
  CHECK(inst.gadget.edges.size() == 9 + 3);
  CHECK(inst.eps == Rational::fraction(1, 108));

  SUBCASE("round-1 weights follow the neighborhood of vertex 0") {
    auto p = build_triangle_instance(path3());
    // neighbors of v_1 (= vertex 0) get 1 - eps; non-neighbors (incl. vertex
    // 0 itself) get 1 + eps.
    Rational eps = p.eps;
    std::map<std::pair<int, int>, Rational> w;
    for (const auto& e : p.gadget.edges) w[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.w;
    int leaf0 = 3, leaf1 = 4, leaf2 = 5;  // round 1 leaves of cores 0,1,2
    CHECK(w[{0, leaf0}] == Rational(1) + eps);
    CHECK(w[{1, leaf1}] == Rational(1) - eps);
    CHECK(w[{2, leaf2}] == Rational(1) + eps);
  }
  SUBCASE("empty graph gets only type-2 leaf edges") {
    SimpleGraph g{3, {}};
    auto p = build_triangle_instance(g);
    CHECK(p.gadget.edges.size() == 9);
    for (const auto& e : p.gadget.edges) {
      int round = p.leaf_round(std::max(e.u, e.v));
      CHECK(e.w == Rational::fraction(1, round) + p.eps);
    }
  }
  SUBCASE("too small") { CHECK_THROWS_AS(build_triangle_instance({2, {{0, 1}}}), UsageError); }
}

TEST_CASE("triangle detection fixtures") {
  CHECK(detect_triangle_via_hac(build_triangle_instance(k3())));
  CHECK_FALSE(detect_triangle_via_hac(build_triangle_instance(path3())));
  SimpleGraph c4{4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}}};
  CHECK_FALSE(detect_triangle_via_hac(build_triangle_instance(c4)));
  CHECK(brute_force_has_triangle(k3()));
  CHECK_FALSE(brute_force_has_triangle(c4));

  SUBCASE("K3 core-core merge lands at step 2 with similarity 1") {
    auto inst = build_triangle_instance(k3());
    auto d = run_heap_based<Rational>(inst.gadget).dendrogram;
    // Step 1: vertex 0's round-1 leaf (weight 1+eps); step 2: a core-core
    // edge of normalized weight 1.
    CHECK(d.merges[1].similarity == Rational(1));
    CHECK(detect_triangle_in_merges(inst, d));
  }
}

TEST_CASE("triangle detection matches brute force exhaustively on t=4") {
  auto graphs = gen::all_graphs_up_to_iso(4);
  CHECK(graphs.size() == 11);  // simple graphs on 4 vertices up to isomorphism
  for (const auto& g : graphs) {
    auto inst = build_triangle_instance(g);
    CHECK(inst.gadget.n == g.t + g.t * g.t);
    CHECK(inst.gadget.edges.size() == g.t * g.t + g.edges.size());
    auto d = run_heap_based<Rational>(inst.gadget).dendrogram;
    CHECK(detect_triangle_in_merges(inst, d) == brute_force_has_triangle(g));
    for (const auto& v : audit_round_ordering(inst, d)) FAIL_CHECK("round audit: ", v);
  }
}

TEST_CASE("adaptive minimum simulation") {
  SUBCASE("identity rows eliminate in order") {
    AdaptiveMinInstance inst{3, {{0, 1, 2}, {0, 1, 2}, {0, 1, 2}}, 2};
    auto r = simulate_adaptive_minimum(inst);
    CHECK(r.trace == std::vector<int>{0, 1, 2});
    CHECK(r.k_x == 2);
  }
  SUBCASE("worked 3x3 example") {
    AdaptiveMinInstance inst{3, {{1, 0, 2}, {0, 2, 1}, {2, 1, 0}}, 2};
    auto r = simulate_adaptive_minimum(inst);
    CHECK(r.trace == std::vector<int>{1, 0, 2});
    CHECK(r.k_x == 2);
  }
  SUBCASE("n = 1") {
    AdaptiveMinInstance inst{1, {{0}}, 0};
    CHECK(simulate_adaptive_minimum(inst).k_x == 0);
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(simulate_adaptive_minimum({2, {{0, 0}, {0, 1}}, 0}), UsageError);
    CHECK_THROWS_AS(simulate_adaptive_minimum({2, {{0, 1}, {0, 1}}, 2}), UsageError);
  }
}

TEST_CASE("greedy LFM matching") {
  SUBCASE("perfect matching keeps every edge") {
    LfmInstance inst{3, {{0, 0}, {1, 1}, {2, 2}}, {1, 1}};
    auto r = greedy_lfm_matching(inst);
    CHECK(r.matching.size() == 3);
    CHECK(r.query_matched);
  }
  SUBCASE("earlier edges block the query") {
    LfmInstance inst{2, {{0, 0}, {0, 1}, {1, 0}}, {1, 0}};
    auto r = greedy_lfm_matching(inst);
    CHECK_FALSE(r.query_matched);
  }
  SUBCASE("disjoint edges are kept") {
    LfmInstance inst{2, {{0, 1}, {1, 0}}, {1, 0}};
    CHECK(greedy_lfm_matching(inst).query_matched);
  }
  SUBCASE("query must be an edge") {
    CHECK_THROWS_AS(greedy_lfm_matching({2, {{0, 0}}, {1, 1}}), UsageError);
  }
}

TEST_CASE("LFM to adaptive-minimum matrix") {
  LfmInstance inst{2, {{0, 0}, {0, 1}, {1, 0}}, {1, 0}};
  auto admin = reduce_lfm_to_adaptive_min(inst);
  CHECK(admin.n == 4);
  CHECK(admin.x == 1);
  CHECK(admin.a[0] == std::vector<int>{0, 1, 2, 3});
  CHECK(admin.a[1] == std::vector<int>{0, 3, 1, 2});
  auto r = simulate_adaptive_minimum(admin);
  CHECK(r.k_x == 2);  // a dummy column: the query edge is not matched
  CHECK(decode_lfm_from_admin(inst, r.k_x) == greedy_lfm_matching(inst).query_matched);

  SUBCASE("isolated left vertex gets dummies first") {
    LfmInstance iso{2, {{0, 0}, {0, 1}}, {0, 0}};
    // row 1 (isolated l_1): dummies at ranks 0..1, then all of R shifted.
    CHECK(lfm_matrix_entry(iso, 1, 2) == 0);
    CHECK(lfm_matrix_entry(iso, 1, 3) == 1);
    CHECK(lfm_matrix_entry(iso, 1, 0) == 2);
    CHECK(lfm_matrix_entry(iso, 1, 1) == 3);
  }
  SUBCASE("rows are permutations on random instances") {
    gen::Rng rng(8);
    for (int iter = 0; iter < 50; iter++) {
      auto lfm = gen::random_lfm(1 + rng.below(8), rng);
      auto a = reduce_lfm_to_adaptive_min(lfm);
      CHECK_NOTHROW(validate_admin(a));  // row-permutation property included
    }
  }
}

TEST_CASE("LFM chain: greedy equals reduce + simulate on random instances") {
  gen::Rng rng(21);
  for (int iter = 0; iter < 80; iter++) {
    auto lfm = gen::random_lfm(1 + rng.below(8), rng);
    for (auto e : lfm.edges) {
      lfm.query = e;
      auto admin = reduce_lfm_to_adaptive_min(lfm);
      auto got = decode_lfm_from_admin(lfm, simulate_adaptive_minimum(admin).k_x);
      CHECK(got == greedy_lfm_matching(lfm).query_matched);
    }
  }
}

TEST_CASE("tree instance numbers for n = 2") {
  AdaptiveMinInstance inst{2, {{0, 1}, {1, 0}}, 0};
  auto tree = build_adaptive_min_tree(inst, TreeVariant::kSized);
  CHECK(tree.r_value(0) == 256);
  CHECK(tree.r_value(1) == 272);
  CHECK(tree.w_value(0) == 16);
  CHECK(tree.graph.n == 15);  // 1 + 2 + 2*2*3
  CHECK(tree.graph.size_of(tree.root_vertex()) == 256);
  CHECK(tree.graph.size_of(tree.internal_vertex(0)) == 16);

  std::map<std::pair<int, int>, Rational> w;
  for (const auto& e : tree.graph.edges) w[{std::min(e.u, e.v), std::max(e.u, e.v)}] = e.w;
  // group i=0: high 1/255, low 1/256; group i=1: high 1/271, low 1/280
  CHECK(w[{tree.internal_vertex(0), tree.leaf_vertex(0, 0, 0)}] == Rational::fraction(1, 255));
  CHECK(w[{tree.internal_vertex(0), tree.leaf_vertex(0, 0, 2)}] == Rational::fraction(1, 256));
  CHECK(w[{tree.internal_vertex(0), tree.leaf_vertex(0, 1, 1)}] == Rational::fraction(1, 271));
  CHECK(w[{tree.internal_vertex(0), tree.leaf_vertex(0, 1, 2)}] == Rational::fraction(1, 280));
  CHECK(w[{tree.root_vertex(), tree.internal_vertex(1)}] == Rational(1));

  SUBCASE("diameter is 4") {
    // Longest shortest path: leaf - internal - root - internal - leaf.
    auto d = run_greedy_with_sizes(tree.graph);
    CHECK(d.merges.size() == static_cast<size_t>(tree.graph.n - 1));
  }
  SUBCASE("unit expansion count") {
    auto expanded = build_adaptive_min_tree(inst, TreeVariant::kUnitExpanded);
    CHECK(expanded.graph.n == 15 + 255 + 2 * 15);
    CHECK(expanded.graph.sizes.empty());
  }
  SUBCASE("budget") {
    CHECK_THROWS_AS(build_adaptive_min_tree(inst, TreeVariant::kUnitExpanded, 100), CapacityError);
  }
}

TEST_CASE("expand_unit_sizes") {
  SUBCASE("size-3 vertex gains two auxiliaries that merge first") {
    WeightedGraph<Rational> g;
    g.n = 2;
    g.sizes = {3, 1};
    g.edges.push_back({0, 1, Rational(1)});
    auto ex = expand_unit_sizes(g, Rational(1000), 100);
    CHECK(ex.n == 4);
    auto d = run_greedy(ex);
    CHECK(d.merges[0].similarity >= Rational(250));
    CHECK(d.merges[1].a < 4);
    CHECK(d.merges[0].step == 1);
    // the two auxiliary merges precede the original edge
    CHECK(d.merges[2].similarity == Rational::fraction(1, 3));
  }
  SUBCASE("identity on unit graphs") {
    WeightedGraph<Rational> g;
    g.n = 2;
    g.edges.push_back({0, 1, Rational(2)});
    auto ex = expand_unit_sizes(g, Rational(9), 10);
    CHECK(ex.n == 2);
    CHECK(ex.edges.size() == 1);
  }
}

TEST_CASE("tree solve decodes the adaptive minimum") {
  SUBCASE("n=2 fixtures") {
    AdaptiveMinInstance a1{2, {{0, 1}, {1, 0}}, 0};
    auto t1 = build_adaptive_min_tree(a1, TreeVariant::kSized);
    auto s1 = solve_adaptive_min_via_hac(t1, 0);
    CHECK(s1.k_x == simulate_adaptive_minimum(a1).k_x);
    CHECK(s1.k_x == 0);

    // k_0 = argmin(1,0) = 1, leaving column 0: k_1 = 0.
    AdaptiveMinInstance a2{2, {{1, 0}, {0, 1}}, 1};
    auto t2 = build_adaptive_min_tree(a2, TreeVariant::kSized);
    auto s2 = solve_adaptive_min_via_hac(t2, 1);
    CHECK(s2.k_x == simulate_adaptive_minimum(a2).k_x);
    CHECK(s2.k_x == 0);
  }
  SUBCASE("x = n-1 returns the surviving column") {
    gen::Rng rng(14);
    auto inst = gen::random_admin(3, rng);
    inst.x = 2;
    auto tree = build_adaptive_min_tree(inst, TreeVariant::kSized);
    auto s = solve_adaptive_min_via_hac(tree, 2);
    CHECK(s.k_x == simulate_adaptive_minimum(inst).k_x);
  }
  SUBCASE("random sized instances with phase audits") {
    gen::Rng rng(25);
    for (int iter = 0; iter < 6; iter++) {
      int n = 2 + static_cast<int>(rng.below(3));  // 2..4
      auto inst = gen::random_admin(n, rng);
      auto tree = build_adaptive_min_tree(inst, TreeVariant::kSized);
      auto sim = simulate_adaptive_minimum({inst.n, inst.a, inst.n - 1});
      auto solved = solve_adaptive_min_via_hac(tree, inst.x);
      CHECK(solved.k == sim.trace);
      for (const auto& v : audit_tree_phases(tree, solved.dendrogram))
        FAIL_CHECK("phase audit: ", v);
    }
  }
  SUBCASE("sized and unit-expanded agree") {
    gen::Rng rng(26);
    auto inst = gen::random_admin(2, rng);
    auto sized = build_adaptive_min_tree(inst, TreeVariant::kSized);
    auto expanded = build_adaptive_min_tree(inst, TreeVariant::kUnitExpanded);
    auto rs = solve_adaptive_min_via_hac(sized, inst.x);
    auto re = solve_adaptive_min_via_hac(expanded, inst.x);
    CHECK(rs.k == re.k);
    for (const auto& v : audit_auxiliary_first(expanded, re.dendrogram))
      FAIL_CHECK("aux audit: ", v);
    // The expanded dendrogram restricted to original vertices matches.
    auto fam_sized = cluster_family(rs.dendrogram);
    auto fam_exp = original_family(re.dendrogram, expanded.original_count());
    CHECK(fam_sized == fam_exp);
  }
}

TEST_CASE("full stack: LFM through the tree") {
  gen::Rng rng(29);
  for (int iter = 0; iter < 3; iter++) {
    auto lfm = gen::random_lfm(2, rng);
    auto admin = reduce_lfm_to_adaptive_min(lfm);  // 4x4
    auto tree = build_adaptive_min_tree(admin, TreeVariant::kSized);
    auto solved = solve_adaptive_min_via_hac(tree, admin.x);
    CHECK(decode_lfm_from_admin(lfm, solved.k_x) == greedy_lfm_matching(lfm).query_matched);
  }
}

TEST_CASE("instance file parsers") {
  SUBCASE("adaptive minimum") {
    std::istringstream in("# comment\n3 1\n1 0 2\n0 2 1\n2 1 0\n");
    auto inst = parse_admin(in);
    CHECK(inst.n == 3);
    CHECK(inst.x == 1);
    CHECK(inst.a[0] == std::vector<int>{1, 0, 2});
    std::istringstream bad("2 0\n0 1\n");
    CHECK_THROWS_AS(parse_admin(bad), ParseError);
  }
  SUBCASE("lfm") {
    std::istringstream in("2\n0 0\n0 1\n1 0\nquery 1 0\n");
    auto inst = parse_lfm(in);
    CHECK(inst.n == 2);
    CHECK(inst.edges.size() == 3);
    CHECK(inst.query == std::pair<int, int>{1, 0});
    std::istringstream bad("2\n0 0\n");
    CHECK_THROWS_AS(parse_lfm(bad), ParseError);
  }
  SUBCASE("simple graph") {
    std::istringstream in("n 4\n0 1\n2 3\n");
    auto g = parse_simple_graph(in);
    CHECK(g.t == 4);
    CHECK(g.edges.size() == 2);
    std::istringstream noheader("0 1\n1 2\n");
    CHECK(parse_simple_graph(noheader).t == 3);
  }
}

TEST_SUITE_END();
