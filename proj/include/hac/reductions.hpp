#pragma once

#include <iosfwd>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hac/dendrogram.hpp"
#include "hac/graph.hpp"
#include "hac/rational.hpp"

namespace hac::reductions {

// ---------------------------------------------------------------------------
// Triangle detection via HAC merge order.
// ---------------------------------------------------------------------------

// Unweighted simple graph (the triangle-detection input).
struct SimpleGraph {
  int t = 0;
  std::vector<std::pair<int, int>> edges;
};

void validate_simple_graph(const SimpleGraph& g);
bool brute_force_has_triangle(const SimpleGraph& g);

// Gadget: the t core vertices keep their ids and weight-1 edges; t^2 leaves
// arrive in t rounds, one per core per round. The round-i leaf of core j has
// weight 1/i - eps when j neighbors vertex i-1, else 1/i + eps.
struct TriangleInstance {
  SimpleGraph source;
  WeightedGraph<Rational> gadget;
  Rational eps;

  int core_count() const { return source.t; }
  bool is_core(int v) const { return v < source.t; }
  int leaf_round(int v) const { return (v - source.t) / source.t + 1; }  // 1-based
  int leaf_core(int v) const { return (v - source.t) % source.t; }
};

TriangleInstance build_triangle_instance(const SimpleGraph& g);

// Scans the first t^2 merge records for a merge joining two core-containing
// clusters (exits at the first one found).
bool detect_triangle_in_merges(const TriangleInstance& inst, const Dendrogram<Rational>& d);

// Runs the heap engine on the gadget and decodes.
bool detect_triangle_via_hac(const TriangleInstance& inst);

// Round-structure audit: over the leaf-merge prefix (up to the first
// core-core merge), leaf rounds must be non-decreasing.
std::vector<std::string> audit_round_ordering(const TriangleInstance& inst,
                                              const Dendrogram<Rational>& d);

// ---------------------------------------------------------------------------
// Adaptive Minimum.
// ---------------------------------------------------------------------------

struct AdaptiveMinInstance {
  int n = 0;
  std::vector<std::vector<int>> a;  // each row a permutation of 0..n-1
  int x = 0;
};

void validate_admin(const AdaptiveMinInstance& inst);

struct AdaptiveMinResult {
  std::vector<int> trace;  // k_0 .. k_x
  int k_x = -1;
};

// The literal elimination loop; the brute-force oracle for the tree pipeline.
AdaptiveMinResult simulate_adaptive_minimum(const AdaptiveMinInstance& inst);

// ---------------------------------------------------------------------------
// LFM Matching and its reduction to Adaptive Minimum.
// ---------------------------------------------------------------------------

struct LfmInstance {
  int n = 0;                                // |L| == |R|
  std::vector<std::pair<int, int>> edges;   // (index in L, index in R)
  std::pair<int, int> query{-1, -1};
};

void validate_lfm(const LfmInstance& inst);

struct LfmResult {
  std::vector<std::pair<int, int>> matching;
  bool query_matched = false;
};

// Greedy maximal matching over edges ordered by (L index, R index).
LfmResult greedy_lfm_matching(const LfmInstance& inst);

// One matrix entry of the 2n x 2n reduction, computed with a counting scan
// (constant working state beyond the instance itself). Rows >= n are never
// reached by the simulation and are fixed to the identity permutation.
int lfm_matrix_entry(const LfmInstance& inst, int i, int j);

// Full instance: x is the L-index of the query edge.
AdaptiveMinInstance reduce_lfm_to_adaptive_min(const LfmInstance& inst);

// e is in the LFM matching iff k_x equals the R-index of e.
bool decode_lfm_from_admin(const LfmInstance& inst, int k_x);

// ---------------------------------------------------------------------------
// Adaptive Minimum -> tree HAC.
// ---------------------------------------------------------------------------

enum class TreeVariant { kSized, kUnitExpanded };

// Depth-2 tree: root size n^8, n internal nodes of size n^4, groups of n+1
// leaves per (internal, row) pair. Group (j,i) carries A[i,j]+1 edges of
// weight 1/(r_i - 1) and n - A[i,j] of weight 1/(r_i + i*n^3); root-internal
// edges have weight 1. The unit-expanded variant realizes the sizes with
// weight-n^9 auxiliary leaves.
struct TreeHacInstance {
  int n = 0;
  TreeVariant variant = TreeVariant::kSized;
  WeightedGraph<Rational> graph;

  int root_vertex() const { return 0; }
  int internal_vertex(int j) const { return 1 + j; }
  int leaf_vertex(int j, int i, int k) const {
    return 1 + n + j * n * (n + 1) + i * (n + 1) + k;
  }
  int original_count() const { return 1 + n + n * n * (n + 1); }
  long long r_value(int i) const;
  long long w_value(int i) const;
};

TreeHacInstance build_adaptive_min_tree(const AdaptiveMinInstance& inst, TreeVariant variant,
                                        long long node_budget = 20000);

// Replaces every size-w vertex by a unit vertex plus w-1 auxiliary unit
// leaves attached with `aux_weight` edges. Identity for all-unit graphs.
WeightedGraph<Rational> expand_unit_sizes(const WeightedGraph<Rational>& g,
                                          const Rational& aux_weight, long long node_budget);

struct TreeSolveResult {
  std::vector<int> k;  // full decoded sequence k_0 .. k_{n-1}
  int k_x = -1;
  Dendrogram<Rational> dendrogram;
};

// Runs an exact engine on the tree, extracts each internal node's root-merge
// step via merge_index, and ranks them; the internal of rank x is k_x.
TreeSolveResult solve_adaptive_min_via_hac(const TreeHacInstance& tree, int x);

// Phase-structure audit at every phase boundary: root size r_i + i^2*Delta_i
// with Delta_i in [0, n+1], exactly i internals absorbed, remaining internal
// sizes w_i, groups < i fully merged and groups >= i untouched.
std::vector<std::string> audit_tree_phases(const TreeHacInstance& tree,
                                           const Dendrogram<Rational>& d);

// Expanded instances: every auxiliary-leaf merge precedes every other merge.
std::vector<std::string> audit_auxiliary_first(const TreeHacInstance& tree,
                                               const Dendrogram<Rational>& d);

// Leaf-set family of merges joining two original-vertex-containing clusters,
// restricted to original vertices. Matches cluster_family() of the sized run.
std::map<std::vector<int>, Rational> original_family(const Dendrogram<Rational>& d,
                                                     int original_count);

// ---------------------------------------------------------------------------
// Instance file formats.
// ---------------------------------------------------------------------------

SimpleGraph parse_simple_graph(std::istream& in);          // optional "n t", lines "u v"
AdaptiveMinInstance parse_admin(std::istream& in);          // "n x", then n rows
LfmInstance parse_lfm(std::istream& in);                    // "n", "l r" lines, "query l r"

}  // namespace hac::reductions
