#include "hac/reductions.hpp"

#include <algorithm>
#include <istream>
#include <set>
#include <sstream>

#include "hac/engines.hpp"
#include "hac/errors.hpp"

namespace hac::reductions {

namespace {

long long ipow(long long base, int exp) {
  long long r = 1;
  for (int i = 0; i < exp; i++) {
    if (r > (1LL << 62) / base) throw CapacityError("tree construction size overflows");
    r *= base;
  }
  return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Triangle detection.
// ---------------------------------------------------------------------------

void validate_simple_graph(const SimpleGraph& g) {
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : g.edges) {
    if (u < 0 || v < 0 || u >= g.t || v >= g.t) throw UsageError("edge endpoint out of range");
    if (u == v) throw UsageError("self-loops are not allowed");
    if (!seen.insert({std::min(u, v), std::max(u, v)}).second) throw UsageError("duplicate edge");
  }
}

bool brute_force_has_triangle(const SimpleGraph& g) {
  std::vector<std::vector<char>> adj(g.t, std::vector<char>(g.t, 0));
  for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;
  for (int a = 0; a < g.t; a++)
    for (int b = a + 1; b < g.t; b++)
      for (int c = b + 1; c < g.t; c++)
        if (adj[a][b] && adj[b][c] && adj[a][c]) return true;
  return false;
}

TriangleInstance build_triangle_instance(const SimpleGraph& g) {
  validate_simple_graph(g);
  if (g.t < 3) throw UsageError("triangle instance needs at least 3 vertices");
  TriangleInstance inst;
  inst.source = g;
  const int t = g.t;
  inst.eps = Rational::fraction(1, 4 * static_cast<long long>(t) * t * t);
  std::vector<std::vector<char>> adj(t, std::vector<char>(t, 0));
  for (auto [u, v] : g.edges) adj[u][v] = adj[v][u] = 1;

  WeightedGraph<Rational>& out = inst.gadget;
  out.n = t + t * t;
  for (auto [u, v] : g.edges) out.edges.push_back({u, v, Rational(1)});
  for (int round = 1; round <= t; round++) {
    int center = round - 1;
    for (int j = 0; j < t; j++) {
      int leaf = t + (round - 1) * t + j;
      Rational base = Rational::fraction(1, round);
      Rational w = adj[center][j] ? base - inst.eps : base + inst.eps;
      out.edges.push_back({j, leaf, w});
    }
  }
  validate_graph(out);
  return inst;
}

bool detect_triangle_in_merges(const TriangleInstance& inst, const Dendrogram<Rational>& d) {
  const int t = inst.core_count();
  std::vector<int> cores(d.leaf_count + d.merges.size(), 0);
  for (int v = 0; v < d.leaf_count; v++) cores[v] = inst.is_core(v) ? 1 : 0;
  long long limit = static_cast<long long>(t) * t;
  for (const auto& m : d.merges) {
    if (m.step > limit) break;
    if (cores[m.a] > 0 && cores[m.b] > 0) return true;
    cores[m.parent] = cores[m.a] + cores[m.b];
  }
  return false;
}

bool detect_triangle_via_hac(const TriangleInstance& inst) {
  auto run = run_heap_based<Rational>(inst.gadget);
  return detect_triangle_in_merges(inst, run.dendrogram);
}

std::vector<std::string> audit_round_ordering(const TriangleInstance& inst,
                                              const Dendrogram<Rational>& d) {
  std::vector<std::string> violations;
  std::vector<int> cores(d.leaf_count + d.merges.size(), 0);
  for (int v = 0; v < d.leaf_count; v++) cores[v] = inst.is_core(v) ? 1 : 0;
  int last_round = 1;
  for (const auto& m : d.merges) {
    if (cores[m.a] > 0 && cores[m.b] > 0) break;  // detection point; ordering claim ends here
    cores[m.parent] = cores[m.a] + cores[m.b];
    int leaf = -1;
    for (int child : {m.a, m.b})
      if (child >= inst.core_count() && child < d.leaf_count) leaf = child;
    if (leaf < 0) continue;
    int round = inst.leaf_round(leaf);
    if (round < last_round) {
      violations.push_back("round-" + std::to_string(round) + " leaf merged after round-" +
                           std::to_string(last_round));
    }
    last_round = std::max(last_round, round);
  }
  return violations;
}

// ---------------------------------------------------------------------------
// Adaptive Minimum.
// ---------------------------------------------------------------------------

void validate_admin(const AdaptiveMinInstance& inst) {
  if (inst.n < 1) throw UsageError("adaptive-minimum instance needs n >= 1");
  if (inst.x < 0 || inst.x >= inst.n) throw UsageError("target index out of range");
  if (static_cast<int>(inst.a.size()) != inst.n) throw UsageError("matrix must have n rows");
  for (const auto& row : inst.a) {
    if (static_cast<int>(row.size()) != inst.n) throw UsageError("matrix row of wrong length");
    std::vector<char> seen(inst.n, 0);
    for (int v : row) {
      if (v < 0 || v >= inst.n || seen[v]) throw UsageError("matrix row is not a permutation");
      seen[v] = 1;
    }
  }
}

AdaptiveMinResult simulate_adaptive_minimum(const AdaptiveMinInstance& inst) {
  validate_admin(inst);
  AdaptiveMinResult out;
  std::vector<char> alive(inst.n, 1);
  for (int i = 0; i <= inst.x; i++) {
    int best = -1;
    for (int j = 0; j < inst.n; j++)
      if (alive[j] && (best == -1 || inst.a[i][j] < inst.a[i][best])) best = j;
    alive[best] = 0;
    out.trace.push_back(best);
  }
  out.k_x = out.trace.back();
  return out;
}

// ---------------------------------------------------------------------------
// LFM Matching.
// ---------------------------------------------------------------------------

void validate_lfm(const LfmInstance& inst) {
  if (inst.n < 1) throw UsageError("LFM instance needs n >= 1");
  std::set<std::pair<int, int>> seen;
  for (auto [l, r] : inst.edges) {
    if (l < 0 || l >= inst.n || r < 0 || r >= inst.n) throw UsageError("edge endpoint out of range");
    if (!seen.insert({l, r}).second) throw UsageError("duplicate edge");
  }
  if (!seen.count(inst.query)) throw UsageError("query edge is not in the graph");
}

LfmResult greedy_lfm_matching(const LfmInstance& inst) {
  validate_lfm(inst);
  auto edges = inst.edges;
  std::sort(edges.begin(), edges.end());
  std::vector<char> ml(inst.n, 0), mr(inst.n, 0);
  LfmResult out;
  for (auto [l, r] : edges) {
    if (ml[l] || mr[r]) continue;
    ml[l] = mr[r] = 1;
    out.matching.push_back({l, r});
    if (std::pair<int, int>{l, r} == inst.query) out.query_matched = true;
  }
  return out;
}

int lfm_matrix_entry(const LfmInstance& inst, int i, int j) {
  const int n = inst.n;
  if (i < 0 || j < 0 || i >= 2 * n || j >= 2 * n) throw UsageError("matrix index out of range");
  if (i >= n) return j;  // dummy rows, unreached by the simulation
  // Counting scans only: |R_i|, adjacency of (i, j), and the rank of j among
  // (non-)neighbors of l_i.
  int deg = 0, rank = 0;
  bool adjacent = false;
  for (auto [l, r] : inst.edges) {
    if (l != i) continue;
    deg++;
    if (j < n && r == j) adjacent = true;
    if (j < n && r < j) rank++;
  }
  if (j >= n) return j - n + deg;
  if (adjacent) return rank;               // rank among neighbors
  return (j - rank) + n + deg;             // rank among non-neighbors, shifted
}

AdaptiveMinInstance reduce_lfm_to_adaptive_min(const LfmInstance& inst) {
  validate_lfm(inst);
  AdaptiveMinInstance out;
  out.n = 2 * inst.n;
  out.x = inst.query.first;
  out.a.assign(out.n, std::vector<int>(out.n, 0));
  for (int i = 0; i < out.n; i++)
    for (int j = 0; j < out.n; j++) out.a[i][j] = lfm_matrix_entry(inst, i, j);
  validate_admin(out);
  return out;
}

bool decode_lfm_from_admin(const LfmInstance& inst, int k_x) { return k_x == inst.query.second; }

// ---------------------------------------------------------------------------
// Adaptive Minimum -> tree HAC.
// ---------------------------------------------------------------------------

long long TreeHacInstance::r_value(int i) const {
  return ipow(n, 8) + static_cast<long long>(i) * ipow(n, 4);
}

long long TreeHacInstance::w_value(int i) const {
  return ipow(n, 4) + static_cast<long long>(i) * (n + 1);
}

TreeHacInstance build_adaptive_min_tree(const AdaptiveMinInstance& inst, TreeVariant variant,
                                        long long node_budget) {
  validate_admin(inst);
  if (inst.n < 2) throw UsageError("tree construction needs n >= 2");
  TreeHacInstance tree;
  tree.n = inst.n;
  tree.variant = variant;
  const int n = inst.n;
  const long long n3 = ipow(n, 3), n4 = ipow(n, 4), n8 = ipow(n, 8);

  WeightedGraph<Rational>& g = tree.graph;
  g.n = tree.original_count();
  g.sizes.assign(g.n, 1);
  g.sizes[tree.root_vertex()] = n8;
  for (int j = 0; j < n; j++) {
    g.sizes[tree.internal_vertex(j)] = n4;
    g.edges.push_back({tree.root_vertex(), tree.internal_vertex(j), Rational(1)});
  }
  for (int j = 0; j < n; j++) {
    for (int i = 0; i < n; i++) {
      long long r_i = n8 + static_cast<long long>(i) * n4;
      Rational high = Rational::fraction(1, r_i - 1);
      Rational low = Rational::fraction(1, r_i + static_cast<long long>(i) * n3);
      for (int k = 0; k <= n; k++) {
        Rational w = k <= inst.a[i][j] ? high : low;
        g.edges.push_back({tree.internal_vertex(j), tree.leaf_vertex(j, i, k), w});
      }
    }
  }
  validate_graph(g);
  if (variant == TreeVariant::kUnitExpanded) {
    g = expand_unit_sizes(g, Rational(ipow(n, 9)), node_budget);
  }
  return tree;
}

WeightedGraph<Rational> expand_unit_sizes(const WeightedGraph<Rational>& g,
                                          const Rational& aux_weight, long long node_budget) {
  validate_graph(g);
  long long total = g.n;
  for (int v = 0; v < g.n; v++) total += g.size_of(v) - 1;
  if (total > node_budget)
    throw CapacityError("unit expansion needs " + std::to_string(total) +
                        " vertices, budget is " + std::to_string(node_budget));
  WeightedGraph<Rational> out;
  out.n = static_cast<int>(total);
  out.edges = g.edges;
  int next = g.n;
  for (int v = 0; v < g.n; v++)
    for (long long k = 1; k < g.size_of(v); k++) out.edges.push_back({v, next++, aux_weight});
  validate_graph(out);
  return out;
}

TreeSolveResult solve_adaptive_min_via_hac(const TreeHacInstance& tree, int x) {
  if (x < 0 || x >= tree.n) throw UsageError("target index out of range");
  TreeSolveResult out;
  out.dendrogram = run_heap_based<Rational>(tree.graph).dendrogram;
  std::vector<std::pair<int, int>> order;  // (root-merge step, internal index)
  for (int j = 0; j < tree.n; j++) {
    auto step = merge_index(out.dendrogram, tree.root_vertex(), tree.internal_vertex(j));
    if (!step)
      throw UsageError("tree construction bug: internal node " + std::to_string(j) +
                       " never merges with the root");
    order.push_back({*step, j});
  }
  std::sort(order.begin(), order.end());
  for (auto& [step, j] : order) out.k.push_back(j);
  out.k_x = out.k[x];
  return out;
}

namespace {

// Cluster membership helper over a merge sequence: for a vertex, the list of
// (step, record index) of every cluster on its root-ward chain.
struct Replay {
  explicit Replay(const Dendrogram<Rational>& d) : d_(d) {
    parent_rec_.assign(d.leaf_count + d.merges.size(), -1);
    for (int i = 0; i < static_cast<int>(d.merges.size()); i++) {
      parent_rec_[d.merges[i].a] = i;
      parent_rec_[d.merges[i].b] = i;
    }
  }

  // Size of v's cluster after `steps` merges (initial size given).
  long long size_at(int v, int steps, long long initial) const {
    long long s = initial;
    int node = v;
    for (;;) {
      int rec = parent_rec_[node];
      if (rec < 0 || d_.merges[rec].step > steps) break;
      s = d_.merges[rec].size;
      node = d_.merges[rec].parent;
    }
    return s;
  }

  // Step at which leaf v first participates in any merge; 0 if never.
  int first_merge_step(int v) const {
    int rec = parent_rec_[v];
    return rec < 0 ? 0 : d_.merges[rec].step;
  }

  const Dendrogram<Rational>& d_;
  std::vector<int> parent_rec_;
};

}  // namespace

std::vector<std::string> audit_tree_phases(const TreeHacInstance& tree,
                                           const Dendrogram<Rational>& d) {
  std::vector<std::string> violations;
  auto fail = [&](int phase, const std::string& msg) {
    if (violations.size() < 32)
      violations.push_back("phase " + std::to_string(phase) + ": " + msg);
  };
  const int n = tree.n;
  Replay replay(d);
  bool expanded = tree.variant == TreeVariant::kUnitExpanded;
  // Expanded instances spend a prefix of merges realizing the initial sizes.
  int base_step = 0;
  if (expanded)
    for (int v = 0; v < d.leaf_count; v++)
      if (v >= tree.original_count()) base_step = std::max(base_step, replay.first_merge_step(v));
  const long long root_initial = expanded ? 1 : tree.r_value(0);
  const long long internal_initial = expanded ? 1 : tree.w_value(0);
  std::vector<int> root_merge_steps;
  for (int j = 0; j < n; j++) {
    auto step = merge_index(d, tree.root_vertex(), tree.internal_vertex(j));
    if (!step) {
      violations.push_back("internal node never merged with root");
      return violations;
    }
    root_merge_steps.push_back(*step);
  }
  std::vector<int> sorted_steps = root_merge_steps;
  std::sort(sorted_steps.begin(), sorted_steps.end());

  for (int i = 0; i < n; i++) {
    // Boundary of phase i: the i-th root absorption plus the group-(i-1)
    // merges of the surviving internal nodes are complete.
    int m_i = i == 0 ? base_step : sorted_steps[i - 1];
    if (i > 0) {
      for (int j = 0; j < n; j++) {
        if (root_merge_steps[j] <= sorted_steps[i - 1]) continue;  // absorbed already
        for (int k = 0; k <= n; k++)
          m_i = std::max(m_i, replay.first_merge_step(tree.leaf_vertex(j, i - 1, k)));
      }
    }
    if (i < n && m_i >= sorted_steps[i]) {
      fail(i, "group merges overlap the next root absorption");
      continue;
    }
    // 1. Root size equals r_i + i^2 * Delta_i with Delta_i in [0, n+1].
    long long root_size = replay.size_at(tree.root_vertex(), m_i, root_initial);
    long long excess = root_size - tree.r_value(i);
    long long max_excess = static_cast<long long>(i) * i * (n + 1);
    if (excess < 0 || excess > max_excess)
      fail(i, "root size " + std::to_string(root_size) + " outside [r_i, r_i + i^2(n+1)]");
    // 2. Exactly i internals absorbed.
    int absorbed = 0;
    for (int j = 0; j < n; j++)
      if (root_merge_steps[j] <= m_i) absorbed++;
    if (absorbed != i) fail(i, "absorbed internal count " + std::to_string(absorbed));
    // 3. Remaining internal sizes equal w_i.
    for (int j = 0; j < n; j++) {
      if (root_merge_steps[j] <= m_i) continue;
      long long sz = replay.size_at(tree.internal_vertex(j), m_i, internal_initial);
      if (sz != tree.w_value(i))
        fail(i, "internal " + std::to_string(j) + " size " + std::to_string(sz) + " != w_i");
    }
    // 4. For remaining internals: groups < i fully merged, groups >= i untouched.
    for (int j = 0; j < n; j++) {
      if (root_merge_steps[j] <= m_i) continue;
      for (int gi = 0; gi < n; gi++)
        for (int k = 0; k <= n; k++) {
          int fm = replay.first_merge_step(tree.leaf_vertex(j, gi, k));
          bool merged = fm > 0 && fm <= m_i;
          if (gi < i && !merged) fail(i, "leaf in finished group not merged");
          if (gi >= i && merged) fail(i, "leaf in future group already merged");
        }
    }
  }
  return violations;
}

std::vector<std::string> audit_auxiliary_first(const TreeHacInstance& tree,
                                               const Dendrogram<Rational>& d) {
  std::vector<std::string> violations;
  if (tree.variant != TreeVariant::kUnitExpanded) return violations;
  int originals = tree.original_count();
  bool non_aux_seen = false;
  for (const auto& m : d.merges) {
    bool aux_child = (m.a >= originals && m.a < d.leaf_count) ||
                     (m.b >= originals && m.b < d.leaf_count);
    if (!aux_child)
      non_aux_seen = true;
    else if (non_aux_seen) {
      violations.push_back("auxiliary edge merged after a non-auxiliary merge at step " +
                           std::to_string(m.step));
      break;
    }
  }
  return violations;
}

std::map<std::vector<int>, Rational> original_family(const Dendrogram<Rational>& d,
                                                     int original_count) {
  std::map<std::vector<int>, Rational> fam;
  std::vector<std::vector<int>> sets(d.leaf_count + d.merges.size());
  for (int v = 0; v < d.leaf_count && v < original_count; v++) sets[v] = {v};
  for (const auto& m : d.merges) {
    auto &a = sets[m.a], &b = sets[m.b];
    std::vector<int> merged(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), merged.begin());
    if (!a.empty() && !b.empty()) fam.emplace(merged, m.similarity);
    sets[m.parent] = std::move(merged);
    a.clear();
    b.clear();
  }
  return fam;
}

// ---------------------------------------------------------------------------
// Instance file parsing.
// ---------------------------------------------------------------------------

namespace {

// Lines of non-comment tokens with their line numbers.
std::vector<std::pair<int, std::vector<std::string>>> tokenize(std::istream& in) {
  std::vector<std::pair<int, std::vector<std::string>>> out;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    lineno++;
    std::istringstream ss(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ss >> tok) {
      if (tok[0] == '#') break;
      toks.push_back(tok);
    }
    if (!toks.empty()) out.push_back({lineno, toks});
  }
  return out;
}

int parse_int(const std::string& s, int lineno) {
  try {
    size_t pos = 0;
    int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw ParseError("bad integer '" + s + "'", lineno);
  }
}

}  // namespace

SimpleGraph parse_simple_graph(std::istream& in) {
  SimpleGraph g;
  int max_vertex = -1;
  bool have_n = false;
  for (auto& [lineno, toks] : tokenize(in)) {
    if (toks[0] == "n") {
      if (toks.size() != 2) throw ParseError("expected 'n <count>'", lineno);
      g.t = parse_int(toks[1], lineno);
      have_n = true;
      continue;
    }
    if (toks.size() != 2) throw ParseError("expected edge '<u> <v>'", lineno);
    int u = parse_int(toks[0], lineno), v = parse_int(toks[1], lineno);
    g.edges.push_back({u, v});
    max_vertex = std::max({max_vertex, u, v});
  }
  if (!have_n) g.t = max_vertex + 1;
  try {
    validate_simple_graph(g);
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  return g;
}

AdaptiveMinInstance parse_admin(std::istream& in) {
  auto lines = tokenize(in);
  if (lines.empty()) throw ParseError("empty adaptive-minimum file");
  auto& [l0, head] = lines[0];
  if (head.size() != 2) throw ParseError("expected header '<n> <x>'", l0);
  AdaptiveMinInstance inst;
  inst.n = parse_int(head[0], l0);
  inst.x = parse_int(head[1], l0);
  if (static_cast<int>(lines.size()) != inst.n + 1)
    throw ParseError("expected " + std::to_string(inst.n) + " matrix rows");
  for (int i = 1; i <= inst.n; i++) {
    auto& [ln, toks] = lines[i];
    if (static_cast<int>(toks.size()) != inst.n) throw ParseError("row of wrong length", ln);
    std::vector<int> row;
    for (auto& tk : toks) row.push_back(parse_int(tk, ln));
    inst.a.push_back(std::move(row));
  }
  try {
    validate_admin(inst);
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  return inst;
}

LfmInstance parse_lfm(std::istream& in) {
  auto lines = tokenize(in);
  if (lines.empty()) throw ParseError("empty LFM file");
  auto& [l0, head] = lines[0];
  if (head.size() != 1) throw ParseError("expected header '<n>'", l0);
  LfmInstance inst;
  inst.n = parse_int(head[0], l0);
  bool have_query = false;
  for (size_t i = 1; i < lines.size(); i++) {
    auto& [ln, toks] = lines[i];
    if (toks[0] == "query") {
      if (toks.size() != 3) throw ParseError("expected 'query <l> <r>'", ln);
      inst.query = {parse_int(toks[1], ln), parse_int(toks[2], ln)};
      have_query = true;
      continue;
    }
    if (toks.size() != 2) throw ParseError("expected edge '<l> <r>'", ln);
    inst.edges.push_back({parse_int(toks[0], ln), parse_int(toks[1], ln)});
  }
  if (!have_query) throw ParseError("missing 'query <l> <r>' line");
  try {
    validate_lfm(inst);
  } catch (const UsageError& e) {
    throw ParseError(e.what());
  }
  return inst;
}

}  // namespace hac::reductions
