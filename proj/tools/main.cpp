#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "hac/bench.hpp"
#include "hac/engines.hpp"
#include "hac/generators.hpp"
#include "hac/graph_io.hpp"
#include "hac/oracle.hpp"
#include "hac/pathhac.hpp"
#include "hac/reductions.hpp"
#include "hac/verify.hpp"

namespace {

using namespace hac;

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open input file '" + path + "'");
  return in;
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw UsageError("cannot open output file '" + path + "'");
  return out;
}

struct RunConfig {
  std::string algo;
  std::string mode = "rational";
  std::string input, output;
  std::string telemetry_path;
  int workers = 1;
  bool audit = false;
};

template <class W>
int cmd_run_typed(const RunConfig& cfg) {
  auto in = open_input(cfg.input);
  auto g = io::parse_graph<W>(in);
  Dendrogram<W> d;
  Telemetry telemetry;
  PathAudit audit;
  if (cfg.algo == "oracle") {
    d = run_greedy(g);
  } else if (cfg.algo == "chain") {
    d = run_nn_chain(g, &telemetry);
  } else if (cfg.algo == "heap") {
    auto res = run_heap_based(g);
    d = std::move(res.dendrogram);
    telemetry = res.telemetry;
  } else if (cfg.algo == "path") {
    d = run_path_hac(g, cfg.workers, cfg.audit ? &audit : nullptr);
  } else {
    throw UsageError("unknown algorithm '" + cfg.algo + "'");
  }
  telemetry.merges = d.merges.size();
  auto out = open_output(cfg.output);
  io::write_dendrogram(out, d);
  if (!cfg.telemetry_path.empty()) {
    auto tout = open_output(cfg.telemetry_path);
    tout << "{\"merges\":" << telemetry.merges << ",\"heap_ops\":" << telemetry.heap_ops
         << ",\"neighbor_elements_touched\":" << telemetry.neighbor_elements_touched
         << ",\"best_edge_calls\":" << telemetry.best_edge_calls
         << ",\"unsuccessful_extractions\":" << telemetry.unsuccessful_extractions
         << ",\"superseded_entries\":" << telemetry.superseded_entries
         << ",\"stale_priority_reinserts\":" << telemetry.stale_priority_reinserts << "}\n";
  }
  auto stats = dendrogram_stats(d);
  std::cerr << cfg.algo << ": " << stats.merge_count << " merges, height " << stats.height
            << ", wrote " << cfg.output << "\n";
  if (cfg.audit) {
    for (const auto& v : audit.violations) std::cerr << "audit violation: " << v << "\n";
    std::cerr << "audit: phases=" << audit.phases << " sweeps=" << audit.sweeps
              << " max_subchain=" << audit.max_subchain_len << " max_seed=" << audit.max_seed_len
              << " max_group=" << audit.max_group_len << "\n";
    if (!audit.violations.empty()) return 1;
  }
  return 0;
}

int cmd_run(const RunConfig& cfg) {
  if (cfg.mode == "rational") return cmd_run_typed<Rational>(cfg);
  if (cfg.mode == "float") return cmd_run_typed<double>(cfg);
  throw UsageError("unknown mode '" + cfg.mode + "' (rational|float)");
}

struct ReduceConfig {
  std::string input;
  std::string emit_gadget, merge_log;
  std::string variant = "sized";
  long long budget = 20000;
};

int cmd_reduce_triangle(const ReduceConfig& cfg) {
  auto in = open_input(cfg.input);
  auto g = reductions::parse_simple_graph(in);
  auto inst = reductions::build_triangle_instance(g);
  if (!cfg.emit_gadget.empty()) {
    auto out = open_output(cfg.emit_gadget);
    io::write_graph(out, inst.gadget);
  }
  auto run = run_heap_based<Rational>(inst.gadget);
  if (!cfg.merge_log.empty()) {
    auto out = open_output(cfg.merge_log);
    io::write_dendrogram(out, run.dendrogram);
  }
  bool found = reductions::detect_triangle_in_merges(inst, run.dendrogram);
  std::cerr << "t=" << g.t << " m=" << g.edges.size() << ", gadget " << inst.gadget.n
            << " vertices / " << inst.gadget.edges.size() << " edges, scanned first "
            << g.t * g.t << " merges\n";
  std::cout << "triangle: " << (found ? "true" : "false") << "\n";
  return 0;
}

int cmd_reduce_lfm(const ReduceConfig& cfg) {
  auto in = open_input(cfg.input);
  auto inst = reductions::parse_lfm(in);
  auto admin = reductions::reduce_lfm_to_adaptive_min(inst);
  if (!cfg.emit_gadget.empty()) {
    auto out = open_output(cfg.emit_gadget);
    out << admin.n << " " << admin.x << "\n";
    for (const auto& row : admin.a) {
      for (size_t j = 0; j < row.size(); j++) out << (j ? " " : "") << row[j];
      out << "\n";
    }
  }
  auto sim = reductions::simulate_adaptive_minimum(admin);
  bool matched = reductions::decode_lfm_from_admin(inst, sim.k_x);
  std::cerr << "n=" << inst.n << ", query (" << inst.query.first << "," << inst.query.second
            << "), k_x=" << sim.k_x << "\n";
  std::cout << "in_matching: " << (matched ? "true" : "false") << "\n";
  return 0;
}

int cmd_reduce_admin_tree(const ReduceConfig& cfg) {
  auto in = open_input(cfg.input);
  auto inst = reductions::parse_admin(in);
  auto variant = cfg.variant == "unit" ? reductions::TreeVariant::kUnitExpanded
                                       : reductions::TreeVariant::kSized;
  if (cfg.variant != "unit" && cfg.variant != "sized")
    throw UsageError("unknown variant '" + cfg.variant + "' (sized|unit)");
  auto tree = reductions::build_adaptive_min_tree(inst, variant, cfg.budget);
  if (!cfg.emit_gadget.empty()) {
    auto out = open_output(cfg.emit_gadget);
    io::write_graph(out, tree.graph);
  }
  auto solved = reductions::solve_adaptive_min_via_hac(tree, inst.x);
  if (!cfg.merge_log.empty()) {
    auto out = open_output(cfg.merge_log);
    io::write_dendrogram(out, solved.dendrogram);
  }
  auto check = reductions::simulate_adaptive_minimum(inst);
  if (solved.k_x != check.k_x)
    throw UsageError("decoded k_x disagrees with direct simulation (construction bug)");
  std::cerr << "n=" << inst.n << " x=" << inst.x << " variant=" << cfg.variant << ", tree "
            << tree.graph.n << " vertices\n";
  std::cout << "k_x = " << solved.k_x << "\n";
  return 0;
}

int cmd_verify(const std::string& suite, std::uint64_t seed, bool inject) {
  verify::Options opt;
  opt.seed = seed;
  opt.inject_tie_bug = inject;
  auto results = verify::run_suite(suite, opt);
  bool all = true;
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS" : "FAIL") << " [" << r.criterion << "] " << r.name << " - "
              << r.detail << "\n";
    all = all && r.pass;
  }
  std::cerr << "suite '" << suite << "': " << (all ? "all checks passed" : "FAILURES") << " (rng "
            << gen::Rng::kName << ", seed " << seed << ")\n";
  return all ? 0 : 1;
}

int cmd_query(const std::string& dendro_path, int u, int v, const std::string& mode) {
  auto in = open_input(dendro_path);
  std::optional<int> step;
  if (mode == "rational") {
    auto d = io::parse_dendrogram<Rational>(in);
    if (d.merges.empty()) {
      std::cout << "never-merged\n";
      return 0;
    }
    step = merge_index(d, u, v);
  } else if (mode == "float") {
    auto d = io::parse_dendrogram<double>(in);
    if (d.merges.empty()) {
      std::cout << "never-merged\n";
      return 0;
    }
    step = merge_index(d, u, v);
  } else {
    throw UsageError("unknown mode '" + mode + "' (rational|float)");
  }
  if (step)
    std::cout << *step << "\n";
  else
    std::cout << "never-merged\n";
  return 0;
}

struct GenConfig {
  std::string kind;
  std::string out;
  std::string input;
  std::string variant = "sized";
  int n = 16;
  int m = -1;
  int t = 5;
  int density = 50;
  long long max_weight = 0;  // 0: derive from n
  std::uint64_t seed = 1;
};

int cmd_gen(const GenConfig& cfg) {
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!cfg.out.empty()) {
    file = open_output(cfg.out);
    os = &file;
  }
  gen::Rng rng(cfg.seed);
  if (cfg.kind == "path") {
    long long maxv = cfg.max_weight > 0
                         ? cfg.max_weight
                         : std::min<long long>(static_cast<long long>(cfg.n) * cfg.n * cfg.n, 1000000);
    io::write_graph(*os, gen::random_path(cfg.n, maxv, rng));
  } else if (cfg.kind == "sparse") {
    long long maxm = static_cast<long long>(cfg.n) * (cfg.n - 1) / 2;
    int m = cfg.m > 0 ? cfg.m : static_cast<int>(std::min<long long>(2 * cfg.n, maxm));
    io::write_graph(*os, gen::random_connected(cfg.n, m, rng));
  } else if (cfg.kind == "triangle") {
    auto g = gen::random_simple(cfg.t, cfg.density, rng);
    *os << "n " << g.t << "\n";
    for (auto [u, v] : g.edges) *os << u << " " << v << "\n";
  } else if (cfg.kind == "lfm") {
    auto inst = gen::random_lfm(cfg.n, rng);
    *os << inst.n << "\n";
    for (auto [l, r] : inst.edges) *os << l << " " << r << "\n";
    *os << "query " << inst.query.first << " " << inst.query.second << "\n";
  } else if (cfg.kind == "admin") {
    auto inst = gen::random_admin(cfg.n, rng);
    *os << inst.n << " " << inst.x << "\n";
    for (const auto& row : inst.a) {
      for (size_t j = 0; j < row.size(); j++) *os << (j ? " " : "") << row[j];
      *os << "\n";
    }
  } else if (cfg.kind == "triangle-gadget") {
    if (cfg.input.empty()) throw UsageError("triangle-gadget needs --input");
    auto in = open_input(cfg.input);
    auto g = reductions::parse_simple_graph(in);
    io::write_graph(*os, reductions::build_triangle_instance(g).gadget);
  } else if (cfg.kind == "admin-tree") {
    if (cfg.input.empty()) throw UsageError("admin-tree needs --input");
    auto in = open_input(cfg.input);
    auto inst = reductions::parse_admin(in);
    auto variant = cfg.variant == "unit" ? reductions::TreeVariant::kUnitExpanded
                                         : reductions::TreeVariant::kSized;
    io::write_graph(*os, reductions::build_adaptive_min_tree(inst, variant).graph);
  } else {
    throw UsageError("unknown fixture kind '" + cfg.kind + "'");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact average-linkage hierarchical agglomerative clustering on weighted graphs:\n"
      "a reference greedy oracle, nearest-neighbor-chain and heap-based engines, a\n"
      "deterministic parallel engine for path graphs, and merge-order reduction\n"
      "pipelines (triangle detection, LFM matching, adaptive minimum)."};
  app.require_subcommand(1);

  RunConfig run_cfg;
  auto* run = app.add_subcommand("run", "Run one engine on a graph file");
  run->add_option("--algo", run_cfg.algo, "oracle|chain|heap|path")->required();
  run->add_option("--input", run_cfg.input, "graph file")->required();
  run->add_option("--output", run_cfg.output, "dendrogram file (JSON lines)")->required();
  run->add_option("--mode", run_cfg.mode, "rational|float (default rational)");
  run->add_option("--workers", run_cfg.workers, "worker threads (path engine only)");
  run->add_option("--telemetry", run_cfg.telemetry_path, "write operation counters as JSON");
  run->add_flag("--audit", run_cfg.audit, "enable run-time structure audits (path engine)");

  ReduceConfig red_cfg;
  auto* reduce = app.add_subcommand("reduce", "Run a reduction pipeline end to end");
  reduce->require_subcommand(1);
  auto* tri = reduce->add_subcommand("triangle", "triangle detection via HAC merge order");
  auto* lfm = reduce->add_subcommand("lfm", "LFM matching via adaptive minimum");
  auto* admt = reduce->add_subcommand("admin-tree", "adaptive minimum via tree HAC");
  for (auto* sub : {tri, lfm, admt}) {
    sub->add_option("--input", red_cfg.input, "instance file")->required();
    sub->add_option("--emit-gadget", red_cfg.emit_gadget, "write the constructed instance");
    sub->add_option("--merge-log", red_cfg.merge_log, "write the HAC merge log");
  }
  admt->add_option("--variant", red_cfg.variant, "sized|unit (default sized)");
  admt->add_option("--budget", red_cfg.budget, "vertex budget for unit expansion");

  std::string verify_suite = "all";
  std::uint64_t verify_seed = 1;
  bool inject_tie_bug = false;
  auto* ver = app.add_subcommand("verify", "Run the verification suites");
  ver->add_option("suite", verify_suite, "engines|path|reductions|all");
  ver->add_option("--seed", verify_seed, "generator seed (appears in the report)");
  ver->add_flag("--inject-tie-bug", inject_tie_bug,
                "fault injection: flip the heap engine's tie rule (must fail)");

  std::string bench_target, bench_sizes = "1024", bench_mode = "rational";
  int bench_workers = 1;
  std::uint64_t bench_seed = 1;
  auto* bench_cmd = app.add_subcommand("bench", "Timed runs over generated instances");
  bench_cmd->add_option("--target", bench_target, "oracle|chain|heap|path")->required();
  bench_cmd->add_option("--sizes", bench_sizes, "comma-separated n values");
  bench_cmd->add_option("--workers", bench_workers, "worker threads (path)");
  bench_cmd->add_option("--mode", bench_mode, "rational|float");
  bench_cmd->add_option("--seed", bench_seed, "generator seed");

  std::string query_dendro, query_mode = "rational";
  int query_u = 0, query_v = 0;
  auto* query = app.add_subcommand("query", "First merge step of two leaves in a dendrogram file");
  query->add_option("--dendro", query_dendro, "dendrogram file")->required();
  query->add_option("--u", query_u, "first leaf")->required();
  query->add_option("--v", query_v, "second leaf")->required();
  query->add_option("--mode", query_mode, "rational|float");

  GenConfig gen_cfg;
  auto* gen_cmd = app.add_subcommand("gen", "Emit fixture instances");
  gen_cmd->add_option("kind", gen_cfg.kind,
                      "path|sparse|triangle|lfm|admin|triangle-gadget|admin-tree")
      ->required();
  gen_cmd->add_option("--n", gen_cfg.n, "vertex / instance size");
  gen_cmd->add_option("--m", gen_cfg.m, "edge count (sparse)");
  gen_cmd->add_option("--t", gen_cfg.t, "triangle-instance vertex count");
  gen_cmd->add_option("--density", gen_cfg.density, "edge density percent (triangle)");
  gen_cmd->add_option("--max-weight", gen_cfg.max_weight, "weight cap (path)");
  gen_cmd->add_option("--seed", gen_cfg.seed, "generator seed");
  gen_cmd->add_option("--out", gen_cfg.out, "output file (default stdout)");
  gen_cmd->add_option("--input", gen_cfg.input, "source instance (gadget emitters)");
  gen_cmd->add_option("--variant", gen_cfg.variant, "sized|unit (admin-tree)");

  try {
    app.parse(argc, argv);
    if (*run) return cmd_run(run_cfg);
    if (*tri) return cmd_reduce_triangle(red_cfg);
    if (*lfm) return cmd_reduce_lfm(red_cfg);
    if (*admt) return cmd_reduce_admin_tree(red_cfg);
    if (*ver) return cmd_verify(verify_suite, verify_seed, inject_tie_bug);
    if (*bench_cmd) {
      std::stringstream sizes(bench_sizes);
      std::string tok;
      while (std::getline(sizes, tok, ',')) {
        auto row = hac::bench::run_once(bench_target, std::stoi(tok), bench_workers,
                                        bench_mode == "rational", bench_seed);
        std::cout << hac::bench::row_json(row) << "\n";
      }
      return 0;
    }
    if (*query) return cmd_query(query_dendro, query_u, query_v, query_mode);
    if (*gen_cmd) return cmd_gen(gen_cfg);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const hac::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const hac::CapacityError& e) {
    std::cerr << "capacity error: " << e.what() << "\n";
    return 2;
  } catch (const hac::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
