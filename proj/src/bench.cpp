#include "hac/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "hac/generators.hpp"
#include "hac/oracle.hpp"
#include "hac/pathhac.hpp"

namespace hac::bench {

namespace {

template <class W>
Row run_typed(const std::string& target, const WeightedGraph<W>& g, int workers,
              std::uint64_t seed) {
  Row row;
  row.target = target;
  row.mode = WeightTraits<W>::mode_name();
  row.n = g.n;
  row.m = static_cast<long long>(g.edges.size());
  row.workers = workers;
  row.seed = seed;
  auto t0 = std::chrono::steady_clock::now();
  Dendrogram<W> d;
  if (target == "oracle") {
    d = run_greedy(g);
  } else if (target == "chain") {
    d = run_nn_chain(g, &row.telemetry);
  } else if (target == "heap") {
    auto res = run_heap_based(g);
    d = std::move(res.dendrogram);
    row.telemetry = res.telemetry;
  } else if (target == "path") {
    d = run_path_hac(g, workers);
  } else {
    throw UsageError("unknown benchmark target '" + target + "'");
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  row.height = dendrogram_stats(d).height;
  row.merges = static_cast<long long>(d.merges.size());
  row.mh_log2n = static_cast<double>(row.m) * row.height * std::log2(std::max(2.0, double(row.n)));
  return row;
}

}  // namespace

Row run_once(const std::string& target, int n, int workers, bool rational, std::uint64_t seed) {
  if (target == "oracle" && n > 512)
    throw CapacityError("oracle benchmarks are capped at n = 512 (quadratic-per-step reference)");
  gen::Rng rng(seed);
  WeightedGraph<Rational> g;
  if (target == "path") {
    g = gen::random_path(n, std::min<long long>(static_cast<long long>(n) * n, 1000000), rng);
  } else {
    long long maxm = static_cast<long long>(n) * (n - 1) / 2;
    g = gen::random_connected(n, static_cast<int>(std::min<long long>(2 * n, maxm)), rng);
  }
  if (rational) return run_typed(target, g, workers, seed);
  return run_typed(target, to_float_graph(g), workers, seed);
}

std::string row_json(const Row& row) {
  std::ostringstream ss;
  ss << "{\"target\":\"" << row.target << "\",\"mode\":\"" << row.mode << "\",\"n\":" << row.n
     << ",\"m\":" << row.m << ",\"workers\":" << row.workers << ",\"seed\":" << row.seed
     << ",\"seconds\":" << row.seconds << ",\"height\":" << row.height
     << ",\"merges\":" << row.merges << ",\"mh_log2n\":" << row.mh_log2n;
  if (row.target == "chain" || row.target == "heap") {
    ss << ",\"heap_ops\":" << row.telemetry.heap_ops
       << ",\"neighbor_elements_touched\":" << row.telemetry.neighbor_elements_touched
       << ",\"unsuccessful_extractions\":" << row.telemetry.unsuccessful_extractions;
  }
  ss << "}";
  return ss.str();
}

}  // namespace hac::bench
