#pragma once

#include <cstdint>
#include <string>

#include "hac/engines.hpp"

namespace hac::bench {

struct Row {
  std::string target;  // oracle | chain | heap | path
  std::string mode;    // rational | float64
  int n = 0;
  long long m = 0;
  int workers = 1;
  std::uint64_t seed = 0;
  double seconds = 0;
  int height = 0;
  long long merges = 0;
  Telemetry telemetry;  // populated for chain/heap
  double mh_log2n = 0;  // m * h * log2(n), the work-bound yardstick
};

// Random instance (path for the path engine, sparse m = 2n otherwise), one
// timed run. Refuses oracle targets above n = 512.
Row run_once(const std::string& target, int n, int workers, bool rational, std::uint64_t seed);

std::string row_json(const Row& row);

}  // namespace hac::bench
