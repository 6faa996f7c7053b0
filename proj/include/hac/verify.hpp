#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace hac::verify {

struct CheckResult {
  int criterion = 0;  // 1..11
  std::string name;
  bool pass = false;
  std::string detail;  // parameters, measured constants, counterexample dump
};

// Criterion 8 aggregates over every greedy-ordered run the other suites make.
struct MonotonicityLog {
  std::uint64_t runs = 0;
  std::uint64_t violations = 0;
  std::string first_violation;
};

struct Options {
  std::uint64_t seed = 1;
  bool inject_tie_bug = false;  // negative-test hook: breaks the heap engine's tie rule
};

CheckResult engine_equivalence(const Options& opt, MonotonicityLog* log);   // 1
CheckResult path_equivalence(const Options& opt, MonotonicityLog* log);     // 2
CheckResult height_law(const Options& opt);                                 // 3
CheckResult triangle_reduction(const Options& opt, MonotonicityLog* log);   // 4
CheckResult admin_tree_reduction(const Options& opt, MonotonicityLog* log); // 5
CheckResult lfm_chain(const Options& opt);                                  // 6
CheckResult work_bound(const Options& opt);                                 // 7
CheckResult monotonicity(const MonotonicityLog& log);                       // 8
CheckResult drop_lemmas();                                                  // 9
CheckResult worker_determinism(const Options& opt);                         // 10
CheckResult path_performance(const Options& opt);                           // 11

// suite: "engines" (1,7,8,9), "path" (2,3,10,11,8), "reductions" (4,5,6,8),
// or "all" (everything in criterion order).
std::vector<CheckResult> run_suite(const std::string& suite, const Options& opt);

}  // namespace hac::verify
