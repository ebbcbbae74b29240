#pragma once
// The acceptance battery shared by the CLI `suite` command and the acceptance
// test binary. Reports are key=value lines; timings stay out of the report body.

#include <cstdint>
#include <string>
#include <vector>

namespace omegapow {

inline constexpr uint64_t kDefaultSeed = 20240607;
inline constexpr int kCriteria = 10;

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::vector<std::string> facts;  // key=value, deterministic
  double seconds = 0;
  double budget = 0;  // seconds, 0 = none
};

CriterionResult run_criterion(int id, uint64_t seed);
/// Criterion 10 reruns every other requested criterion and compares reports.
std::vector<CriterionResult> run_suite(const std::vector<int>& ids, uint64_t seed);
std::string format_report(const std::vector<CriterionResult>& rs, uint64_t seed);
/// One line per criterion: "criterion N <name>: PASS|FAIL", optionally with timings.
std::string format_table(const std::vector<CriterionResult>& rs, bool with_times = true);

}  // namespace omegapow
