#pragma once

// The acceptance suites, shared by the acceptance test binary and the CLI.

#include <cstdint>
#include <string>
#include <vector>

namespace qchev {

struct CaseResult {
  std::string name;
  bool pass = false;
  bool skipped = false;
  double ms = 0;
  std::string detail;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  std::vector<CaseResult> cases;
  double ms = 0;
  bool pass() const;
  std::size_t skipped() const;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int trials = 100;  // random combinations per configuration in the round-trip suite
  int jobs = 1;
  int verma_depth = 10;  // truncation order of the Verma trace identity
};

constexpr int kCriterionCount = 10;
std::string criterion_title(int id);
CriterionResult run_criterion(int id, const SuiteOptions& opt);
/// Runs the given criteria (all when empty), up to opt.jobs at a time; results
/// are ordered by id.
std::vector<CriterionResult> run_suite(const std::vector<int>& ids, const SuiteOptions& opt);
/// "[PASS] 3 explicit dynamical formula (28 cases, 12.3 ms)".
std::string summary_line(const CriterionResult& r);

}  // namespace qchev
