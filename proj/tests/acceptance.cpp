// Runs every acceptance criterion and prints one line per criterion.

#include <cstdio>

#include "qchev/suites.hpp"

int main() {
  qchev::SuiteOptions opt;
  bool ok = true;
  for (int id = 1; id <= qchev::kCriterionCount; ++id) {
    const qchev::CriterionResult r = qchev::run_criterion(id, opt);
    std::printf("%s\n", qchev::summary_line(r).c_str());
    for (const auto& c : r.cases)
      if (!c.pass || c.skipped) std::printf("    %s %s: %s\n", c.skipped ? "skip" : "FAIL", c.name.c_str(), c.detail.c_str());
    std::fflush(stdout);
    ok = ok && r.pass();
  }
  return ok ? 0 : 1;
}
