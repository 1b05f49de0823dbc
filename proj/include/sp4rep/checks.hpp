#pragma once
#include <cstdint>
#include <string>
#include <vector>

#include "sp4rep/config.hpp"

namespace sp4rep::checks {

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0;  // measured worst-case residual (or |value - expected|)
  double threshold = 0; // the tolerance it was held against
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  double seconds = 0;

  bool passed() const
  {
    for (const auto &c : checks)
      if (!c.passed)
        return false;
    return true;
  }
};

//! Suites mirror the library modules: cquat, sp4, wigner, harmonics,
//! gegenbauer, fockbasis, elements, characters.  "all" runs everything.
std::vector<std::string> suite_names();

SuiteResult run_suite(const std::string &name, std::uint64_t seed);
std::vector<SuiteResult> run_all(std::uint64_t seed);

} // namespace sp4rep::checks
