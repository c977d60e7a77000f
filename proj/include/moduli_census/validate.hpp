#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "moduli_census/family.hpp"

namespace census {

struct SuiteResult {
  std::string name;
  std::size_t checked = 0;
  std::size_t failures = 0;
  std::string first_failure;
  bool ok() const { return failures == 0 && checked > 0; }
};

/// Invariant suites over a family: zeta, lambda, higgs, unstable, epsilon, xz, estimate,
/// lemmas. "all" runs every suite.
const std::vector<std::string>& suite_names();
std::vector<SuiteResult> run_suites(const std::string& suite, const Family& fam, std::uint64_t seed = 0);

}  // namespace census
