#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace bosegas::suite {

struct CheckResult {
  std::string name;
  bool passed = false;
  double metric = 0.0;     // worst observed value of the checked quantity
  double tolerance = 0.0;  // pinned acceptance threshold
  std::string detail;
  double seconds = 0.0;
};

// The full verification battery; every tolerance is pinned in the
// implementation, the seed only feeds the Monte Carlo members.
std::vector<CheckResult> run_full_suite(std::uint64_t seed = 20240817);

}  // namespace bosegas::suite
