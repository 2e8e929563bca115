#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qhyp {

struct Check {
  std::string name;
  int passed = 0, total = 0;
  std::string detail;
  bool ok() const { return passed == total; }
};

struct CriterionResult {
  int id = 0;
  std::string name;
  std::vector<Check> checks;
  double seconds = 0;
  bool pass() const;
  std::string line() const;
};

constexpr int kCriteria = 11;
CriterionResult run_criterion(int id, std::uint64_t seed);
// threads <= 0 picks std::thread::hardware_concurrency (or QHYP_THREADS when set)
std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, std::uint64_t seed, int threads = 0);

}  // namespace qhyp
