#pragma once
// Seeded property suites over random instances of every module.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace cohw {

struct PropertyResult {
  std::string name;
  int checked = 0;
  int passed = 0;
  std::vector<std::string> counterexamples;  // at most three, in instance order
  bool ok() const { return checked == passed; }
};

struct SuiteResult {
  std::string suite;
  uint64_t seed = 0;
  int instances = 0;
  std::vector<PropertyResult> properties;
  bool ok() const;
};

// Suite names in run order; "all" is accepted by run_verify but not listed.
const std::vector<std::string>& suite_names();
bool is_suite(const std::string& name);
int default_instances(const std::string& suite);

// Instance i of a suite draws from the i-th split of Rng(seed), so reports depend only on
// (suite, seed, instances). Throws std::invalid_argument for an unknown suite.
SuiteResult run_suite(const std::string& suite, uint64_t seed, std::optional<int> instances = std::nullopt);
std::vector<SuiteResult> run_verify(const std::string& suite, uint64_t seed, std::optional<int> instances = std::nullopt);

}  // namespace cohw
