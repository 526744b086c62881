#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "json.hpp"

// Seeded property suites shared by the acceptance runner and `selftest`.
// Each suite returns counts and a verdict; timing is measured by the caller.
namespace eulerdet::suites {

struct SuiteResult {
  int criterion = 0;
  std::string name;
  long cases = 0;
  bool pass = false;
  nlohmann::json counts = nlohmann::json::object();
  std::vector<std::string> failures;  // first few failing cases
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  double scale = 1.0;  // multiplies the case counts
  // Hidden canary: flips the leading-term sign convention so the trace suite
  // must fail.
  bool flip_convention = false;
};

SuiteResult example_suite(const SuiteOptions& o);
SuiteResult interpolation_suite(const SuiteOptions& o);
SuiteResult monodromy_suite(const SuiteOptions& o);
SuiteResult determinant_suite(const SuiteOptions& o);
SuiteResult trace_suite(const SuiteOptions& o);
SuiteResult sigma_suite(const SuiteOptions& o);
SuiteResult iwasawa_suite(const SuiteOptions& o);
SuiteResult cross_module_suite(const SuiteOptions& o);

struct SuiteEntry {
  int criterion;
  std::string name;
  std::function<SuiteResult(const SuiteOptions&)> run;
};

// In criterion order 1..8.
const std::vector<SuiteEntry>& all_suites();

nlohmann::json to_json(const SuiteResult& r);

}  // namespace eulerdet::suites
