#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace minkgauss::verify {

struct Check {
  std::string name;
  bool passed = false;
  double worst = 0;      // largest residual observed
  double tolerance = 0;
  std::string failure;   // failing case, verbatim and reproducible
};

struct SuiteResult {
  std::string suite;
  std::uint64_t seed = 0;
  std::vector<Check> checks;
  double seconds = 0;

  bool passed() const;
};

// algebra, jets, engine, identities, classification.
std::vector<std::string> suite_names();
bool is_suite(std::string_view name);  // also accepts "all"

// Runs one suite, or every suite for "all". Throws std::invalid_argument for
// unknown names.
std::vector<SuiteResult> run(std::string_view name, std::uint64_t seed,
                             unsigned threads = 1);

SuiteResult run_algebra(std::uint64_t seed);
SuiteResult run_jets(std::uint64_t seed);
SuiteResult run_engine(std::uint64_t seed);
SuiteResult run_identities(std::uint64_t seed, unsigned threads = 1);
SuiteResult run_classification(std::uint64_t seed, unsigned threads = 1);

// The expression corpus shared by the jet and parser checks.
const std::vector<std::string>& expression_corpus();

}  // namespace minkgauss::verify
