#pragma once

// Randomized property suites with built-in generators and brute-force
// oracles. Every case draws from its own seed, derived from the run seed, the
// suite name and the case index, so results do not depend on the thread
// count or on which suites run together.

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace fixcat::proptest {

struct Options {
  std::uint64_t seed = 1;
  unsigned threads = 1;
  // Multiplies every suite's default case count (at least one case runs).
  double scale = 1.0;
  // Empty runs every suite.
  std::vector<std::string> suites;
};

struct Failure {
  std::size_t case_index = 0;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::string property;
  std::size_t cases = 0;
  // Individual property instances checked across all cases.
  std::size_t checks = 0;
  std::size_t failed = 0;
  std::vector<Failure> examples;  // the first few failures by case index

  bool passed() const { return failed == 0; }
};

struct SuiteInfo {
  std::string name;
  std::string property;
  std::size_t default_cases = 0;
};

const std::vector<SuiteInfo>& suites();

std::uint64_t case_seed(std::uint64_t seed, std::string_view suite, std::size_t index);

// Throws Error("UnknownSuite").
SuiteResult run_suite(const std::string& name, const Options& options);
std::vector<SuiteResult> run(const Options& options);

}  // namespace fixcat::proptest
