#pragma once

// Orchestrated property suite: one entry per invariant, each deterministic
// given (level, seed) and independent of the thread count.

#include <cstdint>
#include <string>
#include <vector>

#include "gowers/serialization.hpp"

namespace gowers {

enum class SuiteLevel { kQuick, kFull };

struct SuiteOptions {
  SuiteLevel level = SuiteLevel::kQuick;
  std::uint64_t seed = 7;
  /// Entry whose first checked left-hand side is perturbed by +1.
  std::string inject_fault;
  /// Only run entries whose name starts with this prefix.
  std::string filter;
};

struct SuiteEntry {
  std::string name;
  bool passed = true;
  std::size_t cases = 0;
  double worst_slack = 0.0;  // min over checks of rhs + tol - lhs
  std::string detail;
};

struct SuiteReport {
  SuiteLevel level = SuiteLevel::kQuick;
  std::uint64_t seed = 0;
  std::vector<SuiteEntry> entries;
  bool passed() const;
};

std::vector<std::string> suite_entry_names();
SuiteReport run_verify_suite(const SuiteOptions& opts);
Json to_json(const SuiteReport& r);
SuiteLevel parse_suite_level(const std::string& s);

}  // namespace gowers
