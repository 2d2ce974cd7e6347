#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

#include "sparsemaps/stats.hpp"

namespace sparsemaps {

// Zero fields fall back to the suite's defaults.
struct SuiteConfig {
  std::uint64_t n = 0;
  std::uint64_t s = 0;
  std::uint64_t faces = 0;
  std::uint64_t genus = 0;
  std::uint64_t samples = 0;
  std::uint64_t seed = 1;
  // Trivalent samples behind Monte Carlo defect tables.
  std::uint64_t table_samples = 0;
};

struct SuiteResult {
  std::string name;
  // Acceptance criterion number, 0 for auxiliary suites.
  int criterion = 0;
  std::string description;
  std::vector<StatReport> reports;
  Verdict verdict = Verdict::Fail;
  bool within_tolerance = false;
  double runtime_seconds = 0.0;
};

struct SuiteInfo {
  std::string name;
  int criterion;
  std::string description;
};
const std::vector<SuiteInfo>& suite_catalog();

// Throws std::invalid_argument for unknown names.
SuiteResult run_suite(const std::string& name, const SuiteConfig& config, std::ostream* log = nullptr);

}  // namespace sparsemaps
