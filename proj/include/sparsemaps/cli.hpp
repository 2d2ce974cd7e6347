#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace sparsemaps {

// Process exit statuses.
enum ExitCode : int { exit_ok = 0, exit_usage = 1, exit_test_failure = 2, exit_unsupported = 3 };

std::string tool_version();

struct RunConfig {
  std::string subcommand;
  std::uint64_t n = 0;
  std::uint64_t faces = 1;
  std::uint64_t genus = 0;
  std::uint64_t s = 0;
  std::uint64_t count = 1;
  std::optional<std::uint64_t> seed;
  std::string mode = "exact";
  std::string backend = "auto";
  std::string table;
  std::string input;
  std::string output;
  std::string format;
  std::string suite;
  std::uint64_t samples = 0;
  std::uint64_t table_samples = 0;
  std::uint64_t oracle_edges = 0;
  std::uint64_t threads = 1;
};

// Compact JSON object of every field, embedded in artifacts.
std::string config_json(const RunConfig& config);

// Runs one subcommand. Artifacts go to config.output, or to `out` when it is
// empty; diagnostics go to `err`.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// Parses argv and runs. Parse errors return exit_usage.
int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);

}  // namespace sparsemaps
