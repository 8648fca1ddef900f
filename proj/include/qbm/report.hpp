#pragma once

// Command driver behind the CLI: table, verify and integrate runs described by
// a JSON configuration, producing JSON or CSV reports.

#include <string>

namespace qbm {

struct RunResult {
  int exit_code;       // 0 all pass, 1 violation found
  std::string output;  // report in the requested format
};

/// Runs one command. Throws Error(Config) naming the offending field when the
/// configuration is invalid.
RunResult run_command(const std::string& config_json);

}  // namespace qbm
