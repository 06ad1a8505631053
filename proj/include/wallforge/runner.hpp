#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "wallforge/report.hpp"

namespace wallforge {

/// Exit codes: 0 all requested analyses passed their flags, 2 at least one
/// flag failed, 1 configuration or runtime error (with a machine-readable
/// error record in report.json when the output directory is writable).
struct RunOutcome {
  int exit_code = 0;
  nlohmann::json report;
  std::filesystem::path report_path;
  std::filesystem::path profile_path;
};

/// Execute the analyses requested by a config file, in the fixed order
/// solve, diagnostics, stability, prop1, sweep, verify. Analyses that need
/// a solved wall trigger the solve implicitly. Writes report.json and
/// profile.csv into the output directory (WALLFORGE_OUTPUT_DIR overrides
/// the configured path).
RunOutcome run(const std::string& config_path);

/// Run an already-parsed config (used by tests).
RunOutcome run(const RunConfig& config);

}  // namespace wallforge
