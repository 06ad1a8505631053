#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "wallforge/wall_solver.hpp"
#include "wallforge/weight.hpp"

namespace wallforge {

/// Declarative run description, loaded from a JSON config file.
struct RunConfig {
  std::vector<double> weight_breakpoints;
  std::vector<double> weight_values;
  double half_length = 12.0;
  int cells_per_unit = 200;
  SolverOptions solver;
  std::vector<std::string> analyses;
  std::vector<double> sweep_x0;  // empty -> {1, 2, ..., 12}
  std::string output_dir = "out";
};

/// Parse and validate. Throws ConfigParseError on malformed input, unknown
/// analyses, or an empty analysis list.
RunConfig parse_run_config(const nlohmann::json& j);
RunConfig load_run_config(const std::string& path);

nlohmann::json config_to_json(const RunConfig& c);

/// True when every number reachable in the document is finite.
bool report_numbers_finite(const nlohmann::json& j);

/// Serialize with a stable layout (sorted keys, 2-space indent).
std::string serialize_report(const nlohmann::json& report);

}  // namespace wallforge
