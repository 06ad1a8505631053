#include "wallforge/report.hpp"

#include <cmath>
#include <fstream>
#include <set>

#include "wallforge/errors.hpp"

namespace wallforge {

namespace {

const std::set<std::string> kKnownAnalyses{"solve",     "diagnostics",
                                           "stability", "prop1",
                                           "sweep",     "verify"};

}  // namespace

RunConfig parse_run_config(const nlohmann::json& j) {
  RunConfig c;
  try {
    if (!j.contains("weight") || !j["weight"].contains("values")) {
      throw ConfigParseError("config must declare weight.values");
    }
    const auto& w = j["weight"];
    if (w.contains("breakpoints")) {
      c.weight_breakpoints = w["breakpoints"].get<std::vector<double>>();
    }
    c.weight_values = w["values"].get<std::vector<double>>();

    c.half_length = j.value("half_length", 12.0);
    c.cells_per_unit = j.value("cells_per_unit", 200);

    if (j.contains("solver")) {
      const auto& s = j["solver"];
      c.solver.max_iterations =
          s.value("max_iterations", c.solver.max_iterations);
      c.solver.residual_tolerance =
          s.value("residual_tolerance", c.solver.residual_tolerance);
      c.solver.damping = s.value("damping", c.solver.damping);
      c.solver.clamp = s.value("clamp", c.solver.clamp);
    }

    if (!j.contains("analyses")) {
      throw ConfigParseError("config must declare analyses");
    }
    c.analyses = j["analyses"].get<std::vector<std::string>>();
    if (c.analyses.empty()) {
      throw ConfigParseError("analyses must be nonempty");
    }
    for (const auto& a : c.analyses) {
      if (!kKnownAnalyses.count(a)) {
        throw ConfigParseError("unknown analysis: " + a);
      }
    }

    if (j.contains("sweep") && j["sweep"].contains("x0_values")) {
      c.sweep_x0 = j["sweep"]["x0_values"].get<std::vector<double>>();
    }
    c.output_dir = j.value("output_dir", std::string("out"));
  } catch (const ConfigParseError&) {
    throw;
  } catch (const std::exception& e) {
    throw ConfigParseError(std::string("malformed config: ") + e.what());
  }

  if (c.solver.max_iterations <= 0 || !(c.solver.residual_tolerance > 0.0) ||
      !(c.solver.damping > 0.0 && c.solver.damping < 1.0)) {
    throw ConfigParseError("invalid solver options");
  }
  return c;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigParseError("cannot open config file: " + path);
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ConfigParseError(std::string("config is not valid JSON: ") +
                           e.what());
  }
  return parse_run_config(j);
}

nlohmann::json config_to_json(const RunConfig& c) {
  nlohmann::json j;
  j["weight"]["breakpoints"] = c.weight_breakpoints;
  j["weight"]["values"] = c.weight_values;
  j["half_length"] = c.half_length;
  j["cells_per_unit"] = c.cells_per_unit;
  j["solver"]["max_iterations"] = c.solver.max_iterations;
  j["solver"]["residual_tolerance"] = c.solver.residual_tolerance;
  j["solver"]["damping"] = c.solver.damping;
  j["solver"]["clamp"] = c.solver.clamp;
  j["analyses"] = c.analyses;
  if (!c.sweep_x0.empty()) j["sweep"]["x0_values"] = c.sweep_x0;
  j["output_dir"] = c.output_dir;
  return j;
}

bool report_numbers_finite(const nlohmann::json& j) {
  if (j.is_number_float()) return std::isfinite(j.get<double>());
  if (j.is_object() || j.is_array()) {
    for (const auto& item : j) {
      if (!report_numbers_finite(item)) return false;
    }
  }
  return true;
}

std::string serialize_report(const nlohmann::json& report) {
  return report.dump(2);
}

}  // namespace wallforge
