#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "wallforge/acceptance.hpp"
#include "wallforge/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"domain-wall solver and stability analyzer for the weighted "
               "pendulum equation"};
  app.require_subcommand(1);

  std::string config_path;
  CLI::App* run_cmd =
      app.add_subcommand("run", "execute the analyses declared in a config");
  run_cmd->add_option("config", config_path, "JSON config file")->required();

  wallforge::acceptance::Options acc;
  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the full acceptance suite");
  verify_cmd->add_option("--cells-per-unit", acc.cells_per_unit,
                         "base mesh resolution (default 200)");
  verify_cmd->add_flag("--debug-mutate-l0", acc.mutate_l0_sign,
                       "flip the L0 potential sign (mutation-test mode)");

  CLI11_PARSE(app, argc, argv);

  if (*run_cmd) {
    const wallforge::RunOutcome out = wallforge::run(config_path);
    if (out.report.contains("error")) {
      std::cerr << "error: " << out.report["error"]["message"] << '\n';
    } else {
      std::cout << "report: " << out.report_path.string() << '\n';
      if (!out.profile_path.empty() &&
          out.report.contains("profile_file")) {
        std::cout << "profile: " << out.profile_path.string() << '\n';
      }
      std::cout << (out.exit_code == 0 ? "all analyses passed"
                                       : "some analyses flagged failures")
                << '\n';
    }
    return out.exit_code;
  }

  const auto results = wallforge::acceptance::run_all(acc);
  return wallforge::acceptance::print_results(results, std::cout);
}
