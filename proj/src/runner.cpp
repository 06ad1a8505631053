#include "wallforge/runner.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <optional>

#include "wallforge/diagnostics.hpp"
#include "wallforge/energy.hpp"
#include "wallforge/errors.hpp"
#include "wallforge/oracles.hpp"
#include "wallforge/stability.hpp"
#include "wallforge/wall_solver.hpp"

namespace wallforge {

namespace {

constexpr int kSchemaVersion = 1;

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.16e", v);
  return buf;
}

bool wants(const RunConfig& c, const std::string& a) {
  return std::find(c.analyses.begin(), c.analyses.end(), a) !=
         c.analyses.end();
}

bool needs_solve(const RunConfig& c) {
  return wants(c, "solve") || wants(c, "diagnostics") ||
         wants(c, "stability") || wants(c, "verify");
}

void write_profile_csv(const std::filesystem::path& path, const Profile& p,
                       const FluxField& flux,
                       const FirstIntegralReport& fi) {
  const Grid& g = *p.grid;
  const std::vector<double> nflux = nodal_flux(flux);
  const std::vector<double> nfi = nodal_first_integral(g, fi.cell_values);
  std::ofstream out(path);
  out << "x,phi,flux,first_integral\n";
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    out << fmt17(g.nodes[i]) << ',' << fmt17(p.values[i]) << ','
        << fmt17(nflux[i]) << ',' << fmt17(nfi[i]) << '\n';
  }
}

struct SolvedState {
  std::shared_ptr<const Grid> grid;
  SolveResult newton;
  SolveResult convex;
  double cross_sup = 0.0;
  bool agreement_ok = false;
};

SolvedState do_solve(const Weight& w, const RunConfig& c) {
  SolvedState s;
  s.grid = build_grid(w, c.half_length, c.cells_per_unit);
  s.newton = solve_newton(w, s.grid, c.solver);
  s.convex = solve_convex(w, s.grid, c.solver);
  for (std::size_t i = 0; i < s.grid->node_count(); ++i) {
    s.cross_sup = std::max(s.cross_sup, std::abs(s.newton.profile.values[i] -
                                                 s.convex.profile.values[i]));
  }
  // Disagreement beyond tolerance falsifies the uniqueness numerics; both
  // results are reported and the flag fails, never an average.
  s.agreement_ok = s.cross_sup <= 1e-6;
  return s;
}

nlohmann::json solve_section(const SolvedState& s) {
  nlohmann::json j;
  j["energy"] = energy_G(s.newton.profile);
  j["newton"] = {{"iterations", s.newton.iterations},
                 {"final_residual", s.newton.final_residual},
                 {"path", to_string(s.newton.path)}};
  j["convex"] = {{"iterations", s.convex.iterations},
                 {"final_residual", s.convex.final_residual},
                 {"path", to_string(s.convex.path)},
                 {"energy", energy_G(s.convex.profile)}};
  j["cross_check"] = {{"sup_distance", s.cross_sup},
                      {"agreement_ok", s.agreement_ok}};
  j["pass"] = s.agreement_ok;
  return j;
}

nlohmann::json diagnostics_section(const Weight& w, const SolvedState& s,
                                   const FluxField& flux, bool* pass) {
  nlohmann::json j;
  double min_flux = flux.cell_flux.empty() ? 0.0 : flux.cell_flux.front();
  for (double v : flux.cell_flux) min_flux = std::min(min_flux, v);
  double max_jump = 0.0;
  nlohmann::json jumps = nlohmann::json::array();
  for (const auto& bj : flux.breakpoint_jumps) {
    jumps.push_back({{"position", bj.position}, {"jump", bj.jump}});
    max_jump = std::max(max_jump, bj.jump);
  }
  const FluxMonotonicityReport mono = flux_monotonicity(w, flux);
  const FirstIntegralReport fi = first_integral(w, s.newton.profile);

  j["flux"] = {{"min_cell_flux", min_flux},
               {"positive", min_flux > 0.0},
               {"breakpoint_jumps", jumps},
               {"max_breakpoint_jump", max_jump},
               {"nonincreasing_on_positive", mono.nonincreasing_on_positive},
               {"worst_flux_increase", mono.worst_flux_increase},
               {"slope_check_applicable", mono.slope_check_applicable},
               {"slope_nonincreasing", mono.slope_nonincreasing_on_positive}};
  nlohmann::json intervals = nlohmann::json::array();
  for (const auto& iv : fi.per_interval) {
    intervals.push_back({{"lo", iv.lo},
                         {"hi", iv.hi},
                         {"mean", iv.mean},
                         {"max_deviation", iv.max_deviation},
                         {"cells", iv.cells}});
  }
  j["first_integral"] = intervals;

  *pass = (min_flux > 0.0) && mono.nonincreasing_on_positive &&
          (!mono.slope_check_applicable ||
           mono.slope_nonincreasing_on_positive);
  j["pass"] = *pass;
  return j;
}

nlohmann::json stability_section(const Weight& w, const SolvedState& s,
                                 bool* pass) {
  nlohmann::json ops = nlohmann::json::array();
  bool all_converged = true;
  double l0_min = 0.0;
  const std::vector<double> lam = lagrange_multiplier(s.newton.profile);
  double lam_max = 0.0;
  for (double v : lam) lam_max = std::max(lam_max, v);
  for (OperatorKind kind :
       {OperatorKind::L0, OperatorKind::L1, OperatorKind::L2}) {
    const TridiagonalOperator op =
        assemble_operator(kind, w, s.newton.profile);
    const bool pin = (kind == OperatorKind::L1);
    const StabilityReport rep = smallest_eigenpair(op, pin);
    if (kind == OperatorKind::L0) l0_min = rep.smallest_eigenvalue;
    all_converged = all_converged && rep.converged;
    ops.push_back({{"operator", to_string(kind)},
                   {"eigenvalue", rep.smallest_eigenvalue},
                   {"converged", rep.converged},
                   {"eigen_residual", rep.eigen_residual},
                   {"center_pinned", rep.center_pinned}});
  }
  nlohmann::json j;
  j["operators"] = ops;
  j["unstable"] = l0_min < 0.0;
  j["lagrange_multiplier_max"] = lam_max;
  *pass = all_converged;  // instability is a finding, not a failure
  j["pass"] = *pass;
  return j;
}

struct WitnessDump {
  std::vector<double> x;
  std::vector<double> eta;
  double epsilon = 0.0;
};

nlohmann::json prop1_section(const RunConfig& c, bool* pass,
                             WitnessDump* dump) {
  nlohmann::json j;
  const StepWallClosedForm wall = step_wall_closed_form();
  const double d = wall.d();
  const double p1 = wall.phi_at_1();
  const double matching =
      std::abs(std::cos(p1) -
               2.0 * std::sqrt(std::cos(p1) * std::cos(p1) + d * d - 1.0));
  const double selfcons =
      std::abs(d - std::sqrt(1.0 - 0.75 * std::cos(p1) * std::cos(p1)));
  j["d"] = d;
  j["phi_at_1"] = p1;
  j["outer_shift"] = wall.outer_shift();
  j["matching_residual"] = matching;
  j["self_consistency_residual"] = selfcons;
  j["q_limit_half"] = wall.instability_limit();

  const Weight step = weight_from_segments({-1.0, 1.0}, {1.0, 2.0, 1.0});
  auto grid = build_grid(step, c.half_length, c.cells_per_unit);
  const SolveResult sol = solve_newton(step, grid, c.solver);
  double sup = 0.0;
  for (std::size_t i = 0; i < grid->node_count(); ++i) {
    sup = std::max(sup,
                   std::abs(sol.profile.values[i] - wall.phi(grid->nodes[i])));
  }
  j["wall_sup_distance"] = sup;

  const TridiagonalOperator l0 =
      assemble_operator(OperatorKind::L0, step, sol.profile);
  nlohmann::json witness = nlohmann::json::array();
  bool witness_ok = true;
  for (double eps : {0.2, 0.1, 0.05}) {
    if (!(c.half_length > 1.0 + 2.0 / eps)) continue;
    const WitnessResult wr = instability_witness_step(l0, wall, eps);
    witness.push_back({{"epsilon", eps}, {"q_value", wr.q_value}});
    witness_ok = witness_ok && wr.q_value < 0.0;
    if (dump) {  // keep the sharpest feasible cutoff for the dump
      dump->x = grid->nodes;
      dump->eta = wr.eta;
      dump->epsilon = eps;
    }
  }
  j["witness"] = witness;

  *pass = (matching <= 1e-10) && (selfcons <= 1e-10) && (sup <= 1e-3) &&
          witness_ok && !witness.empty();
  j["pass"] = *pass;
  return j;
}

nlohmann::json sweep_section(const RunConfig& c, bool* pass) {
  std::vector<double> xs = c.sweep_x0;
  if (xs.empty()) {
    for (int k = 1; k <= 12; ++k) xs.push_back(k);
  }
  // each point is an isolated pure computation; values are collected and
  // written by the single coordinator below
  std::vector<double> es(xs.size());
  std::transform(xs.begin(), xs.end(), es.begin(), translated_wall_energy);

  bool decreasing = true;
  bool above4 = true;
  for (std::size_t k = 0; k < es.size(); ++k) {
    if (k > 0 && !(es[k] < es[k - 1])) decreasing = false;
    if (!(es[k] > 4.0)) above4 = false;
  }
  double quad_mismatch = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    quad_mismatch = std::max(
        quad_mismatch,
        std::abs(es[k] - translated_wall_energy_quadrature(xs[k])));
  }
  nlohmann::json j;
  j["x0_values"] = xs;
  j["energies"] = es;
  j["strictly_decreasing"] = decreasing;
  j["all_above_4"] = above4;
  j["quadrature_mismatch"] = quad_mismatch;
  *pass = decreasing && above4 && quad_mismatch <= 1e-6;
  j["pass"] = *pass;
  return j;
}

nlohmann::json verify_section(const Weight& w, const SolvedState& s,
                              bool* pass) {
  const SolutionDiagnostics d = verify_solution(w, s.newton);
  nlohmann::json j;
  j["monotone"] = d.monotone;
  j["in_range"] = d.in_range;
  j["flux_positive"] = d.flux_positive;
  j["el_residual"] = d.el_residual;
  j["el_ok"] = d.el_ok;
  j["weight_is_even"] = d.weight_is_even;
  j["oddness_defect"] = d.oddness_defect;
  j["oddness_ok"] = d.oddness_ok;
  *pass = d.all_pass;
  j["pass"] = *pass;
  return j;
}

}  // namespace

RunOutcome run(const RunConfig& config) {
  RunOutcome out;
  nlohmann::json& report = out.report;
  report["schema_version"] = kSchemaVersion;
  report["config"] = config_to_json(config);

  std::string outdir = config.output_dir;
  if (const char* env = std::getenv("WALLFORGE_OUTPUT_DIR")) {
    if (*env) outdir = env;
  }
  const std::filesystem::path dir(outdir);
  out.report_path = dir / "report.json";
  out.profile_path = dir / "profile.csv";

  auto persist = [&]() {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    std::ofstream f(out.report_path);
    if (f) f << serialize_report(report) << '\n';
  };

  try {
    const Weight w = weight_from_segments(config.weight_breakpoints,
                                          config.weight_values);
    bool all_pass = true;

    std::optional<SolvedState> solved;
    std::optional<FluxField> flux;
    if (needs_solve(config)) {
      solved = do_solve(w, config);
      flux = compute_flux(w, solved->newton.profile);
    }

    if (wants(config, "solve")) {
      report["solve"] = solve_section(*solved);
      all_pass = all_pass && report["solve"]["pass"].get<bool>();
    }
    if (wants(config, "diagnostics")) {
      bool pass = false;
      report["diagnostics"] = diagnostics_section(w, *solved, *flux, &pass);
      all_pass = all_pass && pass;
    }
    if (wants(config, "stability")) {
      bool pass = false;
      report["stability"] = stability_section(w, *solved, &pass);
      all_pass = all_pass && pass;
    }
    if (wants(config, "prop1")) {
      bool pass = false;
      WitnessDump dump;
      report["prop1"] = prop1_section(config, &pass, &dump);
      all_pass = all_pass && pass;
      if (!dump.eta.empty()) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        const std::filesystem::path wpath = dir / "witness.csv";
        std::ofstream wf(wpath);
        wf << "x,eta\n";
        for (std::size_t i = 0; i < dump.x.size(); ++i) {
          wf << fmt17(dump.x[i]) << ',' << fmt17(dump.eta[i]) << '\n';
        }
        report["prop1"]["witness_epsilon"] = dump.epsilon;
        report["prop1"]["witness_file"] = wpath.string();
      }
    }
    if (wants(config, "sweep")) {
      bool pass = false;
      report["sweep"] = sweep_section(config, &pass);
      all_pass = all_pass && pass;
    }
    if (wants(config, "verify")) {
      bool pass = false;
      report["verify"] = verify_section(w, *solved, &pass);
      all_pass = all_pass && pass;
    }

    if (solved) {
      const FirstIntegralReport fi = first_integral(w, solved->newton.profile);
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      write_profile_csv(out.profile_path, solved->newton.profile, *flux, fi);
      report["profile_file"] = out.profile_path.string();
    }

    report["all_pass"] = all_pass;
    out.exit_code = all_pass ? 0 : 2;
  } catch (const Error& e) {
    report["error"] = {{"type", "analysis"}, {"message", e.what()}};
    out.exit_code = 1;
  } catch (const std::exception& e) {
    report["error"] = {{"type", "runtime"}, {"message", e.what()}};
    out.exit_code = 1;
  }

  persist();
  return out;
}

RunOutcome run(const std::string& config_path) {
  RunConfig config;
  try {
    config = load_run_config(config_path);
  } catch (const ConfigParseError& e) {
    RunOutcome out;
    out.exit_code = 1;
    out.report["schema_version"] = kSchemaVersion;
    out.report["error"] = {{"type", "config"}, {"message", e.what()}};
    return out;
  }
  return run(config);
}

}  // namespace wallforge
