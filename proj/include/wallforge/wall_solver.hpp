#pragma once

#include <memory>
#include <string>
#include <vector>

#include "wallforge/profile.hpp"
#include "wallforge/weight.hpp"

namespace wallforge {

struct SolverOptions {
  int max_iterations = 200;
  /// Convergence is measured as the max-norm of gradient_G over free
  /// interior nodes; the convex path measures it on the reconstructed
  /// profile.
  double residual_tolerance = 1e-10;
  double damping = 0.5;  // line-search backtracking factor, in (0, 1)
  bool clamp = true;     // project iterates into [-pi/2, pi/2]
};

enum class SolvePath { newton, convex, oracle };

std::string to_string(SolvePath p);

struct SolveResult {
  Profile profile;
  int iterations = 0;
  double final_residual = 0.0;
  SolvePath path = SolvePath::newton;
};

/// Damped Newton on the discrete Euler-Lagrange system of energy_G, with
/// Dirichlet ends +-pi/2 and the center node pinned to 0. Starts from the
/// homogeneous closed-form wall. Throws NoConvergenceError /
/// MonotonicityViolationError.
SolveResult solve_newton(const Weight& w, std::shared_ptr<const Grid> g,
                         const SolverOptions& opts = {});

/// Projected Newton on the convex functional energy_E_convex over nodal m2
/// with m2(0) = 1, m2(+-L) = 0 and per-node projection onto [0, 1];
/// reconstructs phi_i = sign(x_i) * arccos(m2_i).
SolveResult solve_convex(const Weight& w, std::shared_ptr<const Grid> g,
                         const SolverOptions& opts = {});

/// Structural checks on a converged wall; failures are flagged, not thrown.
struct SolutionDiagnostics {
  bool monotone = false;
  bool in_range = false;
  bool flux_positive = false;
  double el_residual = 0.0;
  bool el_ok = false;
  bool weight_is_even = false;
  double oddness_defect = 0.0;  // meaningful only for even weights
  bool oddness_ok = false;
  bool all_pass = false;
};

SolutionDiagnostics verify_solution(const Weight& w, const SolveResult& r,
                                    double el_tolerance = 1e-8,
                                    double oddness_tolerance = 1e-10);

}  // namespace wallforge
