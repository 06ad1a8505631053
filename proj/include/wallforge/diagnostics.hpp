#pragma once

#include <memory>
#include <vector>

#include "wallforge/profile.hpp"
#include "wallforge/weight.hpp"

namespace wallforge {

/// Per-cell flux xi_c = a_c (dphi/dx)_c. xi is continuous across jumps of a
/// even though dphi/dx is not; the jump table records the discrete mismatch
/// between the two cells adjacent to each breakpoint node.
struct BreakpointFluxJump {
  double position = 0.0;
  double jump = 0.0;
};

struct FluxField {
  std::shared_ptr<const Grid> grid;
  std::vector<double> cell_flux;
  std::vector<BreakpointFluxJump> breakpoint_jumps;
};

FluxField compute_flux(const Weight& w, const Profile& p);

/// Cell flux averaged onto nodes (adjacent-cell mean, one-sided at the
/// ends). Used for the profile CSV and the center-flux checks.
std::vector<double> nodal_flux(const FluxField& f);

struct FluxMonotonicityReport {
  bool nonincreasing_on_positive = false;
  double worst_flux_increase = 0.0;
  /// Slope check applies only when the weight is even and non-decreasing
  /// on the positive axis.
  bool slope_check_applicable = false;
  bool slope_nonincreasing_on_positive = false;
  double worst_slope_increase = 0.0;
};

FluxMonotonicityReport flux_monotonicity(const Weight& w, const FluxField& f,
                                         double slack = 1e-8);

/// Midpoint values of (dphi/dx)^2 - cos^2(phi), grouped by maximal
/// constant-weight interval. On each interval the quantity is constant for
/// the exact wall (d^2 - 1 on the step-weight inner interval, 0 outside).
struct IntervalFirstIntegral {
  double lo = 0.0;
  double hi = 0.0;
  double mean = 0.0;
  double max_deviation = 0.0;
  std::size_t cells = 0;
};

struct FirstIntegralReport {
  std::vector<IntervalFirstIntegral> per_interval;
  std::vector<double> cell_values;
};

FirstIntegralReport first_integral(const Weight& w, const Profile& p);

/// Cell first-integral values averaged onto nodes (for the CSV).
std::vector<double> nodal_first_integral(const Grid& g,
                                         const std::vector<double>& cells);

}  // namespace wallforge
