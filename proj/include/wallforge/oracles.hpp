#pragma once

#include "wallforge/numerics.hpp"

namespace wallforge {

/// Closed-form wall for the homogeneous weight:
///   phi(x) = pi/2 - 2 arctan(e^{-(x - x0)}),
/// which satisfies dphi/dx = cos(phi) = sech(x - x0) and
/// sin(phi) = tanh(x - x0) exactly.
struct HomogeneousWall {
  double x0 = 0.0;
  double phi(double x) const;
  double dphi(double x) const;
  double sin_phi(double x) const;
};

HomogeneousWall homogeneous_wall(double x0);

/// The center slope d of the step-weight wall (a = 2 on (-1,1), a = 1
/// outside): unique root in (1/2, 1) of
///   1 = integral_0^{arccos sqrt(4(1-d^2)/3)} dt / sqrt(cos^2 t + d^2 - 1),
/// located by a sign scan and bisection over the integral evaluated with
/// adaptive Simpson quadrature.
double step_weight_d(double quad_tol = 1e-13, double root_tol = 1e-12);

/// Piecewise closed form of the step-weight wall on [0, inf), extended
/// oddly to the line. Inner branch (0,1): dphi = sqrt(cos^2 phi + d^2 - 1),
/// inverted from a quadrature table of x(phi). Outer branch (1, inf):
/// sin phi = tanh(x - outer_shift).
class StepWallClosedForm {
 public:
  explicit StepWallClosedForm(double quad_tol = 1e-13,
                              double root_tol = 1e-12);

  double d() const { return d_; }
  double phi_at_1() const { return phi_at_1_; }
  double outer_shift() const { return outer_shift_; }

  double phi(double x) const;
  double dphi(double x) const;
  /// a(x) * dphi(x) taken one-sidedly away from the jump points.
  double flux(double x) const;
  /// -3 sin(phi(1)) cos^2(phi(1)), the small-epsilon limit of Q(eta)/2 for
  /// the instability witness family.
  double instability_limit() const;

  /// Quadrature abscissa x(phi) of the inner branch (for invariant tests).
  double inner_x_of_phi(double phi) const;

 private:
  double d_ = 0.0;
  double phi_at_1_ = 0.0;
  double outer_shift_ = 0.0;
  PchipInterpolant phi_of_x_;  // inner branch, x in [0, 1]
  PchipInterpolant x_of_phi_;  // inner branch, phi in [0, phi_at_1]
};

StepWallClosedForm step_wall_closed_form();

/// Step-weight energy of the translated homogeneous wall centered at x0:
///   G = 4 + 2 (sin phi(1) - sin phi(-1)) = 4 + 2 (tanh(1-x0) - tanh(-1-x0)).
/// Strictly greater than 4 and decreasing for x0 >= 1.
double translated_wall_energy(double x0);

/// The positive gap above 4, computed without cancellation; the full energy
/// saturates at 4.0 once the gap falls below one ulp of 4 (x0 around 18).
double translated_wall_energy_excess(double x0);

/// Same quantity by direct quadrature of the energy integrand (independent
/// route for validation).
double translated_wall_energy_quadrature(double x0, double tol = 1e-9);

}  // namespace wallforge
