#include "wallforge/oracles.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "wallforge/errors.hpp"

namespace wallforge {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr int kInnerTableSize = 2000;

double upper_limit_phi1(double d) {
  return std::acos(std::sqrt(4.0 * (1.0 - d * d) / 3.0));
}

// 1 / sqrt(cos^2 t + d^2 - 1); bounded on [0, phi1(d)] since the radicand
// equals (1 - d^2)/3 at the upper limit.
double inner_integrand(double t, double d) {
  return 1.0 / std::sqrt(std::cos(t) * std::cos(t) + d * d - 1.0);
}

double inner_x(double phi, double d, double quad_tol) {
  return adaptive_simpson([d](double t) { return inner_integrand(t, d); },
                          0.0, phi, quad_tol);
}

}  // namespace

double HomogeneousWall::phi(double x) const {
  return kHalfPi - 2.0 * std::atan(std::exp(-(x - x0)));
}

double HomogeneousWall::dphi(double x) const {
  // cos(phi) = sech(x - x0)
  return 1.0 / std::cosh(x - x0);
}

double HomogeneousWall::sin_phi(double x) const { return std::tanh(x - x0); }

HomogeneousWall homogeneous_wall(double x0) { return HomogeneousWall{x0}; }

double step_weight_d(double quad_tol, double root_tol) {
  auto mismatch = [quad_tol](double d) {
    return inner_x(upper_limit_phi1(d), d, quad_tol) - 1.0;
  };

  // Sign scan over (1/2, 1), then bisection on the first bracket.
  const double lo_edge = 0.5 + 1e-9;
  const double hi_edge = 1.0 - 1e-9;
  const int scan = 64;
  double prev_x = lo_edge;
  double prev_f = mismatch(prev_x);
  for (int k = 1; k <= scan; ++k) {
    const double x = lo_edge + (hi_edge - lo_edge) * k / scan;
    const double f = mismatch(x);
    if ((prev_f <= 0.0) != (f <= 0.0)) {
      return bisect_root(mismatch, prev_x, x, root_tol);
    }
    prev_x = x;
    prev_f = f;
  }
  throw NoSignChangeError("step_weight_d: no sign change found in (1/2, 1)");
}

StepWallClosedForm::StepWallClosedForm(double quad_tol, double root_tol) {
  d_ = step_weight_d(quad_tol, root_tol);
  phi_at_1_ = upper_limit_phi1(d_);
  outer_shift_ = 1.0 - std::atanh(std::sin(phi_at_1_));

  std::vector<double> phis(kInnerTableSize + 1), xs(kInnerTableSize + 1);
  for (int k = 0; k <= kInnerTableSize; ++k) {
    const double p = phi_at_1_ * k / kInnerTableSize;
    phis[k] = p;
    xs[k] = inner_x(p, d_, quad_tol);
  }
  xs.front() = 0.0;
  phi_of_x_ = PchipInterpolant(xs, phis);
  x_of_phi_ = PchipInterpolant(phis, xs);
}

double StepWallClosedForm::phi(double x) const {
  // both branches agree at |x| = 1 through the matching condition; the
  // outer one is used there so that phi, dphi and flux switch together
  const double t = std::abs(x);
  double p;
  if (t < 1.0) {
    p = phi_of_x_(t);
  } else {
    p = std::asin(std::tanh(t - outer_shift_));
  }
  return x < 0.0 ? -p : p;
}

double StepWallClosedForm::dphi(double x) const {
  const double t = std::abs(x);
  if (t < 1.0) {
    const double p = phi_of_x_(t);
    const double rad = std::cos(p) * std::cos(p) + d_ * d_ - 1.0;
    return std::sqrt(std::max(rad, 0.0));
  }
  return 1.0 / std::cosh(t - outer_shift_);
}

double StepWallClosedForm::flux(double x) const {
  const double a = (std::abs(x) < 1.0) ? 2.0 : 1.0;
  return a * dphi(x);
}

double StepWallClosedForm::instability_limit() const {
  const double s = std::sin(phi_at_1_);
  const double c = std::cos(phi_at_1_);
  return -3.0 * s * c * c;
}

double StepWallClosedForm::inner_x_of_phi(double phi) const {
  return x_of_phi_(phi);
}

StepWallClosedForm step_wall_closed_form() { return StepWallClosedForm{}; }

double translated_wall_energy_excess(double x0) {
  // 2 (tanh(1 - x0) - tanh(-1 - x0)) without cancellation for large x0
  return 2.0 * std::sinh(2.0) /
         (std::cosh(1.0 - x0) * std::cosh(1.0 + x0));
}

double translated_wall_energy(double x0) {
  return 4.0 + translated_wall_energy_excess(x0);
}

double translated_wall_energy_quadrature(double x0, double tol) {
  // Integrand a(x) [ (dphi)^2 + cos^2 phi ] = 2 a(x) sech^2(x - x0); the
  // tail beyond the window is below 4 e^{-2(span)} and ignored.
  const HomogeneousWall wall = homogeneous_wall(x0);
  auto f = [&](double x) {
    const double a = (std::abs(x) < 1.0) ? 2.0 : 1.0;
    const double c = wall.dphi(x);
    return 2.0 * a * c * c;
  };
  const double span = 30.0;
  const double lo = std::min(-1.0, x0 - span);
  const double hi = std::max(1.0, x0 + span);
  // split at the weight jumps so the integrand is smooth per panel
  return adaptive_simpson(f, lo, -1.0, tol / 3.0) +
         adaptive_simpson(f, -1.0, 1.0, tol / 3.0) +
         adaptive_simpson(f, 1.0, hi, tol / 3.0);
}

}  // namespace wallforge
