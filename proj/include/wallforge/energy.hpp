#pragma once

#include <span>
#include <vector>

#include "wallforge/profile.hpp"

namespace wallforge {

/// Floor for the 1 - m2^2 denominators of the convex functional, active only
/// where the nodal value touches |m2| = 1.
inline constexpr double kEpsFloor = 1e-10;

/// Discrete wall energy
///   G_h(phi) = sum_c a_c h_c [ (dphi/dx)_c^2 + cos^2(phi at midpoint) ],
/// piecewise-linear profile, midpoint quadrature for the potential term
/// (the midpoint of a linear interpolant is the mean of the endpoints).
double energy_G(const Profile& p);

/// Exact gradient of energy_G with respect to nodal values. Entries at the
/// two boundary nodes and the center node are zeroed (pinned by the
/// constraints).
std::vector<double> gradient_G(const Profile& p);

/// Exact Hessian of energy_G in tridiagonal form over all nodes:
/// diag.size() == n, off.size() == n-1. Pins are applied by the caller.
struct EnergyHessian {
  std::vector<double> diag;
  std::vector<double> off;
};
EnergyHessian hessian_G(const Profile& p);

/// Convex route functional E(m2). Discretized through the exact change of
/// variables theta = arccos(m2), so that E(cos(phi)) == G(phi) identically
/// for sign-structured profiles: the derivative term integrates
/// a (dm2/dx)^2 / (1 - m2^2) as a (dtheta/dx)^2 over each cell, and the
/// potential term is cos^2(theta at midpoint) = m2^2-at-midpoint along the
/// same chord. The 1 - m2^2 denominator appears in the nodal chain-rule
/// factors of the gradient/Hessian, floored by kEpsFloor at |m2| = 1.
double energy_E_convex(const Grid& g, std::span<const double> m2,
                       double eps_floor = kEpsFloor);

std::vector<double> gradient_E_convex(const Grid& g,
                                      std::span<const double> m2,
                                      double eps_floor = kEpsFloor);

EnergyHessian hessian_E_convex(const Grid& g, std::span<const double> m2,
                               double eps_floor = kEpsFloor);

/// Micromagnetic energy F(m) with the same cell quadrature as energy_G:
/// the derivative term uses the geodesic (great-circle) distance between
/// adjacent nodal directions and the potential term is evaluated at the
/// geodesic midpoint, so F(sin phi, cos phi, 0) == G(phi) identically.
double energy_F(const SphereMap& m);

/// (m1, m2, m3) -> (m1, sqrt(m2^2 + m3^2), 0). Never increases energy_F:
/// folding onto the planar half-circle cannot increase geodesic distances.
SphereMap reduce_to_planar(const SphereMap& m);

}  // namespace wallforge
