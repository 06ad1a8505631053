#pragma once

#include <array>
#include <memory>
#include <vector>

#include "wallforge/grid.hpp"

namespace wallforge {

/// Nodal angle profile phi on a grid. The wall constraints pin
/// phi(-L) = -pi/2, phi(0) = 0, phi(L) = +pi/2; solved profiles are
/// additionally non-decreasing with values in [-pi/2, pi/2].
struct Profile {
  std::shared_ptr<const Grid> grid;
  std::vector<double> values;
};

/// Nodal unit vectors m = (m1, m2, m3) on the sphere.
struct SphereMap {
  std::shared_ptr<const Grid> grid;
  std::vector<std::array<double, 3>> values;
};

/// Profile with the boundary and center pins applied to `values`.
Profile make_profile(std::shared_ptr<const Grid> g,
                     std::vector<double> values);

/// True when the boundary/center pins hold to `tol` and values stay within
/// [-pi/2 - tol, pi/2 + tol].
bool profile_constraints_ok(const Profile& p, double tol = 1e-12);

/// The planar lift m = (sin phi, cos phi, 0).
SphereMap wall_map(const Profile& p);

/// Angle of a planar-liftable map: phi_i = atan2(m1, m2).
std::vector<double> map_angle(const SphereMap& m);

/// Max node-wise deviation of |m| from 1.
double unit_norm_defect(const SphereMap& m);

}  // namespace wallforge
