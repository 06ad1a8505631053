#include "wallforge/profile.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wallforge {

namespace {
constexpr double kHalfPi = std::numbers::pi / 2.0;
}

Profile make_profile(std::shared_ptr<const Grid> g,
                     std::vector<double> values) {
  if (values.size() != g->node_count()) {
    throw std::invalid_argument("profile size must match node count");
  }
  values.front() = -kHalfPi;
  values.back() = kHalfPi;
  values[g->zero_index] = 0.0;
  return Profile{std::move(g), std::move(values)};
}

bool profile_constraints_ok(const Profile& p, double tol) {
  const auto& v = p.values;
  if (std::abs(v.front() + kHalfPi) > tol) return false;
  if (std::abs(v.back() - kHalfPi) > tol) return false;
  if (std::abs(v[p.grid->zero_index]) > tol) return false;
  for (double x : v) {
    if (std::abs(x) > kHalfPi + tol) return false;
  }
  return true;
}

SphereMap wall_map(const Profile& p) {
  SphereMap m;
  m.grid = p.grid;
  m.values.resize(p.values.size());
  for (std::size_t i = 0; i < p.values.size(); ++i) {
    m.values[i] = {std::sin(p.values[i]), std::cos(p.values[i]), 0.0};
  }
  return m;
}

std::vector<double> map_angle(const SphereMap& m) {
  std::vector<double> phi(m.values.size());
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    phi[i] = std::atan2(m.values[i][0], m.values[i][1]);
  }
  return phi;
}

double unit_norm_defect(const SphereMap& m) {
  double worst = 0.0;
  for (const auto& v : m.values) {
    const double n = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
    worst = std::max(worst, std::abs(n - 1.0));
  }
  return worst;
}

}  // namespace wallforge
