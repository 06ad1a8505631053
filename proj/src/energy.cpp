#include "wallforge/energy.hpp"

#include <algorithm>
#include <cmath>

namespace wallforge {

namespace {

double clamp_unit(double v) { return std::min(1.0, std::max(-1.0, v)); }

// Shared cell loop for the theta-form energy: phi (or theta) nodal values.
double cell_energy(const Grid& g, std::span<const double> ang) {
  long double total = 0.0L;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double h = g.cell_length(c);
    const double a = g.cell_weights[c];
    const double s = (ang[c + 1] - ang[c]) / h;
    const double mid = 0.5 * (ang[c] + ang[c + 1]);
    const double cm = std::cos(mid);
    total += a * h * (s * s + cm * cm);
  }
  return static_cast<double>(total);
}

// dE/d(ang_i) for the theta-form energy, all nodes (no pins applied).
std::vector<double> cell_gradient(const Grid& g, std::span<const double> ang) {
  std::vector<double> grad(g.node_count(), 0.0);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double h = g.cell_length(c);
    const double a = g.cell_weights[c];
    const double s = (ang[c + 1] - ang[c]) / h;
    const double mid = 0.5 * (ang[c] + ang[c + 1]);
    const double pot = -a * h * std::sin(mid) * std::cos(mid);
    grad[c] += -2.0 * a * s + pot;
    grad[c + 1] += 2.0 * a * s + pot;
  }
  return grad;
}

EnergyHessian cell_hessian(const Grid& g, std::span<const double> ang) {
  EnergyHessian H;
  H.diag.assign(g.node_count(), 0.0);
  H.off.assign(g.cell_count(), 0.0);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double h = g.cell_length(c);
    const double a = g.cell_weights[c];
    const double mid = 0.5 * (ang[c] + ang[c + 1]);
    const double c2 = std::cos(2.0 * mid);
    const double stiff = 2.0 * a / h;
    const double pot = -0.5 * a * h * c2;
    H.diag[c] += stiff + pot;
    H.diag[c + 1] += stiff + pot;
    H.off[c] = -stiff + pot;
  }
  return H;
}

}  // namespace

double energy_G(const Profile& p) { return cell_energy(*p.grid, p.values); }

std::vector<double> gradient_G(const Profile& p) {
  std::vector<double> g = cell_gradient(*p.grid, p.values);
  g.front() = 0.0;
  g.back() = 0.0;
  g[p.grid->zero_index] = 0.0;
  return g;
}

EnergyHessian hessian_G(const Profile& p) {
  return cell_hessian(*p.grid, p.values);
}

double energy_E_convex(const Grid& g, std::span<const double> m2,
                       double /*eps_floor*/) {
  std::vector<double> theta(m2.size());
  for (std::size_t i = 0; i < m2.size(); ++i) {
    theta[i] = std::acos(clamp_unit(m2[i]));
  }
  return cell_energy(g, theta);
}

std::vector<double> gradient_E_convex(const Grid& g,
                                      std::span<const double> m2,
                                      double eps_floor) {
  std::vector<double> theta(m2.size());
  std::vector<double> dtheta(m2.size());
  for (std::size_t i = 0; i < m2.size(); ++i) {
    const double v = clamp_unit(m2[i]);
    theta[i] = std::acos(v);
    dtheta[i] = -1.0 / std::sqrt(std::max(1.0 - v * v, eps_floor));
  }
  std::vector<double> grad = cell_gradient(g, theta);
  for (std::size_t i = 0; i < grad.size(); ++i) grad[i] *= dtheta[i];
  return grad;
}

EnergyHessian hessian_E_convex(const Grid& g, std::span<const double> m2,
                               double eps_floor) {
  const std::size_t n = m2.size();
  std::vector<double> theta(n), dtheta(n), d2theta(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double v = clamp_unit(m2[i]);
    const double denom = std::max(1.0 - v * v, eps_floor);
    theta[i] = std::acos(v);
    dtheta[i] = -1.0 / std::sqrt(denom);
    d2theta[i] = -v / (denom * std::sqrt(denom));
  }
  const std::vector<double> gth = cell_gradient(g, theta);
  EnergyHessian H = cell_hessian(g, theta);
  for (std::size_t i = 0; i < n; ++i) {
    H.diag[i] = H.diag[i] * dtheta[i] * dtheta[i] + gth[i] * d2theta[i];
  }
  for (std::size_t c = 0; c + 1 < n; ++c) {
    H.off[c] *= dtheta[c] * dtheta[c + 1];
  }
  return H;
}

namespace {

double dot3(const std::array<double, 3>& u, const std::array<double, 3>& v) {
  return u[0] * v[0] + u[1] * v[1] + u[2] * v[2];
}

double geodesic_distance(const std::array<double, 3>& u,
                         const std::array<double, 3>& v) {
  const std::array<double, 3> cr{u[1] * v[2] - u[2] * v[1],
                                 u[2] * v[0] - u[0] * v[2],
                                 u[0] * v[1] - u[1] * v[0]};
  const double s = std::sqrt(dot3(cr, cr));
  return std::atan2(s, dot3(u, v));
}

}  // namespace

double energy_F(const SphereMap& m) {
  const Grid& g = *m.grid;
  long double total = 0.0L;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double h = g.cell_length(c);
    const double a = g.cell_weights[c];
    const auto& u = m.values[c];
    const auto& v = m.values[c + 1];
    const double d = geodesic_distance(u, v);
    // geodesic midpoint; adjacent nodal directions are never antipodal for
    // the resolved maps this is applied to
    std::array<double, 3> mid{u[0] + v[0], u[1] + v[1], u[2] + v[2]};
    const double norm = std::sqrt(dot3(mid, mid));
    const double p = (mid[1] * mid[1] + mid[2] * mid[2]) / (norm * norm);
    total += a * h * ((d / h) * (d / h) + p);
  }
  return static_cast<double>(total);
}

SphereMap reduce_to_planar(const SphereMap& m) {
  SphereMap out;
  out.grid = m.grid;
  out.values.resize(m.values.size());
  for (std::size_t i = 0; i < m.values.size(); ++i) {
    const auto& v = m.values[i];
    out.values[i] = {v[0], std::sqrt(v[1] * v[1] + v[2] * v[2]), 0.0};
  }
  return out;
}

}  // namespace wallforge
