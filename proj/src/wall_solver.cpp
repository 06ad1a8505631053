#include "wallforge/wall_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wallforge/energy.hpp"
#include "wallforge/errors.hpp"
#include "wallforge/numerics.hpp"
#include "wallforge/oracles.hpp"

namespace wallforge {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

std::vector<std::size_t> free_nodes(const Grid& g) {
  std::vector<std::size_t> idx;
  idx.reserve(g.node_count() - 3);
  for (std::size_t i = 1; i + 1 < g.node_count(); ++i) {
    if (i != g.zero_index) idx.push_back(i);
  }
  return idx;
}

double max_abs_at(const std::vector<double>& v,
                  const std::vector<std::size_t>& idx) {
  double m = 0.0;
  for (std::size_t i : idx) m = std::max(m, std::abs(v[i]));
  return m;
}

// Newton step restricted to the free nodes. The pinned center splits the
// tridiagonal coupling; edges between non-adjacent free nodes get a zero
// off-diagonal, which keeps one Thomas solve valid for both blocks.
std::vector<double> restricted_newton_step(
    const EnergyHessian& H, const std::vector<double>& grad,
    const std::vector<std::size_t>& idx) {
  const std::size_t m = idx.size();
  std::vector<double> d(m), e(m > 0 ? m - 1 : 0), rhs(m);
  for (std::size_t k = 0; k < m; ++k) {
    d[k] = H.diag[idx[k]];
    rhs[k] = -grad[idx[k]];
  }
  for (std::size_t k = 0; k + 1 < m; ++k) {
    e[k] = (idx[k + 1] == idx[k] + 1) ? H.off[idx[k]] : 0.0;
  }
  return thomas_solve(d, e, e, rhs);
}

void validate_options(const SolverOptions& opts) {
  if (opts.max_iterations <= 0 || !(opts.residual_tolerance > 0.0) ||
      !(opts.damping > 0.0 && opts.damping < 1.0)) {
    throw std::invalid_argument("invalid solver options");
  }
}

void check_monotone(const Profile& p) {
  for (std::size_t c = 0; c < p.grid->cell_count(); ++c) {
    if (p.values[c + 1] - p.values[c] < -1e-12) {
      throw MonotonicityViolationError(
          "converged profile is not non-decreasing near x = " +
          std::to_string(p.grid->nodes[c]));
    }
  }
}

}  // namespace

std::string to_string(SolvePath p) {
  switch (p) {
    case SolvePath::newton:
      return "newton";
    case SolvePath::convex:
      return "convex";
    case SolvePath::oracle:
      return "oracle";
  }
  return "unknown";
}

SolveResult solve_newton(const Weight& /*w*/, std::shared_ptr<const Grid> g,
                         const SolverOptions& opts) {
  validate_options(opts);
  const HomogeneousWall init = homogeneous_wall(0.0);
  std::vector<double> phi(g->node_count());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = init.phi(g->nodes[i]);
  Profile p = make_profile(g, std::move(phi));

  const auto idx = free_nodes(*g);
  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iterations; ++it) {
    const std::vector<double> grad = gradient_G(p);
    residual = max_abs_at(grad, idx);
    if (residual <= opts.residual_tolerance) {
      check_monotone(p);
      return SolveResult{std::move(p), it, residual, SolvePath::newton};
    }

    const EnergyHessian H = hessian_G(p);
    std::vector<double> step = restricted_newton_step(H, grad, idx);

    // fall back to steepest descent if the Newton direction fails to descend
    double dir_dot = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      dir_dot += grad[idx[k]] * step[k];
    }
    if (!(dir_dot < 0.0)) {
      for (std::size_t k = 0; k < idx.size(); ++k) step[k] = -grad[idx[k]];
    }

    const double e0 = energy_G(p);
    const double slack =
        32.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(e0));
    double t = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      Profile trial = p;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        double v = trial.values[idx[k]] + t * step[k];
        if (opts.clamp) v = std::clamp(v, -kHalfPi, kHalfPi);
        trial.values[idx[k]] = v;
      }
      if (energy_G(trial) <= e0 + slack) {
        p = std::move(trial);
        accepted = true;
        break;
      }
      t *= opts.damping;
    }
    if (!accepted) {
      throw NoConvergenceError(it, residual);
    }
  }
  throw NoConvergenceError(opts.max_iterations, residual);
}

SolveResult solve_convex(const Weight& /*w*/, std::shared_ptr<const Grid> g,
                         const SolverOptions& opts) {
  validate_options(opts);
  const HomogeneousWall init = homogeneous_wall(0.0);
  std::vector<double> m2(g->node_count());
  for (std::size_t i = 0; i < m2.size(); ++i) {
    m2[i] = std::cos(init.phi(g->nodes[i]));
  }
  m2.front() = 0.0;
  m2.back() = 0.0;
  m2[g->zero_index] = 1.0;

  const auto idx = free_nodes(*g);
  auto reconstruct = [&]() {
    std::vector<double> phi(m2.size());
    for (std::size_t i = 0; i < m2.size(); ++i) {
      const double th = std::acos(std::min(1.0, std::max(-1.0, m2[i])));
      phi[i] = (g->nodes[i] < 0.0) ? -th : th;
    }
    return make_profile(g, std::move(phi));
  };

  double residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < opts.max_iterations; ++it) {
    Profile p = reconstruct();
    residual = max_abs_at(gradient_G(p), idx);
    if (residual <= opts.residual_tolerance) {
      check_monotone(p);
      return SolveResult{std::move(p), it, residual, SolvePath::convex};
    }

    const std::vector<double> grad = gradient_E_convex(*g, m2);
    const EnergyHessian H = hessian_E_convex(*g, m2);
    std::vector<double> step = restricted_newton_step(H, grad, idx);

    double dir_dot = 0.0;
    for (std::size_t k = 0; k < idx.size(); ++k) {
      dir_dot += grad[idx[k]] * step[k];
    }
    if (!(dir_dot < 0.0)) {
      for (std::size_t k = 0; k < idx.size(); ++k) step[k] = -grad[idx[k]];
    }

    const double e0 = energy_E_convex(*g, m2);
    const double slack =
        32.0 * std::numeric_limits<double>::epsilon() * (1.0 + std::abs(e0));
    double t = 1.0;
    bool accepted = false;
    for (int bt = 0; bt < 80; ++bt) {
      std::vector<double> trial = m2;
      for (std::size_t k = 0; k < idx.size(); ++k) {
        trial[idx[k]] =
            std::clamp(trial[idx[k]] + t * step[k], 0.0, 1.0);
      }
      if (energy_E_convex(*g, trial) <= e0 + slack) {
        m2 = std::move(trial);
        accepted = true;
        break;
      }
      t *= opts.damping;
    }
    if (!accepted) {
      throw NoConvergenceError(it, residual);
    }
  }
  throw NoConvergenceError(opts.max_iterations, residual);
}

SolutionDiagnostics verify_solution(const Weight& w, const SolveResult& r,
                                    double el_tolerance,
                                    double oddness_tolerance) {
  const Profile& p = r.profile;
  const Grid& g = *p.grid;
  SolutionDiagnostics d;

  d.monotone = true;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    if (p.values[c + 1] - p.values[c] < -1e-12) d.monotone = false;
  }
  d.in_range = true;
  for (double v : p.values) {
    if (std::abs(v) > kHalfPi + 1e-12) d.in_range = false;
  }
  d.flux_positive = true;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double flux =
        g.cell_weights[c] * (p.values[c + 1] - p.values[c]) / g.cell_length(c);
    if (!(flux > 0.0)) d.flux_positive = false;
  }
  const auto idx = free_nodes(g);
  d.el_residual = max_abs_at(gradient_G(p), idx);
  d.el_ok = d.el_residual <= el_tolerance;

  d.weight_is_even = classify_weight(w).is_even;
  if (d.weight_is_even && grid_is_symmetric(g)) {
    const std::size_t n = g.node_count();
    for (std::size_t i = 0; i < n; ++i) {
      d.oddness_defect = std::max(
          d.oddness_defect, std::abs(p.values[i] + p.values[n - 1 - i]));
    }
    d.oddness_ok = d.oddness_defect <= oddness_tolerance;
  } else {
    d.oddness_ok = true;  // not applicable
  }

  d.all_pass = d.monotone && d.in_range && d.flux_positive && d.el_ok &&
               d.oddness_ok;
  return d;
}

}  // namespace wallforge
