#include "wallforge/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wallforge/energy.hpp"
#include "wallforge/errors.hpp"
#include "wallforge/numerics.hpp"
#include "wallforge/oracles.hpp"

namespace wallforge {

namespace {

// max-norm of gradient_G over free interior nodes
double el_residual(const Profile& p) {
  const std::vector<double> g = gradient_G(p);
  double r = 0.0;
  for (std::size_t i = 1; i + 1 < g.size(); ++i) {
    if (i == p.grid->zero_index) continue;
    r = std::max(r, std::abs(g[i]));
  }
  return r;
}

std::vector<double> nodal_weight_average(const Grid& g) {
  const std::vector<double> mass = lumped_node_masses(g);
  std::vector<double> ab(g.node_count(), 0.0);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double half = 0.5 * g.cell_length(c) * g.cell_weights[c];
    ab[c] += half;
    ab[c + 1] += half;
  }
  for (std::size_t i = 0; i < ab.size(); ++i) ab[i] /= mass[i];
  return ab;
}

// Full stiffness action (K u)_i = -d/dx(a du/dx) at interior nodes, with
// the actual boundary values of u participating.
std::vector<double> stiffness_apply_full(const Grid& g,
                                         std::span<const double> u) {
  std::vector<double> out(g.node_count(), 0.0);
  std::vector<double> flux(g.cell_count());
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    flux[c] = g.cell_weights[c] * (u[c + 1] - u[c]) / g.cell_length(c);
  }
  for (std::size_t i = 1; i + 1 < g.node_count(); ++i) {
    out[i] = flux[i - 1] - flux[i];
  }
  return out;
}

}  // namespace

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::L0:
      return "L0";
    case OperatorKind::L1:
      return "L1";
    case OperatorKind::L2:
      return "L2";
  }
  return "unknown";
}

std::vector<double> lagrange_multiplier(const Profile& p) {
  const Grid& g = *p.grid;
  const std::vector<double> mass = lumped_node_masses(g);
  std::vector<double> lam(g.node_count(), 0.0);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double s = (p.values[c + 1] - p.values[c]) / g.cell_length(c);
    const double mid = 0.5 * (p.values[c] + p.values[c + 1]);
    const double cm = std::cos(mid);
    const double cell =
        g.cell_weights[c] * (s * s + cm * cm) * 0.5 * g.cell_length(c);
    lam[c] += cell;
    lam[c + 1] += cell;
  }
  for (std::size_t i = 0; i < lam.size(); ++i) lam[i] /= mass[i];
  return lam;
}

TridiagonalOperator assemble_operator(OperatorKind kind, const Weight& /*w*/,
                                      const Profile& p,
                                      const AssembleOptions& opts) {
  const Grid& g = *p.grid;
  if (el_residual(p) > opts.convergence_tolerance) {
    throw ProfileNotConvergedError(
        "operator assembly requires a converged profile");
  }

  const std::size_t n = g.node_count();
  TridiagonalOperator op;
  op.grid = p.grid;
  op.kind = kind;
  op.mass = lumped_node_masses(g);
  op.mass.erase(op.mass.begin());
  op.mass.pop_back();

  op.potential.assign(n - 2, 0.0);
  const std::vector<double> ab = nodal_weight_average(g);
  if (kind == OperatorKind::L0) {
    for (std::size_t i = 1; i + 1 < n; ++i) {
      op.potential[i - 1] = -ab[i] * std::cos(2.0 * p.values[i]);
      if (opts.debug_negate_l0_potential) op.potential[i - 1] *= -1.0;
    }
  } else {
    // L2 potential from the discrete zero mode psi = cos(phi) > 0:
    //   V_i = -(K psi)_i / (m_i psi_i),
    // the consistent sampling of a - lambda that transfers the continuum
    // identity L2 m2 = 0 to the lattice. L1 differs by the weight.
    std::vector<double> psi(n);
    for (std::size_t i = 0; i < n; ++i) psi[i] = std::cos(p.values[i]);
    const std::vector<double> Kpsi = stiffness_apply_full(g, psi);
    for (std::size_t i = 1; i + 1 < n; ++i) {
      op.potential[i - 1] = -Kpsi[i] / (op.mass[i - 1] * psi[i]);
      if (kind == OperatorKind::L1) op.potential[i - 1] -= ab[i];
    }
  }

  op.diag.assign(n - 2, 0.0);
  op.offdiag.assign(n - 3, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double left = g.cell_weights[i - 1] / g.cell_length(i - 1);
    const double right = g.cell_weights[i] / g.cell_length(i);
    op.diag[i - 1] = left + right + op.potential[i - 1] * op.mass[i - 1];
    if (i + 2 < n) op.offdiag[i - 1] = -right;
  }
  return op;
}

double pairing(const TridiagonalOperator& op, std::span<const double> v) {
  const Grid& g = *op.grid;
  long double total = 0.0L;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double dv = v[c + 1] - v[c];
    total += g.cell_weights[c] * dv * dv / g.cell_length(c);
  }
  for (std::size_t k = 0; k < op.interior_count(); ++k) {
    total += op.potential[k] * op.mass[k] * v[k + 1] * v[k + 1];
  }
  return static_cast<double>(total);
}

double pairing_matrix(const TridiagonalOperator& op,
                      std::span<const double> v) {
  long double total = 0.0L;
  const std::size_t m = op.interior_count();
  for (std::size_t k = 0; k < m; ++k) {
    total += op.diag[k] * v[k + 1] * v[k + 1];
  }
  for (std::size_t k = 0; k + 1 < m; ++k) {
    total += 2.0L * op.offdiag[k] * v[k + 1] * v[k + 2];
  }
  return static_cast<double>(total);
}

std::vector<double> apply_operator(const TridiagonalOperator& op,
                          std::span<const double> v) {
  const std::size_t m = op.interior_count();
  std::vector<double> out(m + 2, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    double r = op.diag[k] * v[k + 1];
    if (k > 0) r += op.offdiag[k - 1] * v[k];
    if (k + 1 < m) r += op.offdiag[k] * v[k + 2];
    out[k + 1] = r;
  }
  return out;
}

double form_free_boundary(const TridiagonalOperator& op,
                          std::span<const double> u,
                          std::span<const double> w) {
  const Grid& g = *op.grid;
  long double total = 0.0L;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    total += g.cell_weights[c] * (u[c + 1] - u[c]) * (w[c + 1] - w[c]) /
             g.cell_length(c);
  }
  for (std::size_t k = 0; k < op.interior_count(); ++k) {
    total += op.potential[k] * op.mass[k] * u[k + 1] * w[k + 1];
  }
  return static_cast<double>(total);
}

double hardy_residual(const TridiagonalOperator& op,
                      std::span<const double> psi,
                      std::span<const double> eta) {
  const Grid& g = *op.grid;
  const std::size_t n = g.node_count();
  for (double v : psi) {
    if (!(v > 0.0)) {
      throw NonPositivePsiError("hardy_residual requires psi > 0");
    }
  }
  std::vector<double> e(eta.begin(), eta.end());
  e.front() = 0.0;
  e.back() = 0.0;

  std::vector<double> etahat(n), psi_etahat2(n);
  for (std::size_t i = 0; i < n; ++i) {
    etahat[i] = e[i] / psi[i];
    psi_etahat2[i] = psi[i] * etahat[i] * etahat[i];
  }

  const double lhs = pairing(op, e);
  const double mid = form_free_boundary(op, psi, psi_etahat2);
  long double tail = 0.0L;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double dh = etahat[c + 1] - etahat[c];
    tail += g.cell_weights[c] * psi[c] * psi[c + 1] * dh * dh /
            g.cell_length(c);
  }
  return std::abs(lhs - mid - static_cast<double>(tail));
}

// ---------------------------------------------------------------------------
// smallest eigenpair: bisection on Sturm counts + shifted inverse iteration
// ---------------------------------------------------------------------------

namespace {

struct StdTridiag {
  std::vector<double> d;  // diagonal
  std::vector<double> e;  // off-diagonal
};

// symmetric similarity transform of (A, M) to a standard problem
StdTridiag standardize(std::span<const double> diag,
                       std::span<const double> off,
                       std::span<const double> mass) {
  const std::size_t m = diag.size();
  StdTridiag t;
  t.d.resize(m);
  t.e.resize(m > 0 ? m - 1 : 0);
  for (std::size_t k = 0; k < m; ++k) t.d[k] = diag[k] / mass[k];
  for (std::size_t k = 0; k + 1 < m; ++k) {
    t.e[k] = off[k] / std::sqrt(mass[k] * mass[k + 1]);
  }
  return t;
}

// number of eigenvalues of the standard tridiagonal below sigma
int sturm_count(const StdTridiag& t, double sigma) {
  int count = 0;
  double q = 1.0;
  const std::size_t m = t.d.size();
  for (std::size_t k = 0; k < m; ++k) {
    double e2 = 0.0;
    if (k > 0) e2 = t.e[k - 1] * t.e[k - 1];
    if (q == 0.0) {
      q = std::numeric_limits<double>::min();
    }
    q = (t.d[k] - sigma) - e2 / q;
    if (q < 0.0) ++count;
  }
  return count;
}

struct EigResult {
  double lambda = 0.0;
  std::vector<double> vec;  // interior coefficients (length m)
  bool converged = false;
  double residual = 0.0;
};

EigResult smallest_standard(std::span<const double> diag,
                            std::span<const double> off,
                            std::span<const double> mass) {
  const std::size_t m = diag.size();
  const StdTridiag t = standardize(diag, off, mass);

  double lo = t.d[0], hi = t.d[0];
  for (std::size_t k = 0; k < m; ++k) {
    double r = 0.0;
    if (k > 0) r += std::abs(t.e[k - 1]);
    if (k + 1 < m) r += std::abs(t.e[k]);
    lo = std::min(lo, t.d[k] - r);
    hi = std::max(hi, t.d[k] + r);
  }
  const double scale = std::max({std::abs(lo), std::abs(hi), 1.0});
  for (int it = 0; it < 200 && hi - lo > 1e-14 * scale; ++it) {
    const double midp = 0.5 * (lo + hi);
    (sturm_count(t, midp) >= 1 ? hi : lo) = midp;
  }
  const double lam_bis = 0.5 * (lo + hi);

  // inverse iteration on (A - mu M) z = M v with mu safely below lambda_1
  const double mu = lam_bis - std::max(1e-11 * scale, 4.0 * (hi - lo));
  std::vector<double> dshift(m), low(off.begin(), off.end());
  for (std::size_t k = 0; k < m; ++k) dshift[k] = diag[k] - mu * mass[k];

  std::vector<double> v(m, 1.0);
  for (std::size_t k = 0; k < m; ++k) {
    v[k] = 1.0 / std::sqrt(static_cast<double>(m));
  }
  double lam = lam_bis;
  for (int it = 0; it < 8; ++it) {
    std::vector<double> rhs(m);
    for (std::size_t k = 0; k < m; ++k) rhs[k] = mass[k] * v[k];
    std::vector<double> z = thomas_solve(dshift, low, low, rhs);
    double norm = 0.0;
    for (std::size_t k = 0; k < m; ++k) norm += mass[k] * z[k] * z[k];
    norm = std::sqrt(norm);
    for (std::size_t k = 0; k < m; ++k) z[k] /= norm;
    v = std::move(z);

    // Rayleigh quotient and residual in the 2-norm
    long double num = 0.0L, den = 0.0L;
    std::vector<double> Av(m);
    for (std::size_t k = 0; k < m; ++k) {
      double r = diag[k] * v[k];
      if (k > 0) r += off[k - 1] * v[k - 1];
      if (k + 1 < m) r += off[k] * v[k + 1];
      Av[k] = r;
      num += r * v[k];
      den += mass[k] * v[k] * v[k];
    }
    lam = static_cast<double>(num / den);
    long double rn = 0.0L, vn = 0.0L;
    for (std::size_t k = 0; k < m; ++k) {
      const double rr = Av[k] - lam * mass[k] * v[k];
      rn += rr * rr;
      vn += v[k] * v[k];
    }
    const double rel =
        std::sqrt(static_cast<double>(rn)) / std::sqrt(static_cast<double>(vn));
    if (rel <= 1e-10) {
      return {lam, std::move(v), true, rel};
    }
  }
  // report with the achieved residual; caller decides on convergence
  long double rn = 0.0L, vn = 0.0L;
  std::vector<double> Av(m);
  for (std::size_t k = 0; k < m; ++k) {
    double r = diag[k] * v[k];
    if (k > 0) r += off[k - 1] * v[k - 1];
    if (k + 1 < m) r += off[k] * v[k + 1];
    Av[k] = r;
  }
  for (std::size_t k = 0; k < m; ++k) {
    const double rr = Av[k] - lam * mass[k] * v[k];
    rn += rr * rr;
    vn += v[k] * v[k];
  }
  const double rel =
      std::sqrt(static_cast<double>(rn)) / std::sqrt(static_cast<double>(vn));
  return {lam, std::move(v), rel <= 1e-8, rel};
}

}  // namespace

StabilityReport smallest_eigenpair(const TridiagonalOperator& op,
                                   bool pin_center) {
  const Grid& g = *op.grid;
  const std::size_t n = g.node_count();
  StabilityReport rep;
  rep.kind = op.kind;
  rep.center_pinned = pin_center;
  rep.eigenvector.assign(n, 0.0);

  if (!pin_center) {
    EigResult r = smallest_standard(op.diag, op.offdiag, op.mass);
    if (!r.converged) {
      throw EigenNoConvergenceError("inverse iteration did not converge");
    }
    rep.smallest_eigenvalue = r.lambda;
    rep.converged = r.converged;
    rep.eigen_residual = r.residual;
    for (std::size_t k = 0; k < r.vec.size(); ++k) {
      rep.eigenvector[k + 1] = r.vec[k];
    }
    return rep;
  }

  // pinned center: the interior splits into two decoupled blocks
  const std::size_t zi = g.zero_index;  // node index; interior k = i-1
  const std::size_t kz = zi - 1;
  auto sub = [&](std::size_t k0, std::size_t k1) {  // [k0, k1)
    if (k1 <= k0) {
      EigResult empty;
      empty.lambda = std::numeric_limits<double>::infinity();
      empty.converged = true;
      return empty;
    }
    return smallest_standard(std::span(op.diag).subspan(k0, k1 - k0),
                             std::span(op.offdiag).subspan(k0, k1 - k0 - 1),
                             std::span(op.mass).subspan(k0, k1 - k0));
  };
  EigResult left = sub(0, kz);
  EigResult right = sub(kz + 1, op.interior_count());
  if (!left.converged || !right.converged) {
    throw EigenNoConvergenceError("inverse iteration did not converge");
  }
  const EigResult& best = left.lambda <= right.lambda ? left : right;
  rep.smallest_eigenvalue = best.lambda;
  rep.converged = true;
  rep.eigen_residual = best.residual;
  const std::size_t base = (&best == &left) ? 1 : zi + 1;
  for (std::size_t k = 0; k < best.vec.size(); ++k) {
    rep.eigenvector[base + k] = best.vec[k];
  }
  return rep;
}

WitnessResult instability_witness_step(const TridiagonalOperator& l0,
                                       const StepWallClosedForm& wall,
                                       double epsilon) {
  const Grid& g = *l0.grid;
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("epsilon must be positive");
  }
  if (!(g.half_length > 1.0 + 2.0 / epsilon)) {
    throw DomainTooSmallError(
        "witness support needs half_length > 1 + 2/epsilon");
  }
  WitnessResult res;
  res.eta.assign(g.node_count(), 0.0);
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    const double x = g.nodes[i];
    const double t = std::abs(x);
    double cutoff = 1.0;
    if (t > 1.0) {
      const double s = epsilon * (t - 1.0);
      cutoff = (s >= 1.0) ? 0.0 : 1.0 - 3.0 * s * s + 2.0 * s * s * s;
    }
    res.eta[i] = cutoff == 0.0 ? 0.0 : wall.flux(x) * cutoff;
  }
  res.eta.front() = 0.0;
  res.eta.back() = 0.0;
  res.q_value = pairing(l0, res.eta);
  return res;
}

SecondVariation second_variation_T(const Weight& w, const SphereMap& m,
                                   const std::array<std::vector<double>, 3>& v,
                                   const AssembleOptions& opts) {
  const Grid& g = *m.grid;
  const std::size_t n = g.node_count();
  for (const auto& comp : v) {
    if (comp.size() != n) {
      throw std::invalid_argument("tangent field size mismatch");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    const double dot = v[0][i] * m.values[i][0] + v[1][i] * m.values[i][1] +
                       v[2][i] * m.values[i][2];
    if (std::abs(dot) > 1e-10) {
      throw NotTangentialError("v . m exceeds 1e-10 at node " +
                               std::to_string(i));
    }
  }

  Profile p = make_profile(m.grid, map_angle(m));
  const TridiagonalOperator l0 =
      assemble_operator(OperatorKind::L0, w, p, opts);
  const TridiagonalOperator l2 =
      assemble_operator(OperatorKind::L2, w, p, opts);

  SecondVariation out;
  out.reduced_eta.assign(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double c = std::cos(p.values[i]);
    const double s = std::sin(p.values[i]);
    out.reduced_eta[i] = v[0][i] * c - v[1][i] * s;
  }
  out.reduced_eta.front() = 0.0;
  out.reduced_eta.back() = 0.0;

  std::vector<double> v3(v[2]);
  v3.front() = 0.0;
  v3.back() = 0.0;

  out.planar_part = pairing(l0, out.reduced_eta);
  out.axial_part = pairing(l2, v3);
  out.total = out.planar_part + out.axial_part;
  return out;
}

}  // namespace wallforge
