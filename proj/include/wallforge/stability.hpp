#pragma once

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "wallforge/profile.hpp"
#include "wallforge/weight.hpp"

namespace wallforge {

enum class OperatorKind { L0, L1, L2 };

std::string to_string(OperatorKind k);

/// Discrete Sturm-Liouville operator -d/dx(a d/dx) + V with Dirichlet ends,
/// acting on interior nodes. Off-diagonal entries are the pure stiffness
/// couplings -a_c/h_c and the potential is diagonal (nodal, applied through
/// the lumped masses), which makes the discrete Hardy decomposition an
/// exact algebraic identity.
///
/// Potentials by kind, at the wall profile phi:
///   L0: -abar cos(2 phi)                  (abar = adjacent-cell average)
///   L2: chosen so that the nodal vector cos(phi) is an exact zero mode of
///       the discrete operator; this is the ground-state-consistent
///       sampling of a - lambda and keeps L2 positive semidefinite exactly,
///       matching the continuum structure L2 m2 = 0, m2 > 0.
///   L1: the L2 potential minus abar (potentials differ by the weight).
struct TridiagonalOperator {
  std::shared_ptr<const Grid> grid;
  OperatorKind kind = OperatorKind::L0;
  // interior node arrays; interior index k corresponds to node k+1
  std::vector<double> diag;       // size n-2
  std::vector<double> offdiag;    // size n-3
  std::vector<double> mass;       // lumped masses, size n-2
  std::vector<double> potential;  // nodal potential density V_i, size n-2

  std::size_t interior_count() const { return diag.size(); }
};

struct AssembleOptions {
  /// EL residual threshold for accepting the profile as converged.
  double convergence_tolerance = 1e-6;
  /// Debug hook for mutation testing: flips the sign of the L0 potential.
  bool debug_negate_l0_potential = false;
};

/// Nodal Lagrange multiplier lambda_i = a (dphi)^2 + a cos^2 phi,
/// cell-averaged onto nodes.
std::vector<double> lagrange_multiplier(const Profile& p);

TridiagonalOperator assemble_operator(OperatorKind kind, const Weight& w,
                                      const Profile& p,
                                      const AssembleOptions& opts = {});

/// (Av, v) evaluated as the summation-by-parts form
///   sum_c a_c (dv/dx)^2 h_c + sum_i V_i v_i^2 m_i,
/// for a full nodal vector v vanishing at the boundary nodes.
double pairing(const TridiagonalOperator& op, std::span<const double> v);

/// (Av, v) through the assembled matrix entries (consistency route).
double pairing_matrix(const TridiagonalOperator& op,
                      std::span<const double> v);

/// Matrix action A v on a full nodal vector (boundary entries zero).
std::vector<double> apply_operator(const TridiagonalOperator& op,
                          std::span<const double> v);

/// Bilinear form B(u, w) = sum_c a_c du dw / h_c + sum_i V_i m_i u_i w_i
/// where u may carry nonzero boundary values and w vanishes at the ends.
/// This is the pairing (Au, w) extended to free-boundary first arguments,
/// as needed by the Hardy decomposition.
double form_free_boundary(const TridiagonalOperator& op,
                          std::span<const double> u,
                          std::span<const double> w);

struct StabilityReport {
  OperatorKind kind = OperatorKind::L0;
  double smallest_eigenvalue = 0.0;
  std::vector<double> eigenvector;  // full nodal, zero at boundary
  bool converged = false;
  double eigen_residual = 0.0;  // ||A v - lambda M v|| / ||v||
  bool center_pinned = false;
};

/// Smallest generalized eigenpair of (A, M): Sturm-sequence bisection then
/// shifted inverse iteration. With pin_center the center node is removed
/// from the space (the L1 certification setting).
StabilityReport smallest_eigenpair(const TridiagonalOperator& op,
                                   bool pin_center = false);

/// | (A eta, eta) - (A psi, psi etahat^2) - sum_c a_c psi_c psi_{c+1}
///   (d etahat / dx)^2 h_c |  with etahat = eta / psi nodally and the cell
/// value of psi^2 taken as the geometric mean of its endpoints. Exact in
/// exact arithmetic for any diagonal-potential operator.
double hardy_residual(const TridiagonalOperator& op,
                      std::span<const double> psi,
                      std::span<const double> eta);

class StepWallClosedForm;

struct WitnessResult {
  std::vector<double> eta;  // full nodal
  double q_value = 0.0;
};

/// The instability witness eta_eps = xi * etahat_eps for the step weight:
/// etahat_eps = 1 on |x| < 1 and the cubic smoothstep 1 - 3s^2 + 2s^3 at
/// s = eps(|x| - 1) beyond, with xi the closed-form flux. Requires the
/// domain to cover the support: L > 1 + 2/eps.
WitnessResult instability_witness_step(const TridiagonalOperator& l0,
                                       const StepWallClosedForm& wall,
                                       double epsilon);

struct SecondVariation {
  double total = 0.0;
  double planar_part = 0.0;      // T(v') = Q(eta)
  double axial_part = 0.0;       // (L2 v3, v3)
  std::vector<double> reduced_eta;
};

/// Second variation T(v) of F at the wall map m for a tangential field
/// v = (v1, v2, v3) (nodal triples, v . m = 0, zero at the boundary).
/// Decomposed exactly as T(v) = Q(eta) + (L2 v3, v3) through the nodal
/// tangential reduction eta = v1 cos(phi) - v2 sin(phi).
SecondVariation second_variation_T(const Weight& w, const SphereMap& m,
                                   const std::array<std::vector<double>, 3>& v,
                                   const AssembleOptions& opts = {});

}  // namespace wallforge
