#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wallforge/numerics.hpp"
#include "wallforge/oracles.hpp"

using namespace wallforge;

namespace {
// Frozen reference values, cross-computed with an independent
// quadrature + Brent root-finder implementation.
constexpr double kD = 0.6967408360676095;
constexpr double kPhi1 = 0.5947418068970415;
constexpr double kQLimitHalf = -1.153203938227145;
}  // namespace

TEST_CASE("homogeneous wall closed form") {
  const HomogeneousWall w = homogeneous_wall(0.0);
  CHECK(w.phi(0.0) == doctest::Approx(0.0).epsilon(1e-15));
  // dphi = cos(phi) pointwise
  for (double x : {-3.7, -1.0, -0.2, 0.0, 0.4, 1.3, 2.9, 5.0, 8.1, 11.0}) {
    CHECK(std::abs(w.dphi(x) - std::cos(w.phi(x))) < 1e-14);
    CHECK(std::abs(w.sin_phi(x) - std::sin(w.phi(x))) < 1e-14);
  }
  // monotone approach to pi/2 (strict until the value saturates in double)
  double prev = w.phi(0.0);
  for (double x = 0.5; x < 40.0; x += 0.5) {
    const double v = w.phi(x);
    CHECK(v >= prev);
    if (prev < std::numbers::pi / 2.0 - 1e-12) CHECK(v > prev);
    prev = v;
  }
  CHECK(std::abs(w.phi(40.0) - std::numbers::pi / 2.0) < 1e-15);

  const HomogeneousWall shifted = homogeneous_wall(2.5);
  CHECK(shifted.phi(2.5) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("step_weight_d brackets and self-consistency") {
  const double d = step_weight_d();
  CHECK(d > 0.5);
  CHECK(d < 1.0);
  CHECK(d == doctest::Approx(kD).epsilon(1e-9));

  // mismatch signs at the bracket edges; the probe near d = 1 integrates a
  // near-secant spike whose sign (value ~ +6.4) does not need a tight
  // quadrature tolerance
  auto mismatch = [](double dd, double tol) {
    const double up = std::acos(std::sqrt(4.0 * (1.0 - dd * dd) / 3.0));
    const double integral = adaptive_simpson(
        [dd](double t) {
          return 1.0 / std::sqrt(std::cos(t) * std::cos(t) + dd * dd - 1.0);
        },
        0.0, up, tol);
    return integral - 1.0;
  };
  CHECK(mismatch(0.501, 1e-13) < 0.0);
  CHECK(mismatch(1.0 - 1e-6, 1e-6) > 0.0);

  SUBCASE("quadrature self-test: halving the tolerance moves d below 1e-11") {
    const double d2 = step_weight_d(0.5e-13);
    CHECK(std::abs(d - d2) <= 1e-11);
  }
}

TEST_CASE("step wall closed form invariants") {
  const StepWallClosedForm wall = step_wall_closed_form();
  const double d = wall.d();
  const double p1 = wall.phi_at_1();
  CHECK(p1 == doctest::Approx(kPhi1).epsilon(1e-9));

  // matching at the jump: cos phi(1) = 2 sqrt(cos^2 phi(1) + d^2 - 1)
  CHECK(std::abs(std::cos(p1) -
                 2.0 * std::sqrt(std::cos(p1) * std::cos(p1) + d * d - 1.0)) <
        1e-10);
  // d = sqrt(1 - 3/4 cos^2 phi(1))
  CHECK(std::abs(d - std::sqrt(1.0 - 0.75 * std::cos(p1) * std::cos(p1))) <
        1e-10);
  // the inner quadrature reaches x = 1 exactly at phi(1)
  CHECK(std::abs(wall.inner_x_of_phi(p1) - 1.0) < 1e-9);

  // evaluator anchors
  CHECK(wall.phi(0.0) == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(wall.phi(1.0) == doctest::Approx(p1).epsilon(1e-10));

  // flux continuity at the jump: 2 dphi(1-) = dphi(1+)
  CHECK(std::abs(2.0 * wall.dphi(1.0 - 1e-12) - wall.dphi(1.0 + 1e-12)) <
        1e-9);

  // continuity of the evaluator across the jump and at 0
  CHECK(std::abs(wall.phi(1.0 - 1e-9) - wall.phi(1.0 + 1e-9)) < 1e-7);
  CHECK(std::abs(wall.phi(-1e-10)) < 1e-9);

  // odd extension
  for (double x : {0.3, 0.9, 1.7, 4.0}) {
    CHECK(wall.phi(-x) == doctest::Approx(-wall.phi(x)).epsilon(1e-14));
  }

  CHECK(wall.instability_limit() ==
        doctest::Approx(kQLimitHalf).epsilon(1e-9));
}

TEST_CASE("step wall satisfies the branch first integrals") {
  const StepWallClosedForm wall = step_wall_closed_form();
  const double d = wall.d();
  for (double x = 0.05; x < 0.999; x += 0.05) {
    const double p = wall.phi(x);
    const double dp = wall.dphi(x);
    CHECK(std::abs(dp * dp - std::cos(p) * std::cos(p) - (d * d - 1.0)) <
          1e-7);
  }
  for (double x = 1.01; x < 9.0; x += 0.25) {
    const double p = wall.phi(x);
    const double dp = wall.dphi(x);
    CHECK(std::abs(dp * dp - std::cos(p) * std::cos(p)) < 1e-12);
  }
}

TEST_CASE("translated wall energies") {
  // closed form at x0 = 0: 4 + 4 tanh(1)
  CHECK(translated_wall_energy(0.0) ==
        doctest::Approx(4.0 + 4.0 * std::tanh(1.0)).epsilon(1e-14));

  // strictly decreasing on [1, 20] sampled at 0.5 steps, always above 4;
  // beyond x0 ~ 18 the excess falls below one ulp of 4 and the sum
  // saturates, so strictness is asserted on the excess itself
  double prev = translated_wall_energy_excess(1.0);
  CHECK(prev > 0.0);
  for (double x0 = 1.5; x0 <= 20.0; x0 += 0.5) {
    const double e = translated_wall_energy_excess(x0);
    CHECK(e < prev);
    CHECK(e > 0.0);
    CHECK(translated_wall_energy(x0) >= 4.0);
    prev = e;
  }
  // limit value 4 from above
  CHECK(translated_wall_energy(40.0) - 4.0 < 1e-12);
  CHECK(translated_wall_energy_excess(40.0) > 0.0);

  // independent quadrature route agrees
  for (double x0 : {0.0, 1.0, 3.5, 8.0}) {
    CHECK(std::abs(translated_wall_energy(x0) -
                   translated_wall_energy_quadrature(x0)) < 1e-7);
  }
}
