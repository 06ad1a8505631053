#include <doctest.h>

#include <cmath>

#include "wallforge/diagnostics.hpp"
#include "wallforge/oracles.hpp"
#include "wallforge/wall_solver.hpp"

using namespace wallforge;

namespace {
const Weight kHomog = weight_from_segments({}, {1.0});
const Weight kStep = weight_from_segments({-1.0, 1.0}, {1.0, 2.0, 1.0});
const Weight kStable = weight_from_segments({-1.0, 1.0}, {2.0, 1.0, 2.0});

SolveResult solved(const Weight& w, int cpu = 200) {
  return solve_newton(w, build_grid(w, 12.0, cpu));
}
}  // namespace

TEST_CASE("flux is positive and continuous across the weight jump") {
  const SolveResult r = solved(kStep);
  const FluxField f = compute_flux(kStep, r.profile);
  for (double v : f.cell_flux) CHECK(v > 0.0);

  REQUIRE(f.breakpoint_jumps.size() == 2);
  for (const auto& bj : f.breakpoint_jumps) {
    CHECK(std::abs(bj.jump) <= 1e-2);  // first order in h at cpu = 200
  }
  // at cpu = 1000 the jump passes the absolute threshold
  const SolveResult fine = solved(kStep, 1000);
  const FluxField ff = compute_flux(kStep, fine.profile);
  for (const auto& bj : ff.breakpoint_jumps) CHECK(bj.jump <= 1e-3);
}

TEST_CASE("flux jump shrinks at first order under refinement") {
  double j200 = 0.0, j400 = 0.0;
  {
    const FluxField f = compute_flux(kStep, solved(kStep, 200).profile);
    for (const auto& bj : f.breakpoint_jumps) j200 = std::max(j200, bj.jump);
  }
  {
    const FluxField f = compute_flux(kStep, solved(kStep, 400).profile);
    for (const auto& bj : f.breakpoint_jumps) j400 = std::max(j400, bj.jump);
  }
  const double order = std::log2(j200 / j400);
  CHECK(order >= 0.9);
}

TEST_CASE("center flux equals twice the oracle slope") {
  const SolveResult r = solved(kStep);
  const FluxField f = compute_flux(kStep, r.profile);
  const std::vector<double> nodal = nodal_flux(f);
  const double d = step_weight_d();
  CHECK(std::abs(nodal[r.profile.grid->zero_index] - 2.0 * d) <= 1e-3);
}

TEST_CASE("homogeneous flux equals cos phi everywhere") {
  const SolveResult r = solved(kHomog);
  const FluxField f = compute_flux(kHomog, r.profile);
  const Grid& g = *r.profile.grid;
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double mid = 0.5 * (r.profile.values[c] + r.profile.values[c + 1]);
    CHECK(std::abs(f.cell_flux[c] - std::cos(mid)) <= 1e-3);
  }
}

TEST_CASE("flux monotonicity checks") {
  SUBCASE("step weight: flux non-increasing, slope check skipped") {
    const SolveResult r = solved(kStep);
    const FluxField f = compute_flux(kStep, r.profile);
    const FluxMonotonicityReport rep = flux_monotonicity(kStep, f);
    CHECK(rep.nonincreasing_on_positive);
    CHECK_FALSE(rep.slope_check_applicable);
  }
  SUBCASE("monotone even weight: both checks pass") {
    const SolveResult r = solved(kStable);
    const FluxField f = compute_flux(kStable, r.profile);
    const FluxMonotonicityReport rep = flux_monotonicity(kStable, f);
    CHECK(rep.nonincreasing_on_positive);
    CHECK(rep.slope_check_applicable);
    CHECK(rep.slope_nonincreasing_on_positive);
  }
  SUBCASE("homogeneous: strictly decreasing flux on the positive side") {
    const SolveResult r = solved(kHomog);
    const FluxField f = compute_flux(kHomog, r.profile);
    const FluxMonotonicityReport rep = flux_monotonicity(kHomog, f);
    CHECK(rep.nonincreasing_on_positive);
    CHECK(rep.worst_flux_increase <= 0.0);
  }
}

TEST_CASE("first integrals per interval") {
  const double d = step_weight_d();

  SUBCASE("step weight: d^2-1 inside, 0 outside") {
    const SolveResult r = solved(kStep);
    const FirstIntegralReport rep = first_integral(kStep, r.profile);
    REQUIRE(rep.per_interval.size() == 3);
    for (const auto& iv : rep.per_interval) {
      if (iv.lo == -1.0 && iv.hi == 1.0) {
        CHECK(std::abs(iv.mean - (d * d - 1.0)) <= 1e-3);
      } else {
        CHECK(std::abs(iv.mean) <= 1e-3);
      }
    }
    // d in (1/2, 1) makes the inner constant negative
    CHECK(d * d - 1.0 < 0.0);
  }

  SUBCASE("homogeneous: single interval with zero mean (equipartition)") {
    const SolveResult r = solved(kHomog);
    const FirstIntegralReport rep = first_integral(kHomog, r.profile);
    REQUIRE(rep.per_interval.size() == 1);
    CHECK(std::abs(rep.per_interval[0].mean) <= 1e-3);
  }

  SUBCASE("deviation shrinks at second order") {
    double dev200 = 0.0, dev400 = 0.0;
    {
      const FirstIntegralReport rep =
          first_integral(kStep, solved(kStep, 200).profile);
      for (const auto& iv : rep.per_interval) {
        dev200 = std::max(dev200, iv.max_deviation);
      }
    }
    {
      const FirstIntegralReport rep =
          first_integral(kStep, solved(kStep, 400).profile);
      for (const auto& iv : rep.per_interval) {
        dev400 = std::max(dev400, iv.max_deviation);
      }
    }
    CHECK(std::log2(dev200 / dev400) >= 1.8);
  }
}

TEST_CASE("closed-form step wall feeds back through the diagnostics") {
  const StepWallClosedForm wall = step_wall_closed_form();
  auto g = build_grid(kStep, 12.0, 200);
  std::vector<double> v(g->node_count());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = wall.phi(g->nodes[i]);
  const Profile p = make_profile(g, std::move(v));
  const FirstIntegralReport rep = first_integral(kStep, p);
  const double d = wall.d();
  for (const auto& iv : rep.per_interval) {
    if (iv.lo == -1.0 && iv.hi == 1.0) {
      CHECK(std::abs(iv.mean - (d * d - 1.0)) <= 1e-3);
    } else {
      CHECK(std::abs(iv.mean) <= 1e-3);
    }
  }
}
