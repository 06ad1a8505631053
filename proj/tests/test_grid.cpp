#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "wallforge/errors.hpp"
#include "wallforge/grid.hpp"

using namespace wallforge;

TEST_CASE("grid construction contract for the step weight") {
  const Weight step = weight_from_segments({-1.0, 1.0}, {1.0, 2.0, 1.0});
  auto g = build_grid(step, 12.0, 200);
  CHECK(g->cell_count() == 4800);
  CHECK(g->nodes.front() == -12.0);
  CHECK(g->nodes.back() == 12.0);
  CHECK(g->nodes[g->zero_index] == 0.0);
  CHECK(std::count(g->nodes.begin(), g->nodes.end(), -1.0) == 1);
  CHECK(std::count(g->nodes.begin(), g->nodes.end(), 1.0) == 1);
  CHECK(grid_is_symmetric(*g));
}

TEST_CASE("homogeneous grid is uniform with unit weights") {
  const Weight homog = weight_from_segments({}, {1.0});
  auto g = build_grid(homog, 12.0, 200);
  CHECK(g->cell_count() == 4800);
  for (double w : g->cell_weights) CHECK(w == 1.0);
}

TEST_CASE("breakpoints outside the domain are rejected") {
  const Weight step = weight_from_segments({-1.0, 1.0}, {1.0, 2.0, 1.0});
  CHECK_THROWS_AS(build_grid(step, 0.5, 200), DomainTooSmallError);
  CHECK_THROWS_AS(build_grid(step, 1.5, 200), DomainTooSmallError);
}

TEST_CASE("cell lengths sum to the domain and weights match midpoints") {
  const Weight w = weight_from_segments({-1.5, 0.25}, {1.0, 3.0, 2.0});
  auto g = build_grid(w, 7.0, 50);
  long double total = 0.0L;
  for (std::size_t c = 0; c < g->cell_count(); ++c) {
    total += g->cell_length(c);
    CHECK(g->cell_weights[c] == eval_weight(w, g->cell_midpoint(c)));
  }
  CHECK(std::abs(static_cast<double>(total) - 14.0) < 1e-12);

  // nodes strictly increasing, breakpoints present
  for (std::size_t i = 1; i < g->node_count(); ++i) {
    CHECK(g->nodes[i] > g->nodes[i - 1]);
  }
  CHECK(std::count(g->nodes.begin(), g->nodes.end(), -1.5) == 1);
  CHECK(std::count(g->nodes.begin(), g->nodes.end(), 0.25) == 1);
}

TEST_CASE("even weights give bit-symmetric grids") {
  const Weight stable = weight_from_segments({-1.0, 1.0}, {2.0, 1.0, 2.0});
  auto g = build_grid(stable, 12.0, 137);
  const std::size_t n = g->node_count();
  for (std::size_t i = 0; i < n; ++i) {
    CHECK(g->nodes[i] == -g->nodes[n - 1 - i]);
  }
}

TEST_CASE("lumped masses sum to the domain length") {
  const Weight homog = weight_from_segments({}, {2.0});
  auto g = build_grid(homog, 5.0, 16);
  const std::vector<double> m = lumped_node_masses(*g);
  long double s = 0.0L;
  for (double v : m) s += v;
  CHECK(std::abs(static_cast<double>(s) - 10.0) < 1e-12);
}

TEST_CASE("coarse resolution is rejected") {
  const Weight homog = weight_from_segments({}, {1.0});
  CHECK_THROWS_AS(build_grid(homog, 12.0, 3), std::invalid_argument);
}
