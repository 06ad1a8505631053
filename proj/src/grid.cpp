#include "wallforge/grid.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

#include "wallforge/errors.hpp"

namespace wallforge {

namespace {

// Fill (lo, hi] with n uniform cells; appends the interior nodes and hi.
void fill_span(std::vector<double>& nodes, double lo, double hi, int cpu) {
  const int n = static_cast<int>(std::ceil((hi - lo) * cpu - 1e-12));
  for (int k = 1; k < n; ++k) {
    nodes.push_back(lo + (hi - lo) * static_cast<double>(k) / n);
  }
  nodes.push_back(hi);
}

}  // namespace

std::shared_ptr<const Grid> build_grid(const Weight& w, double half_length,
                                       int cells_per_unit) {
  if (cells_per_unit < 4) {
    throw std::invalid_argument("cells_per_unit must be at least 4");
  }
  if (!(half_length > 0.0)) {
    throw std::invalid_argument("half_length must be positive");
  }
  if (!w.breakpoints.empty() &&
      !(half_length > w.max_abs_breakpoint() + 1.0)) {
    throw DomainTooSmallError(
        "half_length must exceed the largest |breakpoint| by at least 1");
  }

  auto g = std::make_shared<Grid>();
  g->half_length = half_length;

  // Anchor set on [0, L]; the negative side is mirrored bit-exactly so that
  // grids over even weights are symmetric to the last ulp.
  std::set<double> anchors_pos{0.0, half_length};
  std::set<double> anchors_neg{0.0, half_length};
  for (double b : w.breakpoints) {
    (b >= 0.0 ? anchors_pos : anchors_neg).insert(std::abs(b));
  }

  auto build_half = [&](const std::set<double>& anchors) {
    std::vector<double> half{0.0};
    double prev = 0.0;
    for (double a : anchors) {
      if (a == 0.0) continue;
      fill_span(half, prev, a, cells_per_unit);
      prev = a;
    }
    return half;
  };
  const std::vector<double> right = build_half(anchors_pos);
  const std::vector<double> left = build_half(anchors_neg);

  g->nodes.reserve(left.size() + right.size() - 1);
  for (auto it = left.rbegin(); it != left.rend(); ++it) {
    g->nodes.push_back(*it == 0.0 ? 0.0 : -*it);
  }
  g->zero_index = left.size() - 1;
  for (std::size_t i = 1; i < right.size(); ++i) g->nodes.push_back(right[i]);

  g->cell_weights.resize(g->cell_count());
  for (std::size_t c = 0; c < g->cell_count(); ++c) {
    g->cell_weights[c] = eval_weight(w, g->cell_midpoint(c));
  }
  return g;
}

std::vector<double> lumped_node_masses(const Grid& g) {
  std::vector<double> m(g.node_count(), 0.0);
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double half = 0.5 * g.cell_length(c);
    m[c] += half;
    m[c + 1] += half;
  }
  return m;
}

bool grid_is_symmetric(const Grid& g) {
  const std::size_t n = g.node_count();
  for (std::size_t i = 0; i < n; ++i) {
    if (g.nodes[i] != -g.nodes[n - 1 - i]) return false;
  }
  return true;
}

}  // namespace wallforge
