#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "wallforge/weight.hpp"

namespace wallforge {

/// Truncated symmetric mesh on [-L, L].
///
/// Nodes always include 0 and every weight breakpoint, so the weight is
/// exactly constant on each cell. Immutable after construction and safe to
/// share across concurrent solves.
struct Grid {
  double half_length = 0.0;
  std::vector<double> nodes;         // strictly increasing, ends at +-L
  std::size_t zero_index = 0;        // nodes[zero_index] == 0
  std::vector<double> cell_weights;  // a evaluated at cell midpoints

  std::size_t node_count() const { return nodes.size(); }
  std::size_t cell_count() const { return nodes.size() - 1; }
  double cell_length(std::size_t c) const { return nodes[c + 1] - nodes[c]; }
  double cell_midpoint(std::size_t c) const {
    return 0.5 * (nodes[c] + nodes[c + 1]);
  }
};

/// Mesh with spacing <= 1/cells_per_unit, refined so that 0 and all
/// breakpoints are nodes. Throws DomainTooSmallError when a breakpoint is
/// not inside (-L, L) with at least one unit of margin.
std::shared_ptr<const Grid> build_grid(const Weight& w, double half_length,
                                       int cells_per_unit);

/// Lumped quadrature weights: half of each adjacent cell per node.
std::vector<double> lumped_node_masses(const Grid& g);

/// Exact index symmetry nodes[i] == -nodes[n-1-i] (bit-level, for grids
/// built from even weights).
bool grid_is_symmetric(const Grid& g);

}  // namespace wallforge
