#include "wallforge/diagnostics.hpp"

#include <algorithm>
#include <cmath>

namespace wallforge {

namespace {

// Cell -> node averaging shared by the nodal views.
std::vector<double> average_to_nodes(const Grid& g,
                                     const std::vector<double>& cell) {
  const std::size_t n = g.node_count();
  std::vector<double> out(n);
  out.front() = cell.front();
  out.back() = cell.back();
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out[i] = 0.5 * (cell[i - 1] + cell[i]);
  }
  return out;
}

}  // namespace

FluxField compute_flux(const Weight& w, const Profile& p) {
  const Grid& g = *p.grid;
  FluxField f;
  f.grid = p.grid;
  f.cell_flux.resize(g.cell_count());
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    f.cell_flux[c] =
        g.cell_weights[c] * (p.values[c + 1] - p.values[c]) / g.cell_length(c);
  }
  for (double b : w.breakpoints) {
    // the breakpoint is a node; find it and compare the two adjacent cells
    auto it = std::lower_bound(g.nodes.begin(), g.nodes.end(), b);
    const std::size_t i = static_cast<std::size_t>(it - g.nodes.begin());
    if (i == 0 || i + 1 >= g.node_count()) continue;
    f.breakpoint_jumps.push_back(
        {b, std::abs(f.cell_flux[i] - f.cell_flux[i - 1])});
  }
  return f;
}

std::vector<double> nodal_flux(const FluxField& f) {
  return average_to_nodes(*f.grid, f.cell_flux);
}

FluxMonotonicityReport flux_monotonicity(const Weight& w, const FluxField& f,
                                         double slack) {
  const Grid& g = *f.grid;
  FluxMonotonicityReport r;

  r.nonincreasing_on_positive = true;
  for (std::size_t c = g.zero_index; c + 1 < g.cell_count(); ++c) {
    const double rise = f.cell_flux[c + 1] - f.cell_flux[c];
    r.worst_flux_increase = std::max(r.worst_flux_increase, rise);
  }
  r.nonincreasing_on_positive = r.worst_flux_increase <= slack;

  const WeightTraits traits = classify_weight(w);
  r.slope_check_applicable =
      traits.is_even && traits.is_nondecreasing_on_positive;
  if (r.slope_check_applicable) {
    // slope = flux / a; non-increasing flux with non-decreasing a gives a
    // non-increasing slope for the exact wall
    for (std::size_t c = g.zero_index; c + 1 < g.cell_count(); ++c) {
      const double s0 = f.cell_flux[c] / g.cell_weights[c];
      const double s1 = f.cell_flux[c + 1] / g.cell_weights[c + 1];
      r.worst_slope_increase = std::max(r.worst_slope_increase, s1 - s0);
    }
    r.slope_nonincreasing_on_positive = r.worst_slope_increase <= slack;
  }
  return r;
}

FirstIntegralReport first_integral(const Weight& w, const Profile& p) {
  const Grid& g = *p.grid;
  FirstIntegralReport rep;
  rep.cell_values.resize(g.cell_count());
  for (std::size_t c = 0; c < g.cell_count(); ++c) {
    const double s = (p.values[c + 1] - p.values[c]) / g.cell_length(c);
    const double mid = 0.5 * (p.values[c] + p.values[c + 1]);
    const double cm = std::cos(mid);
    rep.cell_values[c] = s * s - cm * cm;
  }

  // maximal constant-a intervals clipped to [-L, L]
  std::vector<double> edges{-g.half_length};
  for (double b : w.breakpoints) {
    if (b > -g.half_length && b < g.half_length) edges.push_back(b);
  }
  edges.push_back(g.half_length);

  for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
    IntervalFirstIntegral iv;
    iv.lo = edges[k];
    iv.hi = edges[k + 1];
    double sum = 0.0;
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      const double mid = g.cell_midpoint(c);
      if (mid > iv.lo && mid < iv.hi) {
        sum += rep.cell_values[c];
        ++iv.cells;
      }
    }
    if (iv.cells == 0) continue;
    iv.mean = sum / static_cast<double>(iv.cells);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
      const double mid = g.cell_midpoint(c);
      if (mid > iv.lo && mid < iv.hi) {
        iv.max_deviation =
            std::max(iv.max_deviation, std::abs(rep.cell_values[c] - iv.mean));
      }
    }
    rep.per_interval.push_back(iv);
  }
  return rep;
}

std::vector<double> nodal_first_integral(const Grid& g,
                                         const std::vector<double>& cells) {
  return average_to_nodes(g, cells);
}

}  // namespace wallforge
