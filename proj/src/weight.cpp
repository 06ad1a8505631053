#include "wallforge/weight.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "wallforge/errors.hpp"

namespace wallforge {

double Weight::max_abs_breakpoint() const {
  double m = 0.0;
  for (double b : breakpoints) m = std::max(m, std::abs(b));
  return m;
}

Weight weight_from_segments(std::vector<double> breakpoints,
                            std::vector<double> values) {
  if (values.size() != breakpoints.size() + 1) {
    throw UnsortedBreakpointsError(
        "segment count must be breakpoint count + 1");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i - 1] < breakpoints[i])) {
      throw UnsortedBreakpointsError("breakpoints must be strictly increasing");
    }
  }
  for (double v : values) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      throw NonPositiveValueError("segment values must be positive");
    }
  }
  Weight w;
  w.breakpoints = std::move(breakpoints);
  w.segment_values = std::move(values);
  w.a_lower = *std::min_element(w.segment_values.begin(),
                                w.segment_values.end());
  w.a_upper = *std::max_element(w.segment_values.begin(),
                                w.segment_values.end());
  return w;
}

double eval_weight(const Weight& w, double x) {
  // index of the first breakpoint > x; the segment left of it contains x
  // under the right-continuous convention.
  auto it = std::upper_bound(w.breakpoints.begin(), w.breakpoints.end(), x);
  return w.segment_values[static_cast<std::size_t>(
      it - w.breakpoints.begin())];
}

WeightTraits classify_weight(const Weight& w) {
  WeightTraits t;

  const std::size_t nb = w.breakpoints.size();
  t.is_even = true;
  for (std::size_t i = 0; i < nb; ++i) {
    if (w.breakpoints[i] != -w.breakpoints[nb - 1 - i]) {
      t.is_even = false;
      break;
    }
  }
  if (t.is_even) {
    const std::size_t ns = w.segment_values.size();
    for (std::size_t i = 0; i < ns; ++i) {
      if (w.segment_values[i] != w.segment_values[ns - 1 - i]) {
        t.is_even = false;
        break;
      }
    }
  }

  // Segments whose interval meets (0, inf), in left-to-right order.
  t.is_nondecreasing_on_positive = true;
  double prev = -1.0;
  for (std::size_t k = 0; k < w.segment_values.size(); ++k) {
    const double hi =
        (k < nb) ? w.breakpoints[k] : std::numeric_limits<double>::infinity();
    if (hi <= 0.0) continue;  // entirely non-positive interval
    if (prev >= 0.0 && w.segment_values[k] < prev) {
      t.is_nondecreasing_on_positive = false;
      break;
    }
    prev = w.segment_values[k];
  }
  return t;
}

Weight mirror_weight(const Weight& w) {
  std::vector<double> b(w.breakpoints.rbegin(), w.breakpoints.rend());
  for (double& x : b) x = -x;
  std::vector<double> v(w.segment_values.rbegin(), w.segment_values.rend());
  return weight_from_segments(std::move(b), std::move(v));
}

}  // namespace wallforge
