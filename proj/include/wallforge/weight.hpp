#pragma once

#include <cstddef>
#include <vector>

namespace wallforge {

/// Piecewise-constant coercive coefficient a(x).
///
/// `segment_values[k]` is the value of a on the open interval between
/// breakpoints k-1 and k, with the two unbounded end intervals included,
/// so segment_values.size() == breakpoints.size() + 1. Evaluation at a
/// breakpoint follows the right-continuous convention.
struct Weight {
  std::vector<double> breakpoints;     // strictly increasing, may be empty
  std::vector<double> segment_values;  // positive, size = breakpoints.size()+1
  double a_lower = 0.0;                // essential infimum, computed
  double a_upper = 0.0;                // essential supremum, computed

  double max_abs_breakpoint() const;
};

/// Structural facts derived from the data, never user-asserted.
struct WeightTraits {
  bool is_even = false;
  bool is_nondecreasing_on_positive = false;
};

/// Build a Weight. Throws NonPositiveValueError / UnsortedBreakpointsError.
Weight weight_from_segments(std::vector<double> breakpoints,
                            std::vector<double> values);

/// Value of a at x (right-continuous at breakpoints).
double eval_weight(const Weight& w, double x);

WeightTraits classify_weight(const Weight& w);

/// The reflected weight x -> a(-x). Used by symmetry property tests.
Weight mirror_weight(const Weight& w);

}  // namespace wallforge
