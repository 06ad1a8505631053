#pragma once

#include <functional>
#include <span>
#include <vector>

namespace wallforge {

/// Recursive adaptive Simpson quadrature with the standard 1/15 error
/// estimate, refined until the estimate drops below abs_tol.
double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth = 60);

/// Bisection on a bracketing interval. Requires f(lo) and f(hi) of opposite
/// sign; returns the midpoint of the final interval of width <= tol.
double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double tol, int max_iter = 200);

/// Monotone cubic interpolant (Fritsch-Carlson slopes). Input abscissae must
/// be strictly increasing; the interpolant preserves monotone data.
class PchipInterpolant {
 public:
  PchipInterpolant() = default;
  PchipInterpolant(std::vector<double> x, std::vector<double> y);
  double operator()(double t) const;
  double front_x() const { return x_.front(); }
  double back_x() const { return x_.back(); }

 private:
  std::vector<double> x_, y_, slope_;
};

/// Thomas algorithm for a tridiagonal system; diag/lower/upper/rhs are not
/// modified. lower/upper have size n-1.
std::vector<double> thomas_solve(std::span<const double> diag,
                                 std::span<const double> lower,
                                 std::span<const double> upper,
                                 std::span<const double> rhs);

}  // namespace wallforge
