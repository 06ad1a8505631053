#include "wallforge/numerics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "wallforge/errors.hpp"

namespace wallforge {

namespace {

double simpson(double h, double fa, double fc, double fb) {
  return (fa + 4.0 * fc + fb) * (h / 6.0);
}

double simpson_rec(const std::function<double(double)>& f, double a, double c,
                   double b, double fa, double fc, double fb, double whole,
                   double tol, int depth) {
  const double ca = 0.5 * (a + c);
  const double cb = 0.5 * (c + b);
  const double fca = f(ca);
  const double fcb = f(cb);
  const double left = simpson(c - a, fa, fca, fc);
  const double right = simpson(b - c, fc, fcb, fb);
  const double err = (left + right - whole) / 15.0;
  // the requested tolerance cannot drop below the rounding floor of the
  // error estimate itself, or sharp peaks recurse without bound
  const double floor_tol = 16.0 * std::numeric_limits<double>::epsilon() *
                           (std::abs(left) + std::abs(right));
  if (std::abs(err) <= std::max(tol, floor_tol) || depth <= 0) {
    return left + right + err;
  }
  return simpson_rec(f, a, ca, c, fa, fca, fc, left, 0.5 * tol, depth - 1) +
         simpson_rec(f, c, cb, b, fc, fcb, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double adaptive_simpson(const std::function<double(double)>& f, double a,
                        double b, double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  const double c = 0.5 * (a + b);
  const double fa = f(a);
  const double fb = f(b);
  const double fc = f(c);
  const double whole = simpson(b - a, fa, fc, fb);
  return simpson_rec(f, a, c, b, fa, fc, fb, whole, abs_tol, max_depth);
}

double bisect_root(const std::function<double(double)>& f, double lo,
                   double hi, double tol, int max_iter) {
  double flo = f(lo);
  double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    throw NoSignChangeError("bisect_root: no sign change on bracket");
  }
  for (int it = 0; it < max_iter && hi - lo > tol; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (fhi > 0.0)) {
      hi = mid;
      fhi = fm;
    } else {
      lo = mid;
      flo = fm;
    }
  }
  return 0.5 * (lo + hi);
}

PchipInterpolant::PchipInterpolant(std::vector<double> x,
                                   std::vector<double> y)
    : x_(std::move(x)), y_(std::move(y)) {
  const std::size_t n = x_.size();
  if (n < 2 || y_.size() != n) {
    throw std::invalid_argument("pchip: need >= 2 matching samples");
  }
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = x_[i + 1] - x_[i];
    if (!(h > 0.0)) throw std::invalid_argument("pchip: x not increasing");
    d[i] = (y_[i + 1] - y_[i]) / h;
  }
  slope_.assign(n, 0.0);
  slope_[0] = d[0];
  slope_[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (d[i - 1] == 0.0 || d[i] == 0.0 || (d[i - 1] > 0) != (d[i] > 0)) {
      slope_[i] = 0.0;
    } else {
      // weighted harmonic mean keeps the interpolant monotone
      const double h0 = x_[i] - x_[i - 1];
      const double h1 = x_[i + 1] - x_[i];
      const double w0 = 2.0 * h1 + h0;
      const double w1 = h1 + 2.0 * h0;
      slope_[i] = (w0 + w1) / (w0 / d[i - 1] + w1 / d[i]);
    }
  }
}

double PchipInterpolant::operator()(double t) const {
  const std::size_t n = x_.size();
  if (t <= x_.front()) return y_.front() + slope_.front() * (t - x_.front());
  if (t >= x_.back()) return y_.back() + slope_.back() * (t - x_.back());
  std::size_t lo = 0, hi = n - 1;
  while (hi - lo > 1) {
    const std::size_t mid = (lo + hi) / 2;
    (x_[mid] <= t ? lo : hi) = mid;
  }
  const double h = x_[lo + 1] - x_[lo];
  const double s = (t - x_[lo]) / h;
  const double y0 = y_[lo], y1 = y_[lo + 1];
  const double m0 = slope_[lo] * h, m1 = slope_[lo + 1] * h;
  const double s2 = s * s, s3 = s2 * s;
  return (2 * s3 - 3 * s2 + 1) * y0 + (s3 - 2 * s2 + s) * m0 +
         (-2 * s3 + 3 * s2) * y1 + (s3 - s2) * m1;
}

std::vector<double> thomas_solve(std::span<const double> diag,
                                 std::span<const double> lower,
                                 std::span<const double> upper,
                                 std::span<const double> rhs) {
  const std::size_t n = diag.size();
  std::vector<double> c(upper.begin(), upper.end());
  std::vector<double> d(diag.begin(), diag.end());
  std::vector<double> b(rhs.begin(), rhs.end());
  for (std::size_t i = 1; i < n; ++i) {
    const double m = lower[i - 1] / d[i - 1];
    d[i] -= m * c[i - 1];
    b[i] -= m * b[i - 1];
  }
  std::vector<double> x(n);
  x[n - 1] = b[n - 1] / d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) {
    x[i] = (b[i] - c[i] * x[i + 1]) / d[i];
  }
  return x;
}

}  // namespace wallforge
