#include <doctest.h>

#include <cmath>
#include <numbers>

#include "wallforge/errors.hpp"
#include "wallforge/numerics.hpp"

using namespace wallforge;

TEST_CASE("adaptive simpson on known integrals") {
  const double s =
      adaptive_simpson([](double x) { return std::sin(x); }, 0.0,
                       std::numbers::pi, 1e-12);
  CHECK(std::abs(s - 2.0) < 1e-11);

  const double g = adaptive_simpson(
      [](double x) { return std::exp(-x * x); }, -8.0, 8.0, 1e-12);
  CHECK(std::abs(g - std::sqrt(std::numbers::pi)) < 1e-10);
}

TEST_CASE("bisection finds the cosine root") {
  const double r = bisect_root([](double x) { return std::cos(x); }, 1.0, 2.0,
                               1e-14);
  CHECK(std::abs(r - std::numbers::pi / 2.0) < 1e-13);
  CHECK_THROWS_AS(
      bisect_root([](double x) { return 1.0 + x * x; }, 0.0, 1.0, 1e-10),
      NoSignChangeError);
}

TEST_CASE("pchip reproduces monotone data and stays monotone") {
  std::vector<double> x, y;
  for (int k = 0; k <= 30; ++k) {
    const double t = k / 30.0;
    x.push_back(t);
    y.push_back(std::tanh(3.0 * t));
  }
  const PchipInterpolant f(x, y);
  for (int k = 0; k <= 30; ++k) CHECK(f(x[k]) == doctest::Approx(y[k]));
  double prev = f(0.0);
  for (int k = 1; k <= 300; ++k) {
    const double v = f(k / 300.0);
    CHECK(v >= prev - 1e-14);
    prev = v;
  }
}

TEST_CASE("thomas solves a tridiagonal system") {
  // -u'' = 1 on (0,1), u(0)=u(1)=0, 4 interior nodes at h=1/5
  const int n = 4;
  const double h = 1.0 / 5.0;
  std::vector<double> d(n, 2.0 / (h * h)), e(n - 1, -1.0 / (h * h)),
      rhs(n, 1.0);
  const std::vector<double> u = thomas_solve(d, e, e, rhs);
  for (int i = 0; i < n; ++i) {
    const double x = (i + 1) * h;
    CHECK(u[i] == doctest::Approx(0.5 * x * (1.0 - x)).epsilon(1e-12));
  }
}
