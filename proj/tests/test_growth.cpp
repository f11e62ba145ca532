#include <doctest.h>

#include <cmath>
#include <vector>

#include "ak/growth.hpp"

using namespace ak;

TEST_CASE("least squares recovers a line") {
  const std::vector<double> x{0, 1, 2, 3}, y{1, 3, 5, 7};
  const auto f = least_squares(x, y);
  CHECK(f.slope == doctest::Approx(2.0));
  CHECK(f.intercept == doctest::Approx(1.0));
  CHECK(f.r_squared == doctest::Approx(1.0));
}

TEST_CASE("growth laws are told apart") {
  std::vector<double> r, flat, power, loglaw;
  for (int j = 0; j < 12; ++j) {
    const double x = std::pow(2.0, -j - 1);
    r.push_back(x);
    flat.push_back(0.5 + 0.01 * std::sin(j));
    power.push_back(3.0 / x);
    loglaw.push_back(2.0 * std::abs(std::log(x)) + 1.0);
  }
  CHECK(fit_growth(r, flat).law == GrowthLaw::bounded);
  const auto p = fit_growth(r, power);
  CHECK(p.law == GrowthLaw::power);
  CHECK(p.power_exponent == doctest::Approx(1.0));
  const auto l = fit_growth(r, loglaw);
  CHECK(l.law == GrowthLaw::logarithmic);
  CHECK(l.log_coefficient == doctest::Approx(2.0));
  CHECK(l.log_r_squared - l.power_r_squared >= 0.02);
}

TEST_CASE("zero profiles are bounded") {
  const std::vector<double> r{0.1, 0.01}, v{0.0, 0.0};
  const auto f = fit_growth(r, v);
  CHECK(f.law == GrowthLaw::bounded);
  CHECK(f.points == 0);
}
