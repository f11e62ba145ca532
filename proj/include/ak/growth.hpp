#pragma once

// Growth-law fits for profiles v(r) as r → 0: bounded, r^{-p} or |log r|.

#include <span>
#include <string>

namespace ak {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y ≈ slope·x + intercept. R² is 1 for constant y.
LinearFit least_squares(std::span<const double> x, std::span<const double> y);

enum class GrowthLaw { bounded, power, logarithmic, ambiguous };
std::string to_string(GrowthLaw law);

struct GrowthFit {
  GrowthLaw law = GrowthLaw::bounded;
  double power_exponent = 0.0;  // p in v ~ C r^{-p}, from log v against log r
  double power_r_squared = 0.0;
  double log_coefficient = 0.0;  // a in v ~ a|log r| + b
  double log_intercept = 0.0;
  double log_r_squared = 0.0;
  std::size_t points = 0;  // samples with v > 0 and r < 1
};

/// Fits |v| against r. Only samples with v > 0 enter the power fit and only
/// r < 1 enter the log fit. The law is `bounded` when p <= bounded_exponent;
/// otherwise the larger R² wins unless the two differ by less than `tie`.
GrowthFit fit_growth(std::span<const double> r, std::span<const double> v,
                     double bounded_exponent = 0.1, double tie = 0.02);

}  // namespace ak
