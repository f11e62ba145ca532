#include "ak/growth.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace ak {

LinearFit least_squares(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("least_squares: length mismatch");
  LinearFit fit;
  fit.points = x.size();
  if (x.empty()) return fit;
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  fit.slope = sxx > 0.0 ? sxy / sxx : 0.0;
  fit.intercept = my - fit.slope * mx;
  if (syy <= 0.0) {
    fit.r_squared = 1.0;
  } else {
    double sse = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      const double e = y[i] - (fit.slope * x[i] + fit.intercept);
      sse += e * e;
    }
    fit.r_squared = 1.0 - sse / syy;
  }
  return fit;
}

std::string to_string(GrowthLaw law) {
  switch (law) {
    case GrowthLaw::bounded:
      return "bounded";
    case GrowthLaw::power:
      return "power";
    case GrowthLaw::logarithmic:
      return "logarithmic";
    case GrowthLaw::ambiguous:
      return "ambiguous";
  }
  return {};
}

GrowthFit fit_growth(std::span<const double> r, std::span<const double> v,
                     double bounded_exponent, double tie) {
  if (r.size() != v.size()) throw std::invalid_argument("fit_growth: length mismatch");
  std::vector<double> lr, lv, ar, av;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (!(r[i] > 0.0)) throw std::invalid_argument("fit_growth: radii must be positive");
    const double a = std::abs(v[i]);
    if (a > 0.0) {
      lr.push_back(std::log(r[i]));
      lv.push_back(std::log(a));
    }
    if (r[i] < 1.0) {
      ar.push_back(std::abs(std::log(r[i])));
      av.push_back(a);
    }
  }
  GrowthFit out;
  out.points = lr.size();
  if (lr.size() >= 2) {
    const LinearFit p = least_squares(lr, lv);
    out.power_exponent = -p.slope;
    out.power_r_squared = p.r_squared;
  }
  if (ar.size() >= 2) {
    const LinearFit l = least_squares(ar, av);
    out.log_coefficient = l.slope;
    out.log_intercept = l.intercept;
    out.log_r_squared = l.r_squared;
  }
  if (out.power_exponent <= bounded_exponent) {
    out.law = GrowthLaw::bounded;
  } else if (std::abs(out.power_r_squared - out.log_r_squared) < tie) {
    out.law = GrowthLaw::ambiguous;
  } else {
    out.law = out.log_r_squared > out.power_r_squared ? GrowthLaw::logarithmic : GrowthLaw::power;
  }
  return out;
}

}  // namespace ak
