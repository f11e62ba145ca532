#pragma once

// Measured integral constants c', c'', c''' and c^iv on discrete spaces, with
// the explicit upper bound for c' checked on a grid of splitting radii.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ak/growth.hpp"
#include "ak/space.hpp"

namespace ak {

struct BoundsReport {
  std::string name;          // c_prime | c_double_prime | c_triple_prime | c_iv
  double s = 0.0;
  double upsilon = 0.0;
  double measured = 0.0;
  std::optional<double> bound;  // smallest bound over the grid, c_prime only
  bool pass = false;
  std::vector<double> grid;      // a or t values actually used
  std::vector<double> per_grid;  // c_prime: bound(a); others: sup over x at t
  std::size_t clipped = 0;       // grid values dropped below the mesh size
  Index argmax_x = 0;
  double ahlfors_constant = 0.0;  // c_prime: the regularity constant used
  std::optional<LinearFit> log_fit;  // c_iv: sup_x integral against |log t|
};

/// max_x Σ_{y∈Y} w_y d(x,y)^{-s} compared with ν(Y) a^{-s} + c υ/(υ-s) a^{υ-s}
/// for each a. For s = 0 the integrand is 1 on all of Y, so the measured value
/// is ν(Y); for s > 0 the diagonal is skipped. Without `regularity`, c is the
/// exact punctured upper Ahlfors supremum over (0, max a).
BoundsReport c_prime(const DiscreteSpace& space, double upsilon, double s,
                     std::span<const double> a_grid,
                     const std::optional<RegularityReport>& regularity = std::nullopt);

/// sup over (x,t) of t^{s-υ} Σ_{Y∩B(x,t)} w d^{-s}; s = 0 counts the centre.
BoundsReport c_double_prime(const DiscreteSpace& space, double upsilon, double s,
                            std::span<const double> t_grid);

/// sup over (x,t) of t^{s-υ} Σ_{Y∖B(x,t)} w d^{-s}; requires s > υ.
BoundsReport c_triple_prime(const DiscreteSpace& space, double upsilon, double s,
                            std::span<const double> t_grid);

/// sup over (x,t) of |log t|^{-1} Σ_{Y∖B(x,t)} w d^{-υ}; requires t < 1/e.
BoundsReport c_iv(const DiscreteSpace& space, double upsilon, std::span<const double> t_grid);

/// |fine - coarse| <= rel · max(|coarse|, |fine|).
bool refinement_stable(double coarse, double fine, double rel = 0.2);

/// Largest single weight on Y.
double max_atom(const DiscreteSpace& space);

}  // namespace ak
