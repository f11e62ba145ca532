#include "ak/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "ak/parallel.hpp"

namespace ak {

namespace {

// Terms w_y d(x,y)^{-s} for y ∈ Y sorted by distance, with prefix and suffix sums.
struct Radial {
  std::vector<double> dist;
  std::vector<double> prefix;  // prefix[k] = Σ_{j<k}
  std::vector<double> suffix;  // suffix[k] = Σ_{j>=k}

  double inside(double t) const { return prefix[rank(t)]; }
  double outside(double t) const { return suffix[rank(t)]; }
  std::size_t rank(double t) const {
    return static_cast<std::size_t>(std::lower_bound(dist.begin(), dist.end(), t) - dist.begin());
  }
};

Radial radial(const DiscreteSpace& space, Index x, double s, bool with_centre) {
  std::vector<std::pair<double, double>> terms;
  for (Index y : space.y_indices()) {
    const double d = space.distance(x, y);
    if (d > 0.0) {
      terms.emplace_back(d, space.weight(y) * std::pow(d, -s));
    } else if (with_centre) {
      terms.emplace_back(0.0, space.weight(y));
    }
  }
  std::sort(terms.begin(), terms.end(),
            [](const auto& l, const auto& r) { return l.first < r.first; });
  Radial out;
  out.dist.reserve(terms.size());
  out.prefix.assign(terms.size() + 1, 0.0);
  out.suffix.assign(terms.size() + 1, 0.0);
  for (std::size_t k = 0; k < terms.size(); ++k) {
    out.dist.push_back(terms[k].first);
    out.prefix[k + 1] = out.prefix[k] + terms[k].second;
  }
  for (std::size_t k = terms.size(); k-- > 0;) out.suffix[k] = out.suffix[k + 1] + terms[k].second;
  return out;
}

std::vector<double> clip_to_mesh(const DiscreteSpace& space, std::span<const double> grid,
                                 std::size_t& clipped) {
  std::vector<double> out;
  clipped = 0;
  for (double t : grid) {
    if (!(t > 0.0)) throw std::invalid_argument("grid values must be positive");
    if (t < space.mesh_size()) {
      ++clipped;
    } else {
      out.push_back(t);
    }
  }
  return out;
}

// sup over x per grid value of f(radial, t); fills per_grid, measured, argmax.
template <class F>
void scan(const DiscreteSpace& space, double s, bool with_centre, BoundsReport& rep, F&& f) {
  const auto xs = space.x_indices();
  const std::size_t nt = rep.grid.size();
  std::vector<double> vals(xs.size() * nt, 0.0);
  parallel_for(xs.size(), [&](std::size_t a) {
    const Radial rad = radial(space, xs[a], s, with_centre);
    for (std::size_t j = 0; j < nt; ++j) vals[a * nt + j] = f(rad, rep.grid[j]);
  });
  rep.per_grid.assign(nt, 0.0);
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t j = 0; j < nt; ++j) {
      const double v = vals[a * nt + j];
      rep.per_grid[j] = std::max(rep.per_grid[j], v);
      if (v > rep.measured) {
        rep.measured = v;
        rep.argmax_x = xs[a];
      }
    }
  }
}

void require_upsilon(double upsilon) {
  if (!(upsilon > 0.0)) throw std::invalid_argument("upsilon must be > 0");
}

}  // namespace

BoundsReport c_prime(const DiscreteSpace& space, double upsilon, double s,
                     std::span<const double> a_grid,
                     const std::optional<RegularityReport>& regularity) {
  require_upsilon(upsilon);
  if (!(s >= 0.0)) throw std::invalid_argument("c_prime needs s >= 0");
  if (!(s < upsilon)) throw std::invalid_argument("c_prime needs s < upsilon");
  if (a_grid.empty()) throw std::invalid_argument("c_prime: empty a grid");
  for (double a : a_grid) {
    if (!(a > 0.0)) throw std::invalid_argument("c_prime: a values must be positive");
  }
  BoundsReport rep;
  rep.name = "c_prime";
  rep.s = s;
  rep.upsilon = upsilon;
  rep.grid.assign(a_grid.begin(), a_grid.end());

  const auto xs = space.x_indices();
  std::vector<double> sums(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t k) {
    double acc = 0.0;
    for (Index y : space.y_indices()) {
      if (s == 0.0) {
        acc += space.weight(y);
      } else {
        const double d = space.distance(xs[k], y);
        if (d > 0.0) acc += space.weight(y) * std::pow(d, -s);
      }
    }
    sums[k] = acc;
  });
  for (std::size_t k = 0; k < xs.size(); ++k) {
    if (sums[k] > rep.measured) {
      rep.measured = sums[k];
      rep.argmax_x = xs[k];
    }
  }

  if (regularity) {
    rep.ahlfors_constant = regularity->c_upper;
  } else {
    const double a_max = *std::max_element(a_grid.begin(), a_grid.end());
    rep.ahlfors_constant = certify_upper_ahlfors(space, upsilon, 0.0, a_max, true).c_upper;
  }
  double best = std::numeric_limits<double>::infinity();
  for (double a : rep.grid) {
    const double b = space.y_measure() * std::pow(a, -s) +
                     rep.ahlfors_constant * upsilon / (upsilon - s) * std::pow(a, upsilon - s);
    rep.per_grid.push_back(b);
    best = std::min(best, b);
  }
  rep.bound = best;
  rep.pass = rep.measured <= best;
  return rep;
}

BoundsReport c_double_prime(const DiscreteSpace& space, double upsilon, double s,
                            std::span<const double> t_grid) {
  require_upsilon(upsilon);
  if (!(s >= 0.0 && s < upsilon)) throw std::invalid_argument("c_double_prime needs 0 <= s < upsilon");
  BoundsReport rep;
  rep.name = "c_double_prime";
  rep.s = s;
  rep.upsilon = upsilon;
  rep.grid = clip_to_mesh(space, t_grid, rep.clipped);
  if (rep.grid.empty()) throw std::invalid_argument("c_double_prime: no t above the mesh size");
  scan(space, s, s == 0.0, rep, [&](const Radial& rad, double t) {
    return std::pow(t, s - upsilon) * rad.inside(t);
  });
  rep.pass = std::isfinite(rep.measured);
  return rep;
}

BoundsReport c_triple_prime(const DiscreteSpace& space, double upsilon, double s,
                            std::span<const double> t_grid) {
  require_upsilon(upsilon);
  if (!(s > upsilon)) throw std::invalid_argument("c_triple_prime needs s > upsilon");
  BoundsReport rep;
  rep.name = "c_triple_prime";
  rep.s = s;
  rep.upsilon = upsilon;
  rep.grid = clip_to_mesh(space, t_grid, rep.clipped);
  if (rep.grid.empty()) throw std::invalid_argument("c_triple_prime: no t above the mesh size");
  scan(space, s, false, rep, [&](const Radial& rad, double t) {
    return std::pow(t, s - upsilon) * rad.outside(t);
  });
  rep.pass = std::isfinite(rep.measured);
  return rep;
}

BoundsReport c_iv(const DiscreteSpace& space, double upsilon, std::span<const double> t_grid) {
  require_upsilon(upsilon);
  const double cap = std::exp(-1.0);
  for (double t : t_grid) {
    if (!(t < cap)) throw std::invalid_argument("c_iv needs every t < 1/e");
  }
  BoundsReport rep;
  rep.name = "c_iv";
  rep.s = upsilon;
  rep.upsilon = upsilon;
  rep.grid = clip_to_mesh(space, t_grid, rep.clipped);
  if (rep.grid.empty()) throw std::invalid_argument("c_iv: no t above the mesh size");
  scan(space, upsilon, false, rep, [&](const Radial& rad, double t) {
    return rad.outside(t) / std::abs(std::log(t));
  });
  std::vector<double> logs, integrals;
  for (std::size_t j = 0; j < rep.grid.size(); ++j) {
    const double l = std::abs(std::log(rep.grid[j]));
    logs.push_back(l);
    integrals.push_back(rep.per_grid[j] * l);
  }
  rep.log_fit = least_squares(logs, integrals);
  rep.pass = std::isfinite(rep.measured);
  return rep;
}

bool refinement_stable(double coarse, double fine, double rel) {
  return std::abs(fine - coarse) <= rel * std::max(std::abs(coarse), std::abs(fine));
}

double max_atom(const DiscreteSpace& space) {
  double m = 0.0;
  for (Index y : space.y_indices()) m = std::max(m, space.weight(y));
  return m;
}

}  // namespace ak
