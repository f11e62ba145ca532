#include "ak/space.hpp"

#include <algorithm>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

#include "ak/parallel.hpp"

namespace ak {

namespace {

void require_indices(const std::vector<Index>& idx, std::size_t n, const char* what) {
  std::vector<char> seen(n, 0);
  for (Index i : idx) {
    if (i >= n) {
      throw std::invalid_argument(std::string(what) + " index " + std::to_string(i) +
                                  " out of range (size " + std::to_string(n) + ")");
    }
    if (seen[i]) {
      throw std::invalid_argument(std::string(what) + " index " + std::to_string(i) +
                                  " listed twice");
    }
    seen[i] = 1;
  }
}

void require_x(const DiscreteSpace& space, Index x) {
  if (!space.in_x(x)) {
    throw std::out_of_range("point " + std::to_string(x) + " is not in X");
  }
}

}  // namespace

DiscreteSpace DiscreteSpace::from_coordinates(std::size_t dim, std::vector<double> coords,
                                              std::vector<double> weights, std::vector<Index> x,
                                              std::vector<Index> y) {
  if (dim == 0) throw std::invalid_argument("coordinate dimension must be >= 1");
  if (coords.size() != dim * weights.size()) {
    throw std::invalid_argument("coords has " + std::to_string(coords.size()) +
                                " entries, expected " + std::to_string(dim * weights.size()));
  }
  for (double c : coords) {
    if (!std::isfinite(c)) throw std::invalid_argument("non-finite coordinate");
  }
  DiscreteSpace s;
  s.dim_ = dim;
  s.coords_ = std::move(coords);
  s.weights_ = std::move(weights);
  s.x_ = std::move(x);
  s.y_ = std::move(y);
  s.finalize();
  return s;
}

DiscreteSpace DiscreteSpace::from_distance_matrix(std::vector<double> matrix,
                                                  std::vector<double> weights,
                                                  std::vector<Index> x, std::vector<Index> y) {
  const std::size_t n = weights.size();
  if (matrix.size() != n * n) {
    throw std::invalid_argument("distance matrix has " + std::to_string(matrix.size()) +
                                " entries, expected " + std::to_string(n * n));
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (matrix[i * n + i] != 0.0) throw std::invalid_argument("distance matrix diagonal must be 0");
    for (std::size_t j = 0; j < n; ++j) {
      const double d = matrix[i * n + j];
      if (!std::isfinite(d) || d < 0.0) {
        throw std::invalid_argument("distance matrix entries must be finite and >= 0");
      }
      if (d != matrix[j * n + i]) throw std::invalid_argument("distance matrix must be symmetric");
    }
  }
  DiscreteSpace s;
  s.matrix_ = std::move(matrix);
  s.weights_ = std::move(weights);
  s.x_ = std::move(x);
  s.y_ = std::move(y);
  s.finalize();
  return s;
}

void DiscreteSpace::finalize() {
  const std::size_t n = weights_.size();
  for (double w : weights_) {
    if (!std::isfinite(w) || w < 0.0) {
      throw std::invalid_argument("weights must be finite and nonnegative");
    }
  }
  require_indices(x_, n, "X");
  require_indices(y_, n, "Y");
  in_x_.assign(n, 0);
  in_y_.assign(n, 0);
  for (Index i : x_) in_x_[i] = 1;
  for (Index i : y_) in_y_[i] = 1;

  y_measure_ = 0.0;
  for (Index i : y_) y_measure_ += weights_[i];

  double mesh = std::numeric_limits<double>::infinity();
  for (std::size_t a = 0; a < y_.size(); ++a) {
    for (std::size_t b = a + 1; b < y_.size(); ++b) {
      const double d = distance(y_[a], y_[b]);
      if (d > 0.0 && d < mesh) mesh = d;
    }
  }
  mesh_ = std::isfinite(mesh) ? mesh : 0.0;

  const auto all = union_indices();
  double diam = 0.0;
  for (std::size_t a = 0; a < all.size(); ++a) {
    for (std::size_t b = a + 1; b < all.size(); ++b) {
      diam = std::max(diam, distance(all[a], all[b]));
    }
  }
  diameter_ = diam;
}

std::vector<Index> DiscreteSpace::union_indices() const {
  std::vector<Index> out;
  for (Index i = 0; i < size(); ++i) {
    if (in_x_[i] || in_y_[i]) out.push_back(i);
  }
  return out;
}

DiscreteSpace DiscreteSpace::with_scaled_weights(double factor) const {
  DiscreteSpace s = *this;
  for (double& w : s.weights_) w *= factor;
  s.finalize();
  return s;
}

MetricCheck check_metric(const DiscreteSpace& space, std::size_t triples, std::uint64_t seed,
                         double tolerance) {
  MetricCheck out;
  const std::size_t n = space.size();
  if (n == 0) return out;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  const double scale = std::max(space.diameter(), 1.0);
  for (std::size_t i = 0; i < n; ++i) {
    out.worst_self_distance = std::max(out.worst_self_distance, space.distance(i, i));
  }
  for (std::size_t t = 0; t < triples; ++t) {
    const Index i = pick(rng), j = pick(rng), k = pick(rng);
    const double dij = space.distance(i, j);
    out.worst_asymmetry = std::max(out.worst_asymmetry, std::abs(dij - space.distance(j, i)));
    const double excess = space.distance(i, k) - dij - space.distance(j, k);
    out.worst_triangle_excess = std::max(out.worst_triangle_excess, excess);
  }
  out.ok = out.worst_self_distance == 0.0 && out.worst_asymmetry <= tolerance * scale &&
           out.worst_triangle_excess <= tolerance * scale;
  return out;
}

double ball_measure(const DiscreteSpace& space, Index x, double r, Ball kind) {
  require_x(space, x);
  if (!(r >= 0.0)) throw std::invalid_argument("ball radius must be >= 0");
  if (r == 0.0 && kind == Ball::open) return 0.0;
  double m = 0.0;
  for (Index i : space.y_indices()) {
    const double d = space.distance(x, i);
    if (kind == Ball::open ? d < r : d <= r) m += space.weight(i);
  }
  return m;
}

double annulus_measure(const DiscreteSpace& space, Index x, double r1, double r2) {
  if (!(r1 < r2)) throw std::invalid_argument("annulus requires r1 < r2");
  return ball_measure(space, x, r2) - ball_measure(space, x, r1);
}

RegularityReport estimate_upper_ahlfors(const DiscreteSpace& space, double upsilon,
                                        std::span<const double> r_grid) {
  if (!(upsilon > 0.0)) throw std::invalid_argument("upsilon must be > 0");
  if (r_grid.empty()) throw std::invalid_argument("r_grid is empty");

  RegularityReport rep;
  rep.upsilon = upsilon;
  const double floor = space.mesh_size();
  for (double r : r_grid) {
    if (!(r > 0.0)) throw std::invalid_argument("r_grid radii must be > 0");
    if (r < floor) {
      ++rep.clipped;
      continue;
    }
    rep.radii.push_back(r);
  }
  if (rep.radii.empty()) {
    throw std::invalid_argument("every r_grid radius lies below the mesh size");
  }
  std::sort(rep.radii.begin(), rep.radii.end());
  rep.r_min = rep.radii.front();
  rep.r_max = rep.radii.back();

  const auto xs = space.x_indices();
  const std::size_t nr = rep.radii.size();
  std::vector<double> measures(xs.size() * nr);
  parallel_for(xs.size(), [&](std::size_t a) {
    for (std::size_t k = 0; k < nr; ++k) {
      measures[a * nr + k] = ball_measure(space, xs[a], rep.radii[k]);
    }
  });

  rep.sup_ratio.assign(nr, 0.0);
  rep.samples.reserve(measures.size());
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t k = 0; k < nr; ++k) {
      const double r = rep.radii[k];
      const double m = measures[a * nr + k];
      const double ratio = m / std::pow(r, upsilon);
      rep.samples.push_back({xs[a], 0.0, r, m, ratio});
      rep.sup_ratio[k] = std::max(rep.sup_ratio[k], ratio);
      rep.c_upper = std::max(rep.c_upper, ratio);
    }
  }
  return rep;
}

RegularityReport certify_upper_ahlfors(const DiscreteSpace& space, double upsilon, double r_lo,
                                       double r_hi, bool punctured) {
  if (!(upsilon > 0.0)) throw std::invalid_argument("upsilon must be > 0");
  if (!(r_lo >= 0.0) || !(r_hi > r_lo)) {
    throw std::invalid_argument("certification range must satisfy 0 <= r_lo < r_hi");
  }
  RegularityReport rep;
  rep.upsilon = upsilon;
  rep.r_min = r_lo;
  rep.r_max = r_hi;

  const auto xs = space.x_indices();
  std::vector<RegularitySample> best(xs.size());
  parallel_for(xs.size(), [&](std::size_t a) {
    const Index x = xs[a];
    std::vector<std::pair<double, double>> dw;
    dw.reserve(space.y_indices().size());
    for (Index i : space.y_indices()) {
      const double d = space.distance(x, i);
      if (punctured && d == 0.0) continue;
      dw.emplace_back(d, space.weight(i));
    }
    std::sort(dw.begin(), dw.end());

    RegularitySample s{x, 0.0, r_lo, 0.0, 0.0};
    double below = 0.0;  // ν(B(x, r_lo))
    std::size_t k = 0;
    for (; k < dw.size() && dw[k].first < r_lo; ++k) below += dw[k].second;
    if (r_lo > 0.0) {
      s.measure = below;
      s.ratio = below / std::pow(r_lo, upsilon);
    } else if (below > 0.0) {
      s.ratio = std::numeric_limits<double>::infinity();
    }
    double closed = below;
    while (k < dw.size() && dw[k].first < r_hi) {
      const double d = dw[k].first;
      while (k < dw.size() && dw[k].first == d) closed += dw[k++].second;
      if (d == 0.0) {
        if (closed > 0.0) {
          s = {x, 0.0, 0.0, closed, std::numeric_limits<double>::infinity()};
        }
        continue;
      }
      const double ratio = closed / std::pow(d, upsilon);
      if (ratio > s.ratio) s = {x, 0.0, d, closed, ratio};
    }
    best[a] = s;
  });
  for (const auto& s : best) rep.c_upper = std::max(rep.c_upper, s.ratio);
  rep.samples = std::move(best);
  return rep;
}

RegularityReport estimate_strong_upper_ahlfors(
    const DiscreteSpace& space, double upsilon,
    std::span<const std::pair<double, double>> r_pairs) {
  if (!(upsilon > 0.0)) throw std::invalid_argument("upsilon must be > 0");
  if (r_pairs.empty()) throw std::invalid_argument("r_pairs is empty");
  for (const auto& [r1, r2] : r_pairs) {
    if (!(r1 >= 0.0) || !(r1 < r2)) {
      throw std::invalid_argument("annulus pair must satisfy 0 <= r1 < r2 (got " +
                                  std::to_string(r1) + ", " + std::to_string(r2) + ")");
    }
  }

  RegularityReport rep;
  rep.upsilon = upsilon;
  rep.r_min = r_pairs.front().first;
  rep.r_max = r_pairs.front().second;
  for (const auto& [r1, r2] : r_pairs) {
    rep.r_min = std::min(rep.r_min, r1);
    rep.r_max = std::max(rep.r_max, r2);
    rep.radii.push_back(r2);
  }

  const auto xs = space.x_indices();
  const std::size_t np = r_pairs.size();
  std::vector<double> measures(xs.size() * np);
  parallel_for(xs.size(), [&](std::size_t a) {
    for (std::size_t k = 0; k < np; ++k) {
      const auto [r1, r2] = r_pairs[k];
      measures[a * np + k] = annulus_measure(space, xs[a], r1, r2);
    }
  });

  double c = 0.0;
  rep.sup_ratio.assign(np, 0.0);
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t k = 0; k < np; ++k) {
      const auto [r1, r2] = r_pairs[k];
      const double m = measures[a * np + k];
      const double ratio = m / (std::pow(r2, upsilon) - std::pow(r1, upsilon));
      rep.samples.push_back({xs[a], r1, r2, m, ratio});
      rep.sup_ratio[k] = std::max(rep.sup_ratio[k], ratio);
      c = std::max(c, ratio);
    }
  }
  rep.c_strong = c;
  return rep;
}

SphereConditionReport check_sphere_condition(const DiscreteSpace& space,
                                             std::span<const double> rho_grid,
                                             double tolerance) {
  if (!(tolerance > 0.0)) throw std::invalid_argument("tolerance must be > 0");
  for (double rho : rho_grid) {
    if (!(rho > 0.0)) throw std::invalid_argument("rho_grid radii must be > 0");
  }
  SphereConditionReport rep;
  rep.tolerance = tolerance;
  rep.rho.assign(rho_grid.begin(), rho_grid.end());

  const auto xs = space.x_indices();
  const std::size_t nr = rep.rho.size();
  std::vector<char> ok(xs.size() * nr, 0);
  rep.worst_gap.assign(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t a) {
    std::vector<double> dist;
    dist.reserve(xs.size());
    for (std::size_t b = 0; b < xs.size(); ++b) {
      if (b != a) dist.push_back(space.distance(xs[a], xs[b]));
    }
    std::sort(dist.begin(), dist.end());
    double worst = 0.0;
    for (std::size_t k = 0; k < nr; ++k) {
      const double rho = rep.rho[k];
      double gap = std::numeric_limits<double>::infinity();
      const auto it = std::lower_bound(dist.begin(), dist.end(), rho);
      if (it != dist.end()) gap = std::min(gap, *it - rho);
      if (it != dist.begin()) gap = std::min(gap, rho - *std::prev(it));
      ok[a * nr + k] = gap <= tolerance * rho ? 1 : 0;
      worst = std::max(worst, gap / rho);
    }
    rep.worst_gap[a] = worst;
  });

  rep.passed.assign(nr, !xs.empty());
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t k = 0; k < nr; ++k) {
      if (!ok[a * nr + k]) rep.passed[k] = false;
    }
  }
  rep.all_passed = nr > 0 && std::all_of(rep.passed.begin(), rep.passed.end(),
                                         [](bool b) { return b; });
  for (std::size_t k = 0; k < nr && rep.passed[k]; ++k) {
    rep.a_estimate = std::max(rep.a_estimate, rep.rho[k]);
  }
  return rep;
}

std::vector<double> dyadic_grid(double start, double stop, bool inclusive_stop) {
  if (!(start > 0.0)) throw std::invalid_argument("dyadic grid start must be > 0");
  std::vector<double> out;
  for (double r = start; inclusive_stop ? r <= stop : r < stop; r *= 2.0) out.push_back(r);
  return out;
}

std::vector<double> log_grid(double lo, double hi, std::size_t count) {
  if (!(lo > 0.0) || !(hi >= lo) || count == 0) {
    throw std::invalid_argument("log grid needs 0 < lo <= hi and count >= 1");
  }
  std::vector<double> out(count);
  if (count == 1) {
    out[0] = lo;
    return out;
  }
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t k = 0; k < count; ++k) {
    out[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(count - 1));
  }
  out.front() = lo;
  out.back() = hi;
  return out;
}

namespace {
constexpr double kMaxSphereTolerance = 0.25;
}  // namespace

double default_sphere_tolerance(const DiscreteSpace& space) {
  const double half_diameter = space.diameter() / 2.0;
  if (!(half_diameter > 0.0)) return kMaxSphereTolerance;
  return std::min(kMaxSphereTolerance, 1.5 * space.mesh_size() / half_diameter);
}

}  // namespace ak
