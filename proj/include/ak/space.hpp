#pragma once

// Finite metric measure spaces: a weighted point cloud with two distinguished
// index sets X (evaluation points) and Y (integration support), plus the
// Ahlfors-regularity and sphere-condition estimators that run on them.

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

namespace ak {

using Index = std::size_t;

enum class Ball { open, closed };

class DiscreteSpace {
 public:
  /// Points given as `dim`-dimensional coordinates, row-major in `coords`.
  static DiscreteSpace from_coordinates(std::size_t dim, std::vector<double> coords,
                                        std::vector<double> weights, std::vector<Index> x,
                                        std::vector<Index> y);

  /// Abstract metric given as a dense row-major n x n matrix.
  static DiscreteSpace from_distance_matrix(std::vector<double> matrix,
                                            std::vector<double> weights,
                                            std::vector<Index> x, std::vector<Index> y);

  std::size_t size() const { return weights_.size(); }

  double distance(Index i, Index j) const {
    if (!matrix_.empty()) return matrix_[i * size() + j];
    const double* a = coords_.data() + i * dim_;
    const double* b = coords_.data() + j * dim_;
    double acc = 0.0;
    for (std::size_t k = 0; k < dim_; ++k) {
      const double t = a[k] - b[k];
      acc += t * t;
    }
    return std::sqrt(acc);
  }

  double weight(Index i) const { return weights_[i]; }
  std::span<const double> weights() const { return weights_; }

  std::span<const Index> x_indices() const { return x_; }
  std::span<const Index> y_indices() const { return y_; }
  bool in_x(Index i) const { return i < in_x_.size() && in_x_[i] != 0; }
  bool in_y(Index i) const { return i < in_y_.size() && in_y_[i] != 0; }

  /// X ∪ Y in increasing index order.
  std::vector<Index> union_indices() const;

  bool has_coordinates() const { return matrix_.empty(); }
  std::size_t dimension() const { return dim_; }
  /// Coordinates of point i; empty for matrix-backed spaces.
  std::span<const double> point(Index i) const {
    if (!has_coordinates()) return {};
    return {coords_.data() + i * dim_, dim_};
  }

  /// ν(Y), summed in the order of y_indices().
  double y_measure() const { return y_measure_; }
  /// Smallest nonzero distance between two points of Y (0 if there is none).
  double mesh_size() const { return mesh_; }
  /// Largest distance between two points of X ∪ Y.
  double diameter() const { return diameter_; }

  /// Same points and metric with every weight multiplied by `factor`.
  DiscreteSpace with_scaled_weights(double factor) const;

 private:
  DiscreteSpace() = default;
  void finalize();

  std::size_t dim_ = 0;
  std::vector<double> coords_;
  std::vector<double> matrix_;
  std::vector<double> weights_;
  std::vector<Index> x_, y_;
  std::vector<char> in_x_, in_y_;
  double y_measure_ = 0.0;
  double mesh_ = 0.0;
  double diameter_ = 0.0;
};

/// Probabilistic check of the metric axioms on random pairs and triples.
struct MetricCheck {
  bool ok = true;
  double worst_asymmetry = 0.0;
  double worst_triangle_excess = 0.0;  // max of d(i,k) - d(i,j) - d(j,k)
  double worst_self_distance = 0.0;
};
MetricCheck check_metric(const DiscreteSpace& space, std::size_t triples = 10000,
                         std::uint64_t seed = 1, double tolerance = 1e-12);

/// ν(B(x,r) ∩ Y); open ball by default, B(x,0) = ∅.
double ball_measure(const DiscreteSpace& space, Index x, double r, Ball kind = Ball::open);

/// ν((B(x,r2) \ B(x,r1)) ∩ Y), defined as the difference of the two ball measures.
double annulus_measure(const DiscreteSpace& space, Index x, double r1, double r2);

struct RegularitySample {
  Index x = 0;
  double r_inner = 0.0;  // 0 for balls
  double r_outer = 0.0;
  double measure = 0.0;
  double ratio = 0.0;
};

struct RegularityReport {
  double upsilon = 0.0;
  double c_upper = 0.0;
  std::optional<double> c_strong;  // only set by the annulus estimator
  double r_min = 0.0;
  double r_max = 0.0;
  std::size_t clipped = 0;         // grid radii dropped below the mesh floor
  std::vector<double> radii;       // outer radius per grid entry
  std::vector<double> sup_ratio;   // max over x per grid entry
  std::vector<RegularitySample> samples;
};

/// c_upper = max over x ∈ X and r in the grid of ν(B(x,r) ∩ Y) / r^υ.
/// Radii below the mesh size are dropped; an empty grid is an error.
RegularityReport estimate_upper_ahlfors(const DiscreteSpace& space, double upsilon,
                                        std::span<const double> r_grid);

/// Exact supremum of ν(B(x,r) ∩ Y)/r^υ over every r in [r_lo, r_hi), not only
/// grid radii. The ratio is a step function divided by r^υ, so the supremum is
/// attained as r decreases to a point distance. With `punctured` the centre x
/// is removed from Y, which allows r_lo = 0.
RegularityReport certify_upper_ahlfors(const DiscreteSpace& space, double upsilon, double r_lo,
                                       double r_hi, bool punctured = false);

/// c_strong = max over x and pairs of ν(annulus) / (r2^υ - r1^υ).
RegularityReport estimate_strong_upper_ahlfors(
    const DiscreteSpace& space, double upsilon,
    std::span<const std::pair<double, double>> r_pairs);

struct SphereConditionReport {
  double tolerance = 0.0;           // relative: |d - ρ| <= tolerance * ρ
  std::vector<double> rho;
  std::vector<bool> passed;         // per ρ, for all x'
  std::vector<double> worst_gap;    // per x' in X order: max over ρ of min_x'' |d - ρ| / ρ
  double a_estimate = 0.0;          // largest ρ of the passing prefix, 0 if none
  bool all_passed = false;
};

/// For each x' ∈ X and ρ, looks for x'' ∈ X \ {x'} with |d(x',x'') - ρ| <= tolerance·ρ.
SphereConditionReport check_sphere_condition(const DiscreteSpace& space,
                                             std::span<const double> rho_grid,
                                             double tolerance);

/// start·2^j for j = 0, 1, ... while the value stays <= stop (or < stop when
/// `inclusive_stop` is false).
std::vector<double> dyadic_grid(double start, double stop, bool inclusive_stop = true);

/// `count` logarithmically spaced points from lo to hi inclusive.
std::vector<double> log_grid(double lo, double hi, std::size_t count);

/// Default sphere-condition tolerance: 1.5 mesh spacings relative to the radius
/// scale diameter/2, capped at 0.25 so coarse spaces cannot pass vacuously.
double default_sphere_tolerance(const DiscreteSpace& space);

}  // namespace ak
