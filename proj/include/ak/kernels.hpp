#pragma once

// Kernel gallery, the first/second kernel-class norms, and truncated maximal
// functions r ↦ ∫_{Y∖B(x,r)} K(x,y) dν(y).

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "ak/growth.hpp"
#include "ak/holder.hpp"
#include "ak/space.hpp"

namespace ak {

struct KernelSpec {
  std::string name;
  /// K(x, y) for x ∈ X, y ∈ Y with d(x,y) > 0. Must be safe to call concurrently.
  std::function<Complex(const DiscreteSpace&, Index, Index)> evaluate;
  double s1 = 0.0;
  double s2 = 0.0;
  double s3 = 1.0;
  /// Closed form of r ↦ ∫_{Y∖B(x,r)} K dν in the continuum, if known.
  std::function<Complex(double)> analytic_maximal;
};

KernelSpec zero_kernel();
/// d(x,y)^{-s}, exponents (s, s+1, 1).
KernelSpec riesz(double s);
/// ((y-x)·x^⊥) / (|x| d^{s+1}) in the plane: odd under the reflection fixing x.
KernelSpec signed_riesz(double s);
/// (y-x)·n_y / (2π|x-y|²) on the circle of radius R centred at 0; equals
/// 1/(4πR) off the diagonal. Exponents (1, 2, 1).
KernelSpec double_layer_circle(double radius);
/// d^{-υ} with positive sign, exponents (υ, υ+1, 1).
KernelSpec log_blowup(double upsilon);
/// log_blowup(1) with the closed-form truncated integral on the circle of radius R.
KernelSpec log_blowup_circle(double radius);
/// alpha·a + b. Both kernels must carry the same exponents.
KernelSpec combine(Complex alpha, const KernelSpec& a, const KernelSpec& b);
KernelSpec custom(std::string name, std::function<Complex(const DiscreteSpace&, Index, Index)> fn,
                  double s1, double s2, double s3);

/// Dense cache of K on X × Y; entries with d(x,y) = 0 hold 0.
class KernelTable {
 public:
  KernelTable(const DiscreteSpace& space, const KernelSpec& k);
  /// a: position in x_indices(), b: position in y_indices().
  Complex at(std::size_t a, std::size_t b) const { return values_[a * ny_ + b]; }
  std::size_t rows() const { return nx_; }
  std::size_t cols() const { return ny_; }

 private:
  std::size_t nx_ = 0, ny_ = 0;
  std::vector<Complex> values_;
};

/// max over off-diagonal pairs of d^{s1}|K|.
double kernel_norm_first(const DiscreteSpace& space, const KernelSpec& k);
/// max over x' ≠ x'' in X and y ∈ Y with d(x',y) >= 2d(x',x'') of
/// d(x',y)^{s2} / d(x',x'')^{s3} · |K(x',y) - K(x'',y)|.
double kernel_norm_second(const DiscreteSpace& space, const KernelSpec& k);
double kernel_norm(const DiscreteSpace& space, const KernelSpec& k);

struct MaximalFunctionProfile {
  std::vector<double> radii;
  std::vector<Index> x;             // X order
  std::vector<Complex> values;      // row-major: values[a * radii.size() + j]
  std::vector<double> sup_per_r;    // max over x of |value|
  double global_sup = 0.0;
  GrowthFit fit;                    // of sup_per_r against radii

  Complex value(std::size_t a, std::size_t j) const { return values[a * radii.size() + j]; }
};

/// Σ_{i∈Y, d(x,i) >= r, d > 0} w_i K(x,i) for every x ∈ X and r in the grid.
MaximalFunctionProfile maximal_function(const DiscreteSpace& space, const KernelSpec& k,
                                        std::span<const double> r_grid);

struct KSharpReport {
  double first = 0.0;
  double second = 0.0;
  double maximal_sup = 0.0;
  double value = 0.0;   // first + second + maximal_sup
  bool member = false;  // fit is bounded
  GrowthFit fit;        // of the maximal profile at radii below 1/e (all radii if fewer than two)
};

KSharpReport ksharp_norm(const DiscreteSpace& space, const KernelSpec& k,
                         std::span<const double> r_grid);

}  // namespace ak
