#pragma once

// Moduli of continuity, sampled functions and generalized Hölder seminorms.
//
// All seminorms here are maxima over the sampled pairs, i.e. lower bounds for
// the seminorm of any continuum function that restricts to the samples.

#include <complex>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "ak/space.hpp"

namespace ak {

using Complex = std::complex<double>;

class Modulus {
 public:
  enum class Kind { power, log_power, max_of, min_exp };

  /// r^α, α ∈ (0,1].
  static Modulus power(double alpha);
  /// ω_θ(r) = r^θ|ln r| on (0, e^{-1/θ}], constant beyond, θ ∈ (0,1].
  static Modulus log_power(double theta);
  /// max{ω₁(r), ω₂(r)} with no rescaling of either branch.
  static Modulus max_of(Modulus a, Modulus b);
  /// r^{min{α,γ}}.
  static Modulus min_exp(double alpha, double gamma);

  double operator()(double r) const;

  Kind kind() const { return kind_; }
  /// Power: α. LogPower: θ. MinExp: min{α,γ}. MaxOf: not defined (NaN).
  double exponent() const;
  std::string describe() const;

 private:
  Modulus() = default;
  Kind kind_ = Kind::power;
  double a_ = 1.0;
  double b_ = 1.0;
  std::shared_ptr<const Modulus> lhs_, rhs_;
};

inline double modulus_eval(const Modulus& m, double r) { return m(r); }

/// Values of a function on a subset of a DiscreteSpace's points.
class SampledFunction {
 public:
  SampledFunction() = default;
  SampledFunction(std::size_t space_size, std::vector<Index> domain, std::vector<Complex> values);

  template <class F>
  static SampledFunction from(const DiscreteSpace& space, std::span<const Index> domain, F&& fn) {
    std::vector<Complex> values;
    values.reserve(domain.size());
    for (Index i : domain) values.push_back(Complex(fn(i)));
    return SampledFunction(space.size(), {domain.begin(), domain.end()}, std::move(values));
  }

  std::span<const Index> domain() const { return domain_; }
  std::span<const Complex> values() const { return values_; }
  std::size_t space_size() const { return slot_.size(); }

  bool defined_at(Index i) const { return i < slot_.size() && slot_[i] >= 0; }
  /// Value at point i; throws std::out_of_range outside the domain.
  Complex at(Index i) const;

  double sup_abs() const;

  /// alpha·this + other; both must share a domain.
  SampledFunction axpy(Complex alpha, const SampledFunction& other) const;
  SampledFunction scaled(Complex alpha) const;

 private:
  std::vector<Index> domain_;
  std::vector<Complex> values_;
  std::vector<std::ptrdiff_t> slot_;
};

/// ω(d(i,j)) for every unordered pair of a fixed index set; lets repeated
/// seminorm evaluations on the same domain skip the pow/log calls.
class ModulusTable {
 public:
  ModulusTable(const DiscreteSpace& space, std::span<const Index> domain, const Modulus& m);
  std::span<const Index> domain() const { return domain_; }
  /// ω(d) for the pair (a, b) of domain positions, a < b.
  double at(std::size_t a, std::size_t b) const { return table_[offset(a) + (b - a - 1)]; }

 private:
  std::size_t offset(std::size_t a) const { return a * (2 * domain_.size() - a - 1) / 2; }
  std::vector<Index> domain_;
  std::vector<double> table_;
};

struct SeminormEstimate {
  double value = 0.0;  // sampled seminorm
  Index argmax_first = 0;
  Index argmax_second = 0;
  bool degenerate = false;  // fewer than two points: value reported as 0
};

SeminormEstimate holder_seminorm(const SampledFunction& f, const Modulus& m,
                                 const DiscreteSpace& space);
/// Same scan against a precomputed table; f must be defined on the table's domain.
SeminormEstimate holder_seminorm(const SampledFunction& f, const ModulusTable& table);

/// sup|f| + sampled seminorm.
double holder_norm_b(const SampledFunction& f, const Modulus& m, const DiscreteSpace& space);
double holder_norm_b(const SampledFunction& f, const ModulusTable& table);

/// Trichotomy on s2 - β versus υ.
enum class HolderCase { b, bb, bbb };
std::string to_string(HolderCase c);

/// Classifies (β, υ, s2, s3); s2 - β = υ is decided up to 1e-12.
/// Throws std::invalid_argument when the parameters fall outside every case.
HolderCase classify_case(double beta, double upsilon, double s2, double s3);

/// Target modulus of the map g ↦ Q[Z,g,1]:
///   b   → r^{min{β, υ+s3+β-s2}}
///   bb  → max{r^β, ω_{s3}(r)}
///   bbb → r^{min{β, s3}}
Modulus target_modulus_for_case(double beta, double upsilon, double s2, double s3);

}  // namespace ak
