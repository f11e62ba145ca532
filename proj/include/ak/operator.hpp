#pragma once

// The operator Q[Z,g,1](x) = ∫_Y Z(x,y)(g(x) - g(y)) dν(y), operator-norm lower
// bounds over test families, and the sufficiency / necessity experiments.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ak/growth.hpp"
#include "ak/holder.hpp"
#include "ak/kernels.hpp"
#include "ak/space.hpp"

namespace ak {

/// A violated space hypothesis (Ahlfors regularity, sphere condition).
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct CaseProfile {
  HolderCase tag = HolderCase::b;
  double upsilon = 0.0, beta = 0.0, s2 = 0.0, s3 = 0.0;
  Modulus source = Modulus::power(1.0);
  Modulus target = Modulus::power(1.0);
  /// b: max{r^β, r^γ}, γ = υ+s3+β-s2. bb: max{r^β, ω_{s3}}. bbb: max{r^β, r^{s3}}.
  Modulus phi = Modulus::power(1.0);
  /// Target exponent for b and bbb; NaN for bb.
  double target_exponent = 0.0;
  /// The target space is C^{0,β}: b: s2 <= υ+s3, bb: s3 > β, bbb: s3 >= β.
  bool no_decrease = false;
};

CaseProfile case_select(double upsilon, double beta, double s2, double s3);

/// Q[Z,g,1] on X. g must be defined on X ∪ Y; the diagonal d(x,y) = 0 is skipped.
SampledFunction apply_q(const DiscreteSpace& space, const KernelSpec& z, const SampledFunction& g);
SampledFunction apply_q(const DiscreteSpace& space, const KernelTable& z, const SampledFunction& g);

struct TestFunction {
  std::string name;
  SampledFunction g;         // on X ∪ Y
  double certified = 1.0;    // analytic upper bound of the β-seminorm
};

struct TestFunctionFamily {
  double beta = 1.0;
  std::vector<TestFunction> members;
};

/// g_{x'}(y) = d(x',y)^β for every x' ∈ X.
TestFunctionFamily bump_family(const DiscreteSpace& space, double beta);
/// g(y) = min_k (v_k + d(y,p_k)^β) with seeded random anchors p_k ∈ X ∪ Y and
/// offsets v_k ∈ [0,1). Each has β-seminorm at most 1.
TestFunctionFamily random_holder_family(const DiscreteSpace& space, double beta,
                                        std::size_t count = 32, std::uint64_t seed = 1,
                                        std::size_t anchors = 8);
/// Bumps followed by 32 random fields.
TestFunctionFamily default_family(const DiscreteSpace& space, double beta, std::uint64_t seed = 1);

struct OperatorNormEstimate {
  double value = 0.0;
  std::string argmax;
  std::size_t used = 0;
  std::size_t skipped = 0;
  double worst_source_seminorm = 0.0;  // max sampled |g|_β / certified over the family
};

/// max over members with nonzero sampled seminorm of
/// ‖Q g‖_{C_b^{0,target}(X)} / certified. Throws std::invalid_argument
/// ("degenerate family") when every member is skipped.
OperatorNormEstimate operator_norm_lower_bound(const DiscreteSpace& space, const KernelSpec& z,
                                               const CaseProfile& c,
                                               const TestFunctionFamily& family);

struct Decomposition {
  Index x1 = 0, x2 = 0;
  double separation = 0.0;
  Complex i1, i2, i3, i4;  // recombined as i1 - i2 + i3 + i4
  Complex difference;      // Q(x1) - Q(x2)
  double residual = 0.0;   // relative
};

/// Splits Q(x1) - Q(x2) over Y ∩ B(x1, 2d) and its complement into four sums.
Decomposition split_difference(const DiscreteSpace& space, const KernelSpec& z,
                               const SampledFunction& g, Index x1, Index x2);

/// The point of X \ {x} whose distance to x is closest to rho.
Index nearest_at_distance(const DiscreteSpace& space, Index x, double rho);

struct SufficiencyOptions {
  std::vector<double> r_grid;               // empty: dyadic from 2·mesh to diameter
  std::optional<TestFunctionFamily> family;
  double max_c_suff = 100.0;
  std::uint64_t seed = 1;
};

struct SufficiencyReport {
  CaseProfile profile;
  bool hypotheses_met = false;
  std::string hypothesis;          // which regularity was checked
  RegularityReport regularity;
  GrowthFit regularity_fit;
  KSharpReport ksharp;
  OperatorNormEstimate op_norm;
  double c_suff = 0.0;             // op_norm / ksharp.value
  bool consistent = false;
  std::string verdict;             // "consistent" | "inconsistent" | "hypotheses not met" | "K# membership fails"
};

SufficiencyReport sufficiency_experiment(const DiscreteSpace& space, const KernelSpec& z,
                                         const CaseProfile& c, const SufficiencyOptions& opt = {});

struct NecessityOptions {
  double safety_factor = 10.0;
  std::optional<TestFunctionFamily> family;
  std::optional<double> sphere_tolerance;  // default_sphere_tolerance when unset
  std::uint64_t seed = 1;
};

struct NecessityReport {
  CaseProfile profile;
  std::vector<double> radii;
  std::vector<double> maximal_sup;  // sup_x |∫_{Y∖B(x,r)} Z dν|
  std::vector<double> lhs;          // maximal_sup · r^β / φ(r)
  double lhs_sup = 0.0;
  OperatorNormEstimate op_norm;
  double safety_factor = 10.0;
  bool satisfied = false;
  std::string verdict;              // "satisfied" | "violation candidate"
  GrowthFit fit;
  SphereConditionReport sphere;
  std::vector<double> plateau_radii;  // r >= e^{-1/s3}, reported without a bound
  std::vector<double> plateau_sup;
};

/// Radii 2·mesh·k below e^{-1/s3} for k = 1, 2, 3, 4, 6, 8, 12, ... so that
/// r/2 stays a multiple of the mesh size.
std::vector<double> default_necessity_grid(const DiscreteSpace& space, double s3);

/// Throws std::invalid_argument for radii outside (0, e^{-1/s3}) and
/// HypothesisError when the sphere condition fails on ρ = r/2.
NecessityReport necessity_experiment(const DiscreteSpace& space, const KernelSpec& z,
                                     const CaseProfile& c, std::span<const double> r_grid,
                                     const NecessityOptions& opt = {});

}  // namespace ak
