#pragma once

// JSON space files, named presets, and JSON/CSV report serialization.

#include <json.hpp>
#include <optional>
#include <ostream>
#include <string>

#include "ak/bounds.hpp"
#include "ak/kernels.hpp"
#include "ak/manifold.hpp"
#include "ak/operator.hpp"
#include "ak/space.hpp"

namespace ak::io {

using json = nlohmann::ordered_json;

/// {"coords": [[...]], ...} or {"dist_matrix": [[...]], ...}, each with
/// "weights", "x", "y". Unknown keys are rejected.
DiscreteSpace space_from_json(const json& j);
DiscreteSpace load_space(const std::string& path);

struct Preset {
  std::string name;
  DiscreteSpace space;
  std::optional<ParametrizedManifold> manifold;
  double upsilon = 1.0;  // natural regularity exponent
};

/// circle(R, N), sphere(R, N), cantor(level), two_point(distance).
Preset make_preset(const std::string& name, double radius, std::size_t n, std::size_t level,
                   double distance);

json to_json(const GrowthFit& f);
json to_json(const LinearFit& f);
json to_json(const RegularityReport& r, bool with_samples = false);
json to_json(const SphereConditionReport& r);
json to_json(const MaximalFunctionProfile& p);
json to_json(const KSharpReport& r);
json to_json(const CaseProfile& c);
json to_json(const OperatorNormEstimate& e);
json to_json(const SufficiencyReport& r);
json to_json(const NecessityReport& r);
json to_json(const BoundsReport& r);
json to_json(const GradientFormulaReport& r);
json to_json(const ManifoldNecessityReport& r);

/// x,r_inner,r_outer,measure,ratio
void write_csv(std::ostream& os, const RegularityReport& r);
/// x_index,r,re,im,abs
void write_csv(std::ostream& os, const MaximalFunctionProfile& p);
/// r,maximal_sup,lhs
void write_csv(std::ostream& os, const NecessityReport& r);

}  // namespace ak::io
