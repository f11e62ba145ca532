#include "ak/io.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace ak::io {

namespace {

json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return nullptr;
  return v > 0 ? "inf" : "-inf";
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::vector<Index> index_list(const json& j, const char* key) {
  if (!j.contains(key)) throw std::invalid_argument(std::string("space file: missing \"") + key + "\"");
  return j.at(key).get<std::vector<Index>>();
}

}  // namespace

DiscreteSpace space_from_json(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("space file: expected a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (key != "coords" && key != "dist_matrix" && key != "weights" && key != "x" && key != "y") {
      throw std::invalid_argument("space file: unknown key \"" + key + "\"");
    }
  }
  if (j.contains("coords") == j.contains("dist_matrix")) {
    throw std::invalid_argument("space file: give exactly one of \"coords\" and \"dist_matrix\"");
  }
  if (!j.contains("weights")) throw std::invalid_argument("space file: missing \"weights\"");
  auto weights = j.at("weights").get<std::vector<double>>();
  auto x = index_list(j, "x");
  auto y = index_list(j, "y");
  if (j.contains("coords")) {
    const auto rows = j.at("coords").get<std::vector<std::vector<double>>>();
    if (rows.empty()) throw std::invalid_argument("space file: \"coords\" is empty");
    const std::size_t dim = rows.front().size();
    std::vector<double> flat;
    for (const auto& r : rows) {
      if (r.size() != dim) throw std::invalid_argument("space file: ragged \"coords\"");
      flat.insert(flat.end(), r.begin(), r.end());
    }
    return DiscreteSpace::from_coordinates(dim, std::move(flat), std::move(weights), std::move(x),
                                           std::move(y));
  }
  const auto rows = j.at("dist_matrix").get<std::vector<std::vector<double>>>();
  std::vector<double> flat;
  for (const auto& r : rows) {
    if (r.size() != rows.size()) throw std::invalid_argument("space file: \"dist_matrix\" is not square");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return DiscreteSpace::from_distance_matrix(std::move(flat), std::move(weights), std::move(x),
                                             std::move(y));
}

DiscreteSpace load_space(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open space file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("space file " + path + ": " + e.what());
  }
  return space_from_json(j);
}

Preset make_preset(const std::string& name, double radius, std::size_t n, std::size_t level,
                   double distance) {
  if (name == "circle") {
    auto man = build_circle(radius, n);
    Preset p{name, man.as_space(), std::move(man), 1.0};
    return p;
  }
  if (name == "sphere") {
    auto man = build_sphere(radius, n);
    Preset p{name, man.as_space(), std::move(man), 2.0};
    return p;
  }
  if (name == "cantor") {
    if (level == 0 || level > 20) throw std::invalid_argument("cantor level must be in [1, 20]");
    const std::size_t count = std::size_t{1} << level;
    const double cell = std::pow(3.0, -static_cast<double>(level));
    std::vector<double> coords(count);
    for (std::size_t k = 0; k < count; ++k) {
      double left = 0.0, scale = 1.0;
      for (std::size_t b = level; b-- > 0;) {
        scale /= 3.0;
        if ((k >> b) & 1U) left += 2.0 * scale;
      }
      coords[k] = left + cell / 2.0;
    }
    std::vector<double> w(count, 1.0 / static_cast<double>(count));
    std::vector<Index> all(count);
    for (std::size_t k = 0; k < count; ++k) all[k] = k;
    return {name, DiscreteSpace::from_coordinates(1, std::move(coords), std::move(w), all, all),
            std::nullopt, std::log(2.0) / std::log(3.0)};
  }
  if (name == "two_point") {
    if (!(distance > 0.0)) throw std::invalid_argument("two_point distance must be > 0");
    return {name,
            DiscreteSpace::from_distance_matrix({0.0, distance, distance, 0.0}, {1.0, 1.0}, {0, 1},
                                                {0, 1}),
            std::nullopt, 1.0};
  }
  throw std::invalid_argument("unknown preset \"" + name + "\" (circle, sphere, cantor, two_point)");
}

json to_json(const GrowthFit& f) {
  return {{"law", to_string(f.law)},
          {"power_exponent", number(f.power_exponent)},
          {"power_r_squared", number(f.power_r_squared)},
          {"log_coefficient", number(f.log_coefficient)},
          {"log_intercept", number(f.log_intercept)},
          {"log_r_squared", number(f.log_r_squared)},
          {"points", f.points}};
}

json to_json(const LinearFit& f) {
  return {{"slope", number(f.slope)},
          {"intercept", number(f.intercept)},
          {"r_squared", number(f.r_squared)},
          {"points", f.points}};
}

json to_json(const RegularityReport& r, bool with_samples) {
  json j = {{"upsilon", number(r.upsilon)},
            {"c_upper", number(r.c_upper)},
            {"c_strong", r.c_strong ? number(*r.c_strong) : json("not evaluated")},
            {"r_range", json::array({number(r.r_min), number(r.r_max)})},
            {"clipped", r.clipped},
            {"radii", numbers(r.radii)},
            {"sup_ratio", numbers(r.sup_ratio)}};
  if (with_samples) {
    json s = json::array();
    for (const auto& x : r.samples) {
      s.push_back({{"x", x.x},
                   {"r_inner", number(x.r_inner)},
                   {"r_outer", number(x.r_outer)},
                   {"measure", number(x.measure)},
                   {"ratio", number(x.ratio)}});
    }
    j["samples"] = std::move(s);
  }
  return j;
}

json to_json(const SphereConditionReport& r) {
  json passed = json::array();
  for (bool b : r.passed) passed.push_back(b);
  return {{"tolerance", number(r.tolerance)},
          {"rho", numbers(r.rho)},
          {"passed", passed},
          {"a_estimate", number(r.a_estimate)},
          {"all_passed", r.all_passed},
          {"worst_gap", numbers(r.worst_gap)}};
}

json to_json(const MaximalFunctionProfile& p) {
  return {{"radii", numbers(p.radii)},
          {"sup_per_r", numbers(p.sup_per_r)},
          {"global_sup", number(p.global_sup)},
          {"fit", to_json(p.fit)}};
}

json to_json(const KSharpReport& r) {
  return {{"first", number(r.first)},
          {"second", number(r.second)},
          {"kernel_norm", number(r.first + r.second)},
          {"maximal_sup", number(r.maximal_sup)},
          {"ksharp_norm", number(r.value)},
          {"member", r.member},
          {"fit", to_json(r.fit)}};
}

json to_json(const CaseProfile& c) {
  return {{"case", to_string(c.tag)},
          {"upsilon", number(c.upsilon)},
          {"beta", number(c.beta)},
          {"s2", number(c.s2)},
          {"s3", number(c.s3)},
          {"target", c.target.describe()},
          {"phi", c.phi.describe()},
          {"target_exponent", number(c.target_exponent)},
          {"no_decrease", c.no_decrease}};
}

json to_json(const OperatorNormEstimate& e) {
  return {{"sampled_lower_bound", number(e.value)},
          {"argmax", e.argmax},
          {"used", e.used},
          {"skipped", e.skipped},
          {"worst_source_seminorm", number(e.worst_source_seminorm)}};
}

json to_json(const SufficiencyReport& r) {
  return {{"profile", to_json(r.profile)},
          {"hypothesis", r.hypothesis},
          {"hypotheses_met", r.hypotheses_met},
          {"regularity", to_json(r.regularity)},
          {"regularity_fit", to_json(r.regularity_fit)},
          {"ksharp", to_json(r.ksharp)},
          {"operator_norm", to_json(r.op_norm)},
          {"c_suff", number(r.c_suff)},
          {"consistent", r.consistent},
          {"verdict", r.verdict}};
}

json to_json(const NecessityReport& r) {
  return {{"profile", to_json(r.profile)},
          {"radii", numbers(r.radii)},
          {"maximal_sup", numbers(r.maximal_sup)},
          {"lhs", numbers(r.lhs)},
          {"lhs_sup", number(r.lhs_sup)},
          {"operator_norm", to_json(r.op_norm)},
          {"safety_factor", number(r.safety_factor)},
          {"satisfied", r.satisfied},
          {"verdict", r.verdict},
          {"fit", to_json(r.fit)},
          {"sphere_condition", to_json(r.sphere)},
          {"plateau_radii", numbers(r.plateau_radii)},
          {"plateau_sup", numbers(r.plateau_sup)}};
}

json to_json(const BoundsReport& r) {
  json j = {{"constant", r.name},
            {"s", number(r.s)},
            {"upsilon", number(r.upsilon)},
            {"measured", number(r.measured)},
            {"bound", r.bound ? number(*r.bound) : json(nullptr)},
            {"pass", r.pass},
            {"grid", numbers(r.grid)},
            {"per_grid", numbers(r.per_grid)},
            {"clipped", r.clipped},
            {"argmax_x", r.argmax_x}};
  if (r.name == "c_prime") j["ahlfors_constant"] = number(r.ahlfors_constant);
  if (r.log_fit) j["log_fit"] = to_json(*r.log_fit);
  return j;
}

json to_json(const GradientFormulaReport& r) {
  return {{"max_residual", number(r.max_residual)},
          {"first_term_max", number(r.first_term_max)},
          {"mu_seminorm", number(r.mu_seminorm)},
          {"residual", numbers(r.residual)}};
}

json to_json(const ManifoldNecessityReport& r) {
  json comps = json::array();
  for (const auto& c : r.components) comps.push_back(to_json(c));
  return {{"profile", to_json(r.profile)}, {"satisfied", r.satisfied}, {"components", comps}};
}

void write_csv(std::ostream& os, const RegularityReport& r) {
  os << std::setprecision(17) << "x,r_inner,r_outer,measure,ratio\n";
  for (const auto& s : r.samples) {
    os << s.x << ',' << s.r_inner << ',' << s.r_outer << ',' << s.measure << ',' << s.ratio << '\n';
  }
}

void write_csv(std::ostream& os, const MaximalFunctionProfile& p) {
  os << std::setprecision(17) << "x_index,r,re,im,abs\n";
  for (std::size_t a = 0; a < p.x.size(); ++a) {
    for (std::size_t j = 0; j < p.radii.size(); ++j) {
      const Complex v = p.value(a, j);
      os << p.x[a] << ',' << p.radii[j] << ',' << v.real() << ',' << v.imag() << ',' << std::abs(v)
         << '\n';
    }
  }
}

void write_csv(std::ostream& os, const NecessityReport& r) {
  os << std::setprecision(17) << "r,maximal_sup,lhs\n";
  for (std::size_t j = 0; j < r.radii.size(); ++j) {
    os << r.radii[j] << ',' << r.maximal_sup[j] << ',' << r.lhs[j] << '\n';
  }
}

}  // namespace ak::io
