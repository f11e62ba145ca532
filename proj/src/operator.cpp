#include "ak/operator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "ak/parallel.hpp"

namespace ak {

namespace {

void require_on_union(const DiscreteSpace& space, const SampledFunction& g) {
  if (g.space_size() != space.size()) {
    throw std::invalid_argument("test function belongs to a different space");
  }
  for (Index i : space.union_indices()) {
    if (!g.defined_at(i)) {
      throw std::invalid_argument("g is missing a value at point " + std::to_string(i) +
                                  " of X ∪ Y");
    }
  }
}

// Serial pair scan; callers parallelize over family members instead.
double seminorm_serial(const std::vector<Complex>& vals, const ModulusTable& table) {
  const std::size_t n = vals.size();
  double best = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = a + 1; b < n; ++b) {
      const double diff = std::abs(vals[a] - vals[b]);
      const double w = table.at(a, b);
      const double q = w > 0.0 ? diff / w
                               : (diff > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
      best = std::max(best, q);
    }
  }
  return best;
}

Complex q_at(const DiscreteSpace& space, const KernelSpec& z, const SampledFunction& g, Index x) {
  const Complex gx = g.at(x);
  Complex acc(0.0);
  for (Index y : space.y_indices()) {
    if (space.distance(x, y) > 0.0) acc += space.weight(y) * z.evaluate(space, x, y) * (gx - g.at(y));
  }
  return acc;
}

std::string fmt(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace

CaseProfile case_select(double upsilon, double beta, double s2, double s3) {
  CaseProfile c;
  c.tag = classify_case(beta, upsilon, s2, s3);
  c.upsilon = upsilon;
  c.beta = beta;
  c.s2 = s2;
  c.s3 = s3;
  c.source = Modulus::power(beta);
  c.target = target_modulus_for_case(beta, upsilon, s2, s3);
  switch (c.tag) {
    case HolderCase::b: {
      const double gamma = upsilon + s3 + beta - s2;
      c.phi = Modulus::max_of(Modulus::power(beta), Modulus::power(gamma));
      c.target_exponent = std::min(beta, gamma);
      c.no_decrease = s2 <= upsilon + s3;
      break;
    }
    case HolderCase::bb:
      c.phi = c.target;
      c.target_exponent = std::numeric_limits<double>::quiet_NaN();
      c.no_decrease = s3 > beta;
      break;
    case HolderCase::bbb:
      c.phi = Modulus::max_of(Modulus::power(beta), Modulus::power(s3));
      c.target_exponent = std::min(beta, s3);
      c.no_decrease = s3 >= beta;
      break;
  }
  return c;
}

SampledFunction apply_q(const DiscreteSpace& space, const KernelSpec& z, const SampledFunction& g) {
  require_on_union(space, g);
  const auto xs = space.x_indices();
  std::vector<Complex> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t a) { out[a] = q_at(space, z, g, xs[a]); });
  return SampledFunction(space.size(), {xs.begin(), xs.end()}, std::move(out));
}

SampledFunction apply_q(const DiscreteSpace& space, const KernelTable& z, const SampledFunction& g) {
  require_on_union(space, g);
  const auto xs = space.x_indices();
  const auto ys = space.y_indices();
  if (z.rows() != xs.size() || z.cols() != ys.size()) {
    throw std::invalid_argument("kernel table does not match the space");
  }
  std::vector<Complex> out(xs.size());
  parallel_for(xs.size(), [&](std::size_t a) {
    const Complex gx = g.at(xs[a]);
    Complex acc(0.0);
    for (std::size_t b = 0; b < ys.size(); ++b) {
      if (space.distance(xs[a], ys[b]) > 0.0) {
        acc += space.weight(ys[b]) * z.at(a, b) * (gx - g.at(ys[b]));
      }
    }
    out[a] = acc;
  });
  return SampledFunction(space.size(), {xs.begin(), xs.end()}, std::move(out));
}

TestFunctionFamily bump_family(const DiscreteSpace& space, double beta) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in (0,1]");
  TestFunctionFamily fam;
  fam.beta = beta;
  const auto dom = space.union_indices();
  for (Index xp : space.x_indices()) {
    fam.members.push_back(
        {"bump(" + std::to_string(xp) + ")",
         SampledFunction::from(space, dom,
                               [&](Index y) { return std::pow(space.distance(xp, y), beta); }),
         1.0});
  }
  return fam;
}

TestFunctionFamily random_holder_family(const DiscreteSpace& space, double beta,
                                        std::size_t count, std::uint64_t seed,
                                        std::size_t anchors) {
  if (!(beta > 0.0 && beta <= 1.0)) throw std::invalid_argument("beta must lie in (0,1]");
  if (anchors == 0) throw std::invalid_argument("random family needs at least one anchor");
  TestFunctionFamily fam;
  fam.beta = beta;
  const auto dom = space.union_indices();
  if (dom.empty()) return fam;
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, dom.size() - 1);
  std::uniform_real_distribution<double> offset(0.0, 1.0);
  for (std::size_t m = 0; m < count; ++m) {
    std::vector<Index> p(anchors);
    std::vector<double> v(anchors);
    for (std::size_t k = 0; k < anchors; ++k) {
      p[k] = dom[pick(rng)];
      v[k] = offset(rng);
    }
    auto g = SampledFunction::from(space, dom, [&](Index y) {
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < anchors; ++k) {
        best = std::min(best, v[k] + std::pow(space.distance(y, p[k]), beta));
      }
      return best;
    });
    fam.members.push_back({"random(" + std::to_string(m) + ")", std::move(g), 1.0});
  }
  return fam;
}

TestFunctionFamily default_family(const DiscreteSpace& space, double beta, std::uint64_t seed) {
  auto fam = bump_family(space, beta);
  auto rnd = random_holder_family(space, beta, 32, seed);
  for (auto& m : rnd.members) fam.members.push_back(std::move(m));
  return fam;
}

OperatorNormEstimate operator_norm_lower_bound(const DiscreteSpace& space, const KernelSpec& z,
                                               const CaseProfile& c,
                                               const TestFunctionFamily& family) {
  for (const auto& m : family.members) require_on_union(space, m.g);
  const auto dom = space.union_indices();
  const auto xs = space.x_indices();
  const auto ys = space.y_indices();
  const KernelTable table(space, z);
  const ModulusTable source(space, dom, Modulus::power(family.beta));
  const ModulusTable target(space, xs, c.target);

  struct Row {
    bool skipped = true;
    double value = 0.0;
    double source_ratio = 0.0;
  };
  std::vector<Row> rows(family.members.size());
  parallel_for(family.members.size(), [&](std::size_t m) {
    const auto& member = family.members[m];
    std::vector<Complex> gv;
    gv.reserve(dom.size());
    for (Index i : dom) gv.push_back(member.g.at(i));
    const double src = seminorm_serial(gv, source);
    Row row;
    row.source_ratio = src / member.certified;
    if (src > 0.0) {
      std::vector<Complex> qv(xs.size());
      double sup = 0.0;
      for (std::size_t a = 0; a < xs.size(); ++a) {
        const Complex gx = member.g.at(xs[a]);
        Complex acc(0.0);
        for (std::size_t b = 0; b < ys.size(); ++b) {
          if (space.distance(xs[a], ys[b]) > 0.0) {
            acc += space.weight(ys[b]) * table.at(a, b) * (gx - member.g.at(ys[b]));
          }
        }
        qv[a] = acc;
        sup = std::max(sup, std::abs(acc));
      }
      row.skipped = false;
      row.value = (sup + seminorm_serial(qv, target)) / member.certified;
    }
    rows[m] = row;
  });

  OperatorNormEstimate est;
  for (std::size_t m = 0; m < rows.size(); ++m) {
    est.worst_source_seminorm = std::max(est.worst_source_seminorm, rows[m].source_ratio);
    if (rows[m].skipped) {
      ++est.skipped;
      continue;
    }
    ++est.used;
    if (est.used == 1 || rows[m].value > est.value) {
      est.value = rows[m].value;
      est.argmax = family.members[m].name;
    }
  }
  if (est.used == 0) throw std::invalid_argument("degenerate family");
  return est;
}

Decomposition split_difference(const DiscreteSpace& space, const KernelSpec& z,
                               const SampledFunction& g, Index x1, Index x2) {
  if (!space.in_x(x1) || !space.in_x(x2)) throw std::out_of_range("decomposition points must lie in X");
  require_on_union(space, g);
  Decomposition dec;
  dec.x1 = x1;
  dec.x2 = x2;
  dec.separation = space.distance(x1, x2);
  if (!(dec.separation > 0.0)) throw std::invalid_argument("decomposition needs d(x1,x2) > 0");
  const double radius = 2.0 * dec.separation;
  const Complex g1 = g.at(x1), g2 = g.at(x2);
  double mass = 0.0;
  for (Index y : space.y_indices()) {
    const double w = space.weight(y);
    const double d1 = space.distance(x1, y);
    const double d2 = space.distance(x2, y);
    const Complex gy = g.at(y);
    if (d1 < radius) {
      if (d1 > 0.0) {
        const Complex t = w * z.evaluate(space, x1, y) * (g1 - gy);
        dec.i1 += t;
        mass += std::abs(t);
      }
      if (d2 > 0.0) {
        const Complex t = w * z.evaluate(space, x2, y) * (g2 - gy);
        dec.i2 += t;
        mass += std::abs(t);
      }
    } else {
      const Complex z1 = z.evaluate(space, x1, y);
      const Complex z2 = z.evaluate(space, x2, y);
      const Complex t3 = w * z1 * ((g1 - gy) - (g2 - gy));
      const Complex t4 = w * (z1 - z2) * (g2 - gy);
      dec.i3 += t3;
      dec.i4 += t4;
      mass += std::abs(t3) + std::abs(t4);
    }
  }
  const Complex q1 = q_at(space, z, g, x1);
  const Complex q2 = q_at(space, z, g, x2);
  dec.difference = q1 - q2;
  const Complex recombined = dec.i1 - dec.i2 + dec.i3 + dec.i4;
  double scale = std::abs(q1) + std::abs(q2);
  if (!(scale > 0.0)) scale = mass;
  const double err = std::abs(recombined - dec.difference);
  dec.residual = scale > 0.0 ? err / scale : err;
  return dec;
}

Index nearest_at_distance(const DiscreteSpace& space, Index x, double rho) {
  Index best = x;
  double gap = std::numeric_limits<double>::infinity();
  for (Index c : space.x_indices()) {
    const double d = space.distance(x, c);
    if (c == x || d <= 0.0) continue;
    const double e = std::abs(d - rho);
    if (e < gap) {
      gap = e;
      best = c;
    }
  }
  if (best == x) throw std::invalid_argument("no other point of X at positive distance");
  return best;
}

namespace {

std::vector<double> default_grid(const DiscreteSpace& space) {
  if (!(space.mesh_size() > 0.0)) {
    throw std::invalid_argument("space has no positive mesh size; supply an r grid");
  }
  return dyadic_grid(2.0 * space.mesh_size(), space.diameter());
}

}  // namespace

SufficiencyReport sufficiency_experiment(const DiscreteSpace& space, const KernelSpec& z,
                                         const CaseProfile& c, const SufficiencyOptions& opt) {
  SufficiencyReport rep;
  rep.profile = c;
  const std::vector<double> grid = opt.r_grid.empty() ? default_grid(space) : opt.r_grid;

  if (c.tag == HolderCase::bb) {
    rep.hypothesis = "strongly upper Ahlfors regular";
    const double h = space.mesh_size();
    std::vector<std::pair<double, double>> pairs;
    for (double r : grid) pairs.emplace_back(r, r + h);
    rep.regularity = estimate_strong_upper_ahlfors(space, c.upsilon, pairs);
  } else {
    rep.hypothesis = "upper Ahlfors regular";
    rep.regularity = estimate_upper_ahlfors(space, c.upsilon, grid);
  }
  if (rep.regularity.radii.size() >= 2) {
    rep.regularity_fit = fit_growth(rep.regularity.radii, rep.regularity.sup_ratio);
  }
  rep.hypotheses_met = rep.regularity.radii.size() >= 2 &&
                       rep.regularity_fit.law == GrowthLaw::bounded;
  rep.ksharp = ksharp_norm(space, z, grid);

  if (!rep.hypotheses_met) {
    rep.verdict = "hypotheses not met";
    return rep;
  }
  if (!rep.ksharp.member) {
    rep.verdict = "K# membership fails";
    return rep;
  }
  const auto family = opt.family ? *opt.family : default_family(space, c.beta, opt.seed);
  rep.op_norm = operator_norm_lower_bound(space, z, c, family);
  if (rep.ksharp.value > 0.0) {
    rep.c_suff = rep.op_norm.value / rep.ksharp.value;
  } else {
    rep.c_suff = rep.op_norm.value > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  rep.consistent = rep.c_suff <= opt.max_c_suff;
  rep.verdict = rep.consistent ? "consistent" : "inconsistent";
  return rep;
}

std::vector<double> default_necessity_grid(const DiscreteSpace& space, double s3) {
  if (!(space.mesh_size() > 0.0)) {
    throw std::invalid_argument("space has no positive mesh size; supply an r grid");
  }
  const double h = space.mesh_size();
  const double cap = std::exp(-1.0 / s3);
  std::vector<double> out;
  for (double k = 1.0; 2.0 * h * k < cap; k *= 2.0) {
    out.push_back(2.0 * h * k);
    if (k >= 2.0 && 2.0 * h * 1.5 * k < cap) out.push_back(2.0 * h * 1.5 * k);
  }
  return out;
}

NecessityReport necessity_experiment(const DiscreteSpace& space, const KernelSpec& z,
                                     const CaseProfile& c, std::span<const double> r_grid,
                                     const NecessityOptions& opt) {
  const double r_cap = std::exp(-1.0 / c.s3);
  if (r_grid.empty()) throw std::invalid_argument("necessity: empty r grid");
  for (double r : r_grid) {
    if (!(r > 0.0 && r < r_cap)) {
      throw std::invalid_argument("necessity: radius " + fmt(r) + " outside (0, e^{-1/s3}) = (0, " +
                                  fmt(r_cap) + ")");
    }
  }
  NecessityReport rep;
  rep.profile = c;
  rep.safety_factor = opt.safety_factor;

  std::vector<double> rho;
  for (double r : r_grid) rho.push_back(r / 2.0);
  const double tol = opt.sphere_tolerance ? *opt.sphere_tolerance : default_sphere_tolerance(space);
  rep.sphere = check_sphere_condition(space, rho, tol);
  if (!rep.sphere.all_passed) {
    for (std::size_t j = 0; j < rho.size(); ++j) {
      if (!rep.sphere.passed[j]) {
        throw HypothesisError("sphere condition fails at rho = " + fmt(rho[j]) +
                              " with relative tolerance " + fmt(tol));
      }
    }
  }

  const auto prof = maximal_function(space, z, r_grid);
  rep.radii = prof.radii;
  rep.maximal_sup = prof.sup_per_r;
  for (std::size_t j = 0; j < rep.radii.size(); ++j) {
    const double r = rep.radii[j];
    rep.lhs.push_back(rep.maximal_sup[j] * std::pow(r, c.beta) / c.phi(r));
    rep.lhs_sup = std::max(rep.lhs_sup, rep.lhs.back());
  }
  rep.fit = fit_growth(rep.radii, rep.lhs);

  const auto family = opt.family ? *opt.family : default_family(space, c.beta, opt.seed);
  rep.op_norm = operator_norm_lower_bound(space, z, c, family);
  rep.satisfied = rep.lhs_sup <= rep.safety_factor * rep.op_norm.value;
  rep.verdict = rep.satisfied ? "satisfied" : "violation candidate";

  rep.plateau_radii = dyadic_grid(r_cap, space.diameter());
  if (!rep.plateau_radii.empty()) {
    rep.plateau_sup = maximal_function(space, z, rep.plateau_radii).sup_per_r;
  }
  return rep;
}

}  // namespace ak
