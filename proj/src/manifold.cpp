#include "ak/manifold.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "ak/holder.hpp"
#include "ak/parallel.hpp"

namespace ak {

namespace {

constexpr double kPi = std::numbers::pi;

Mat projector_from(const Mat& j) {
  return j * (j.transpose() * j).inverse() * j.transpose();
}

// Moves (c, s) by a few ulps in one coordinate and re-solves the other so that
// c² + s² is as close to r² as double precision allows.
std::pair<double, double> snap_to_circle(double c, double s, double r) {
  const long double target = static_cast<long double>(r) * r;
  std::pair<double, double> best{c, s};
  long double gap = std::abs(static_cast<long double>(c) * c + static_cast<long double>(s) * s - target);
  auto consider = [&](double u, double v) {
    const long double g = std::abs(static_cast<long double>(u) * u + static_cast<long double>(v) * v - target);
    if (g < gap) {
      gap = g;
      best = {u, v};
    }
  };
  auto walk = [](double v, int k) {
    const double dir = k > 0 ? std::numeric_limits<double>::infinity()
                             : -std::numeric_limits<double>::infinity();
    for (int i = 0; i < std::abs(k); ++i) v = std::nextafter(v, dir);
    return v;
  };
  for (int a = -16; a <= 16; ++a) {
    const double cu = walk(c, a);
    const long double rest = target - static_cast<long double>(cu) * cu;
    if (rest >= 0.0L) {
      const double sv = static_cast<double>(std::copysign(std::sqrt(rest), static_cast<long double>(s)));
      for (int b = -1; b <= 1; ++b) consider(cu, walk(sv, b));
    }
    const double su = walk(s, a);
    const long double rest2 = target - static_cast<long double>(su) * su;
    if (rest2 >= 0.0L) {
      const double cv = static_cast<double>(std::copysign(std::sqrt(rest2), static_cast<long double>(c)));
      for (int b = -1; b <= 1; ++b) consider(walk(cv, b), su);
    }
  }
  return best;
}

double potential(const GradKernelSpec& k, const Vec& x, const std::vector<QuadNode>& rule,
                 const std::function<double(const Vec&)>& mu) {
  double acc = 0.0;
  for (const auto& q : rule) {
    if ((q.point - x).norm() > 0.0) acc += q.weight * k.kernel(x, q.point) * mu(q.point);
  }
  return acc;
}

// Tangential gradient of the potential at node i from chart central differences.
Vec potential_gradient(const ParametrizedManifold& man, const GradKernelSpec& k, std::size_t i,
                       const std::vector<QuadNode>& rule,
                       const std::function<double(const Vec&)>& mu) {
  const Chart& chart = man.charts[man.node_chart[i]];
  const Vec& p = man.node_params[i];
  const double h = man.fd_step;
  Vec d(man.dim);
  for (std::size_t c = 0; c < man.dim; ++c) {
    Vec plus = p, minus = p;
    plus[c] += h;
    minus[c] -= h;
    d[c] = (potential(k, chart.embed(plus), rule, mu) - potential(k, chart.embed(minus), rule, mu)) /
           (2.0 * h);
  }
  const Mat j = chart.jacobian(p);
  return j * (j.transpose() * j).ldlt().solve(d);
}

}  // namespace

double ParametrizedManifold::area() const {
  double a = 0.0;
  for (double w : weights) a += w;
  return a;
}

DiscreteSpace ParametrizedManifold::as_space() const {
  std::vector<double> coords;
  coords.reserve(points.size() * ambient);
  for (const auto& p : points) {
    for (Eigen::Index c = 0; c < p.size(); ++c) coords.push_back(p[c]);
  }
  std::vector<Index> all(points.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return DiscreteSpace::from_coordinates(ambient, std::move(coords), weights, all, all);
}

std::vector<QuadNode> ParametrizedManifold::nodes() const {
  std::vector<QuadNode> out;
  out.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out.push_back({points[i], weights[i]});
  return out;
}

ParametrizedManifold build_circle(double radius, std::size_t n, std::size_t refine) {
  if (!(radius > 0.0)) throw std::invalid_argument("circle radius must be > 0");
  if (n < 8) throw std::invalid_argument("circle needs at least 8 nodes");
  if (refine == 0) throw std::invalid_argument("refine must be >= 1");
  ParametrizedManifold man;
  man.dim = 1;
  man.ambient = 2;
  man.charts.push_back({[radius](const Vec& t) {
                          Vec x(2);
                          x << radius * std::cos(t[0]), radius * std::sin(t[0]);
                          return x;
                        },
                        [radius](const Vec& t) {
                          Mat j(2, 1);
                          j << -radius * std::sin(t[0]), radius * std::cos(t[0]);
                          return j;
                        }});
  const double w = 2.0 * kPi * radius / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double theta = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(n);
    const auto [c, s] = snap_to_circle(radius * std::cos(theta), radius * std::sin(theta), radius);
    Vec p(1), x(2), nrm(2);
    p << theta;
    x << c, s;
    nrm << std::cos(theta), std::sin(theta);
    man.node_chart.push_back(0);
    man.node_params.push_back(p);
    man.points.push_back(x);
    man.weights.push_back(w);
    man.normals.push_back(nrm);
    man.projectors.push_back(projector_from(man.charts[0].jacobian(p)));
  }
  const std::size_t m = refine * n;
  const double dt = 2.0 * kPi / static_cast<double>(m);
  man.fd_step = 2.0 * dt;
  man.potential_rule = [radius, m, dt, params = man.node_params](std::size_t i) {
    std::vector<QuadNode> rule(m);
    const double wq = radius * dt;
    for (std::size_t j = 0; j < m; ++j) {
      const double t = params[i][0] + (static_cast<double>(j) + 0.5) * dt;
      Vec y(2);
      y << radius * std::cos(t), radius * std::sin(t);
      rule[j] = {y, wq};
    }
    return rule;
  };
  return man;
}

ParametrizedManifold build_sphere(double radius, std::size_t n) {
  if (!(radius > 0.0)) throw std::invalid_argument("sphere radius must be > 0");
  if (n < 8) throw std::invalid_argument("sphere needs at least 8 nodes");
  ParametrizedManifold man;
  man.dim = 2;
  man.ambient = 3;
  const double golden = kPi * (3.0 - std::sqrt(5.0));
  const double w = 4.0 * kPi * radius * radius / static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double z = 1.0 - (2.0 * static_cast<double>(k) + 1.0) / static_cast<double>(n);
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = golden * static_cast<double>(k);
    Vec hat(3);
    hat << rho * std::cos(phi), rho * std::sin(phi), z;
    // Orthonormal tangent basis at hat.
    Vec ref = std::abs(hat[2]) < 0.9 ? Vec::Unit(3, 2) : Vec::Unit(3, 0);
    Eigen::Vector3d h3 = hat, r3 = ref;
    Eigen::Vector3d e1 = r3.cross(h3).normalized();
    Eigen::Vector3d e2 = h3.cross(e1);
    Mat basis(3, 2);
    basis.col(0) = e1;
    basis.col(1) = e2;
    man.charts.push_back({[radius, hat, basis](const Vec& u) -> Vec {
                            const Vec v = hat + basis * u;
                            return radius * v / v.norm();
                          },
                          [radius, hat, basis](const Vec& u) -> Mat {
                            const Vec v = hat + basis * u;
                            const double len = v.norm();
                            const Vec vh = v / len;
                            const Mat proj = Mat::Identity(3, 3) - vh * vh.transpose();
                            return radius * proj * basis / len;
                          }});
    const Vec p = Vec::Zero(2);
    man.node_chart.push_back(k);
    man.node_params.push_back(p);
    man.points.push_back(radius * hat);
    man.weights.push_back(w);
    man.normals.push_back(hat);
    man.projectors.push_back(projector_from(man.charts.back().jacobian(p)));
  }
  man.fd_step = 0.5 * std::sqrt(4.0 * kPi / static_cast<double>(n));
  return man;
}

Vec tangential_gradient(const ParametrizedManifold& man, const AmbientField& f, std::size_t node) {
  if (node >= man.size() || man.node_chart[node] >= man.charts.size()) {
    throw std::out_of_range("node " + std::to_string(node) + " has no chart");
  }
  if (f.gradient) return man.projectors[node] * f.gradient(man.points[node]);
  if (!f.value) throw std::invalid_argument("field has neither a value nor a gradient");
  const Chart& chart = man.charts[man.node_chart[node]];
  const Vec& p = man.node_params[node];
  const double h = man.fd_step;
  Vec d(man.dim);
  for (std::size_t c = 0; c < man.dim; ++c) {
    Vec plus = p, minus = p;
    plus[c] += h;
    minus[c] -= h;
    d[c] = (f.value(chart.embed(plus)) - f.value(chart.embed(minus))) / (2.0 * h);
  }
  const Mat j = chart.jacobian(p);
  return j * (j.transpose() * j).ldlt().solve(d);
}

GradKernelSpec single_layer_log() {
  GradKernelSpec k;
  k.name = "single_layer_log";
  k.kernel = [](const Vec& x, const Vec& y) { return std::log((x - y).norm()); };
  k.grad_x = [](const Vec& x, const Vec& y) -> Vec { return (x - y) / (x - y).squaredNorm(); };
  k.s1 = 0.0;
  k.t1 = 1.0;
  k.t2 = 2.0;
  k.t3 = 1.0;
  return k;
}

GradKernelSpec double_layer_circle_grad(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  GradKernelSpec k;
  k.name = "double_layer_circle_grad";
  k.kernel = [radius](const Vec& x, const Vec& y) {
    return (y - x).dot(y / radius) / (2.0 * kPi * (x - y).squaredNorm());
  };
  k.grad_x = [radius](const Vec& x, const Vec& y) -> Vec {
    const Vec diff = y - x;
    const double d2 = diff.squaredNorm();
    const Vec nu = y / radius;
    return (-nu * d2 + 2.0 * diff.dot(nu) * diff) / (2.0 * kPi * d2 * d2);
  };
  k.s1 = 1.0;
  k.t1 = 1.0;
  k.t2 = 2.0;
  k.t3 = 1.0;
  return k;
}

GradKernelSpec power_grad(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("power kernel exponent must be > 0");
  GradKernelSpec k;
  k.name = "power_grad(" + std::to_string(s) + ")";
  k.kernel = [s](const Vec& x, const Vec& y) { return std::pow((x - y).norm(), -s); };
  k.grad_x = [s](const Vec& x, const Vec& y) -> Vec {
    const Vec diff = x - y;
    return -s * std::pow(diff.norm(), -s - 2.0) * diff;
  };
  k.s1 = s;
  k.t1 = s + 1.0;
  k.t2 = s + 2.0;
  k.t3 = 1.0;
  return k;
}

GradKernelSpec bumped_log_grad(double amplitude, Vec shift, double width) {
  if (!(width > 0.0)) throw std::invalid_argument("bump width must be > 0");
  GradKernelSpec k = single_layer_log();
  k.name = "bumped_log_grad";
  const double s2 = width * width;
  k.kernel = [amplitude, shift, s2](const Vec& x, const Vec& y) {
    const Vec u = x - y - shift;
    return std::log((x - y).norm()) + amplitude * std::exp(-u.squaredNorm() / s2);
  };
  k.grad_x = [amplitude, shift, s2](const Vec& x, const Vec& y) -> Vec {
    const Vec diff = x - y;
    const Vec u = diff - shift;
    return diff / diff.squaredNorm() - amplitude * (2.0 / s2) * std::exp(-u.squaredNorm() / s2) * u;
  };
  return k;
}

GradientFormulaReport verify_gradient_formula(const ParametrizedManifold& man,
                                              const GradKernelSpec& k,
                                              const std::function<double(const Vec&)>& mu,
                                              double beta) {
  if (!k.kernel || !k.grad_x) throw std::invalid_argument("kernel needs a gradient evaluator");
  if (!mu) throw std::invalid_argument("density is missing");
  const std::size_t n = man.size();
  GradientFormulaReport rep;
  rep.lhs.resize(n);
  rep.rhs.resize(n);
  rep.residual.assign(n, 0.0);
  std::vector<double> first_norm(n, 0.0);
  const std::function<double(const Vec&)> one = [](const Vec&) { return 1.0; };

  parallel_for(n, [&](std::size_t i) {
    const auto rule = man.potential_rule ? man.potential_rule(i) : man.nodes();
    const Vec lhs = potential_gradient(man, k, i, rule, mu);
    const Vec& x = man.points[i];
    const double mx = mu(x);
    Vec first = Vec::Zero(man.ambient);
    for (std::size_t j = 0; j < n; ++j) {
      const Vec& y = man.points[j];
      if ((y - x).norm() > 0.0) first += man.weights[j] * (mu(y) - mx) * k.grad_x(x, y);
    }
    first = man.projectors[i] * first;
    const Vec second = mx * potential_gradient(man, k, i, rule, one);
    rep.lhs[i] = lhs;
    rep.rhs[i] = first + second;
    rep.residual[i] = (lhs - rep.rhs[i]).norm();
    first_norm[i] = first.norm();
  });
  for (std::size_t i = 0; i < n; ++i) {
    rep.max_residual = std::max(rep.max_residual, rep.residual[i]);
    rep.first_term_max = std::max(rep.first_term_max, first_norm[i]);
  }
  const DiscreteSpace space = man.as_space();
  const auto dom = space.union_indices();
  const auto f = SampledFunction::from(space, dom, [&](Index i) { return mu(man.points[i]); });
  rep.mu_seminorm = holder_seminorm(f, Modulus::power(beta), space).value;
  return rep;
}

ManifoldNecessityReport manifold_necessity(const ParametrizedManifold& man, const GradKernelSpec& k,
                                           double beta, std::span<const double> r_grid,
                                           const ManifoldNecessityOptions& opt) {
  if (!k.grad_x) throw std::invalid_argument("kernel needs a gradient evaluator");
  const double ups = static_cast<double>(man.ambient) - 1.0;
  if (opt.strict_t1 && std::abs(k.t1 - ups) > 1e-12) {
    throw std::invalid_argument("violated t1 = n-1");
  }
  if (!(k.t2 - beta > ups)) throw std::invalid_argument("violated t2 - beta > n-1");
  if (!(k.t2 <= ups + k.t3)) throw std::invalid_argument("violated t2 <= n-1 + t3");

  ManifoldNecessityReport rep;
  rep.profile = case_select(ups, beta, k.t2, k.t3);
  const DiscreteSpace space = man.as_space();
  rep.satisfied = true;
  for (std::size_t c = 0; c < man.ambient; ++c) {
    KernelSpec z = custom(
        k.name + "[" + std::to_string(c) + "]",
        [&man, &k, c](const DiscreteSpace&, Index x, Index y) {
          const Vec g = man.projectors[x] * k.grad_x(man.points[x], man.points[y]);
          return Complex(g[static_cast<Eigen::Index>(c)]);
        },
        k.t1, k.t2, k.t3);
    rep.components.push_back(necessity_experiment(space, z, rep.profile, r_grid, opt.necessity));
    rep.satisfied = rep.satisfied && rep.components.back().satisfied;
  }
  return rep;
}

}  // namespace ak
