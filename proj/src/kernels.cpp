#include "ak/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "ak/parallel.hpp"

namespace ak {

namespace {

void require_plane(const DiscreteSpace& space, const char* name) {
  if (!space.has_coordinates() || space.dimension() != 2) {
    throw std::invalid_argument(std::string(name) + " needs planar coordinates");
  }
}

}  // namespace

KernelSpec zero_kernel() {
  KernelSpec k;
  k.name = "zero";
  k.evaluate = [](const DiscreteSpace&, Index, Index) { return Complex(0.0); };
  k.s1 = 1.0;
  k.s2 = 2.0;
  k.s3 = 1.0;
  k.analytic_maximal = [](double) { return Complex(0.0); };
  return k;
}

KernelSpec riesz(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("riesz exponent must be > 0");
  KernelSpec k;
  k.name = "riesz(" + std::to_string(s) + ")";
  k.evaluate = [s](const DiscreteSpace& sp, Index x, Index y) {
    return Complex(std::pow(sp.distance(x, y), -s));
  };
  k.s1 = s;
  k.s2 = s + 1.0;
  k.s3 = 1.0;
  return k;
}

KernelSpec signed_riesz(double s) {
  if (!(s > 0.0)) throw std::invalid_argument("signed riesz exponent must be > 0");
  KernelSpec k;
  k.name = "signed_riesz(" + std::to_string(s) + ")";
  k.evaluate = [s](const DiscreteSpace& sp, Index x, Index y) {
    require_plane(sp, "signed_riesz");
    const auto px = sp.point(x);
    const auto py = sp.point(y);
    const double norm_x = std::hypot(px[0], px[1]);
    if (norm_x == 0.0) throw std::invalid_argument("signed_riesz undefined at the origin");
    const double cross = (py[0] - px[0]) * (-px[1]) + (py[1] - px[1]) * px[0];
    return Complex(cross / (norm_x * std::pow(sp.distance(x, y), s + 1.0)));
  };
  k.s1 = s;
  k.s2 = s + 1.0;
  k.s3 = 1.0;
  return k;
}

KernelSpec double_layer_circle(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  KernelSpec k;
  k.name = "double_layer_circle(" + std::to_string(radius) + ")";
  k.evaluate = [radius](const DiscreteSpace& sp, Index x, Index y) {
    require_plane(sp, "double_layer_circle");
    const auto px = sp.point(x);
    const auto py = sp.point(y);
    const long double dx = static_cast<long double>(py[0]) - px[0];
    const long double dy = static_cast<long double>(py[1]) - px[1];
    const long double num = (dx * py[0] + dy * py[1]) / radius;
    const long double den = 2.0L * std::numbers::pi_v<long double> * (dx * dx + dy * dy);
    return Complex(static_cast<double>(num / den));
  };
  k.s1 = 1.0;
  k.s2 = 2.0;
  k.s3 = 1.0;
  k.analytic_maximal = [radius](double r) {
    const double q = std::min(r / (2.0 * radius), 1.0);
    const double arc = 4.0 * radius * std::asin(q);
    return Complex((2.0 * std::numbers::pi * radius - arc) / (4.0 * std::numbers::pi * radius));
  };
  return k;
}

KernelSpec log_blowup(double upsilon) {
  KernelSpec k = riesz(upsilon);
  k.name = "log_blowup(" + std::to_string(upsilon) + ")";
  return k;
}

KernelSpec log_blowup_circle(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be > 0");
  KernelSpec k = log_blowup(1.0);
  k.name = "log_blowup_circle(" + std::to_string(radius) + ")";
  k.analytic_maximal = [radius](double r) {
    if (r >= 2.0 * radius) return Complex(0.0);
    return Complex(-2.0 * std::log(std::tan(std::asin(r / (2.0 * radius)) / 2.0)));
  };
  return k;
}

KernelSpec combine(Complex alpha, const KernelSpec& a, const KernelSpec& b) {
  if (a.s1 != b.s1 || a.s2 != b.s2 || a.s3 != b.s3) {
    throw std::invalid_argument("combine: kernels carry different exponents");
  }
  KernelSpec k;
  k.name = "combine(" + a.name + "," + b.name + ")";
  k.evaluate = [alpha, fa = a.evaluate, fb = b.evaluate](const DiscreteSpace& sp, Index x,
                                                        Index y) {
    return alpha * fa(sp, x, y) + fb(sp, x, y);
  };
  k.s1 = a.s1;
  k.s2 = a.s2;
  k.s3 = a.s3;
  if (a.analytic_maximal && b.analytic_maximal) {
    k.analytic_maximal = [alpha, ma = a.analytic_maximal, mb = b.analytic_maximal](double r) {
      return alpha * ma(r) + mb(r);
    };
  }
  return k;
}

KernelSpec custom(std::string name, std::function<Complex(const DiscreteSpace&, Index, Index)> fn,
                  double s1, double s2, double s3) {
  if (!fn) throw std::invalid_argument("custom kernel needs an evaluator");
  KernelSpec k;
  k.name = std::move(name);
  k.evaluate = std::move(fn);
  k.s1 = s1;
  k.s2 = s2;
  k.s3 = s3;
  return k;
}

KernelTable::KernelTable(const DiscreteSpace& space, const KernelSpec& k)
    : nx_(space.x_indices().size()), ny_(space.y_indices().size()), values_(nx_ * ny_) {
  const auto xs = space.x_indices();
  const auto ys = space.y_indices();
  parallel_for(nx_, [&](std::size_t a) {
    for (std::size_t b = 0; b < ny_; ++b) {
      if (space.distance(xs[a], ys[b]) > 0.0) values_[a * ny_ + b] = k.evaluate(space, xs[a], ys[b]);
    }
  });
}

double kernel_norm_first(const DiscreteSpace& space, const KernelSpec& k) {
  const auto xs = space.x_indices();
  const auto ys = space.y_indices();
  std::vector<double> rows(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t a) {
    double best = 0.0;
    for (Index y : ys) {
      const double d = space.distance(xs[a], y);
      if (d > 0.0) best = std::max(best, std::pow(d, k.s1) * std::abs(k.evaluate(space, xs[a], y)));
    }
    rows[a] = best;
  });
  double out = 0.0;
  for (double v : rows) out = std::max(out, v);
  return out;
}

double kernel_norm_second(const DiscreteSpace& space, const KernelSpec& k) {
  const auto xs = space.x_indices();
  const auto ys = space.y_indices();
  const KernelTable table(space, k);
  std::vector<double> rows(xs.size(), 0.0);
  parallel_for(xs.size(), [&](std::size_t a) {
    const Index x1 = xs[a];
    std::vector<double> dy(ys.size()), dy_s2(ys.size());
    for (std::size_t b = 0; b < ys.size(); ++b) {
      dy[b] = space.distance(x1, ys[b]);
      dy_s2[b] = std::pow(dy[b], k.s2);
    }
    double best = 0.0;
    for (std::size_t c = 0; c < xs.size(); ++c) {
      const double d12 = space.distance(x1, xs[c]);
      if (d12 <= 0.0) continue;
      const double scale = std::pow(d12, -k.s3);
      for (std::size_t b = 0; b < ys.size(); ++b) {
        if (dy[b] < 2.0 * d12) continue;
        const double q = dy_s2[b] * scale * std::abs(table.at(a, b) - table.at(c, b));
        best = std::max(best, q);
      }
    }
    rows[a] = best;
  });
  double out = 0.0;
  for (double v : rows) out = std::max(out, v);
  return out;
}

double kernel_norm(const DiscreteSpace& space, const KernelSpec& k) {
  return kernel_norm_first(space, k) + kernel_norm_second(space, k);
}

MaximalFunctionProfile maximal_function(const DiscreteSpace& space, const KernelSpec& k,
                                        std::span<const double> r_grid) {
  if (r_grid.empty()) throw std::invalid_argument("maximal_function: empty r grid");
  for (double r : r_grid) {
    if (!(r > 0.0)) throw std::invalid_argument("maximal_function: radii must be positive");
  }
  MaximalFunctionProfile prof;
  prof.radii.assign(r_grid.begin(), r_grid.end());
  const auto xs = space.x_indices();
  const auto ys = space.y_indices();
  prof.x.assign(xs.begin(), xs.end());
  const std::size_t nr = prof.radii.size();
  prof.values.assign(xs.size() * nr, Complex(0.0));

  parallel_for(xs.size(), [&](std::size_t a) {
    const Index x = xs[a];
    std::vector<std::pair<double, Complex>> terms;
    terms.reserve(ys.size());
    for (Index y : ys) {
      const double d = space.distance(x, y);
      if (d > 0.0) terms.emplace_back(d, space.weight(y) * k.evaluate(space, x, y));
    }
    std::sort(terms.begin(), terms.end(),
              [](const auto& l, const auto& r) { return l.first < r.first; });
    // tail[i] = Σ_{j >= i} terms[j], accumulated from the far end.
    std::vector<Complex> tail(terms.size() + 1, Complex(0.0));
    for (std::size_t i = terms.size(); i-- > 0;) tail[i] = tail[i + 1] + terms[i].second;
    for (std::size_t j = 0; j < nr; ++j) {
      const auto it = std::lower_bound(
          terms.begin(), terms.end(), prof.radii[j],
          [](const std::pair<double, Complex>& t, double r) { return t.first < r; });
      prof.values[a * nr + j] = tail[static_cast<std::size_t>(it - terms.begin())];
    }
  });

  prof.sup_per_r.assign(nr, 0.0);
  for (std::size_t a = 0; a < xs.size(); ++a) {
    for (std::size_t j = 0; j < nr; ++j) {
      prof.sup_per_r[j] = std::max(prof.sup_per_r[j], std::abs(prof.values[a * nr + j]));
    }
  }
  for (double v : prof.sup_per_r) prof.global_sup = std::max(prof.global_sup, v);
  prof.fit = fit_growth(prof.radii, prof.sup_per_r);
  return prof;
}

namespace {
const double kSmallScale = std::exp(-1.0);
}  // namespace

KSharpReport ksharp_norm(const DiscreteSpace& space, const KernelSpec& k,
                         std::span<const double> r_grid) {
  KSharpReport rep;
  rep.first = kernel_norm_first(space, k);
  rep.second = kernel_norm_second(space, k);
  const auto prof = maximal_function(space, k, r_grid);
  rep.maximal_sup = prof.global_sup;
  // Membership is about r -> 0; large radii only show the tail running out.
  std::vector<double> r_small, v_small;
  for (std::size_t j = 0; j < prof.radii.size(); ++j) {
    if (prof.radii[j] < kSmallScale) {
      r_small.push_back(prof.radii[j]);
      v_small.push_back(prof.sup_per_r[j]);
    }
  }
  rep.fit = r_small.size() >= 2 ? fit_growth(r_small, v_small) : prof.fit;
  rep.value = rep.first + rep.second + rep.maximal_sup;
  rep.member = rep.fit.law == GrowthLaw::bounded;
  return rep;
}

}  // namespace ak
