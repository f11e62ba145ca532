// One PASS/FAIL line per acceptance criterion; exits nonzero if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ak/bounds.hpp"
#include "ak/io.hpp"
#include "ak/kernels.hpp"
#include "ak/manifold.hpp"
#include "ak/operator.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace ak;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

Outcome double_layer_oracle() {
  const auto sp = testing::circle(512);
  const auto k = double_layer_circle(1.0);
  const double c = 1.0 / (4.0 * oracle::pi);
  double worst = 0.0;
  for (Index x : sp.x_indices()) {
    for (Index y : sp.y_indices()) {
      if (x != y) worst = std::max(worst, std::abs(k.evaluate(sp, x, y) - c) / c);
    }
  }
  auto grid = log_grid(0.5 * sp.mesh_size(), 2.0, 64);
  for (double r : dyadic_grid(sp.mesh_size(), 2.0)) grid.push_back(r);
  const auto prof = maximal_function(sp, k, grid);
  return {worst <= 1e-12 && prof.global_sup <= 0.5 + 1e-10,
          "rel=" + num(worst) + " sup=" + num(prof.global_sup)};
}

Outcome brute_force() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.05, 2.0);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 3 + static_cast<std::size_t>(trial % 4);
    std::vector<double> px(n), py(n), wt(n);
    for (std::size_t i = 0; i < n; ++i) {
      px[i] = u(rng);
      py[i] = u(rng);
      wt[i] = w(rng);
    }
    std::vector<std::vector<double>> d(n, std::vector<double>(n));
    std::vector<double> flat;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        d[i][j] = std::hypot(px[i] - px[j], py[i] - py[j]);
        flat.push_back(d[i][j]);
      }
    }
    std::vector<std::vector<Complex>> z(n, std::vector<Complex>(n));
    for (auto& row : z) {
      for (auto& v : row) v = Complex(u(rng), u(rng));
    }
    std::vector<Complex> g(n);
    for (auto& v : g) v = Complex(u(rng), u(rng));
    const auto sp = DiscreteSpace::from_distance_matrix(flat, wt, testing::iota(n), testing::iota(n));
    const auto k = custom("random", [z](const DiscreteSpace&, Index x, Index y) { return z[x][y]; }, 1, 2, 1);
    const auto q = apply_q(sp, k, SampledFunction(n, testing::iota(n), g));
    for (std::size_t x = 0; x < n; ++x) {
      const auto ref = oracle::q_sum(d, wt, z, g, testing::iota(n), x);
      worst = std::max(worst, std::abs(q.at(x) - ref) / std::max(std::abs(ref), 1e-300));
    }
  }
  return {worst <= 1e-13, "max rel=" + num(worst)};
}

Outcome total_measure_and_bound() {
  bool exact = true;
  const std::vector<double> a{0.25};
  for (const auto& sp : {io::make_preset("circle", 1.0, 512, 0, 0).space,
                         io::make_preset("sphere", 1.0, 400, 0, 0).space,
                         io::make_preset("cantor", 1.0, 0, 7, 0).space,
                         io::make_preset("two_point", 1.0, 0, 0, 1.0).space, testing::random_plane(40, 5)}) {
    double total = 0.0;
    for (Index y : sp.y_indices()) total += sp.weight(y);
    exact = exact && c_prime(sp, 1.0, 0.0, a).measured == total;
  }
  const auto sp = testing::circle(1024);
  const auto rep = c_prime(sp, 1.0, 0.5, log_grid(0.01, 2.0, 20));
  bool every = rep.per_grid.size() == 20;
  for (double b : rep.per_grid) every = every && rep.measured <= b;
  return {exact && every, std::string("s=0 exact=") + (exact ? "yes" : "no") + " c'=" + num(rep.measured) +
                              " min bound=" + num(*rep.bound)};
}

Outcome log_law() {
  const auto sp = testing::circle(1024);
  const double h = sp.mesh_size();
  std::vector<double> grid;
  for (double t = 2.0 * h; t < std::exp(-1.0); t *= 2.0) grid.push_back(t);
  const auto rep = c_iv(sp, 1.0, grid);
  double lo = 1e300, hi = 0.0;
  for (double v : rep.per_grid) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  std::vector<double> logs, exact;
  for (double t : grid) {
    logs.push_back(std::abs(std::log(t)));
    exact.push_back(log_blowup_circle(1.0).analytic_maximal(t).real());
  }
  const double oracle_slope = least_squares(logs, exact).slope;
  const double slope = rep.log_fit->slope;
  const bool band = lo >= 1.5 && hi <= 2.5;
  const bool coeff = std::abs(slope - 2.0) <= 0.2 && std::abs(oracle_slope - 2.0) <= 0.2;
  return {band && coeff, "ratio in [" + num(lo) + "," + num(hi) + "] coefficient=" + num(slope) +
                             " oracle=" + num(oracle_slope)};
}

Outcome omega_suite() {
  bool ok = true;
  double worst_sub = 0.0;
  for (double theta : {0.25, 0.5, 1.0}) {
    const auto w = Modulus::log_power(theta);
    ok = ok && w(0.0) == 0.0;
    std::vector<double> v;
    for (int k = 1; k <= 1000; ++k) v.push_back(w(k / 1000.0));
    for (std::size_t k = 1; k < v.size(); ++k) ok = ok && v[k] >= v[k - 1];
    for (std::size_t k = 1; k + 1 < v.size(); ++k) ok = ok && 2.0 * v[k] >= v[k - 1] + v[k + 1] - 1e-15;
    for (int i = 0; i < 100; ++i) {
      const double a = 1.0 + 9.0 * i / 99.0;
      for (int j = 0; j < 100; ++j) {
        const double t = std::pow(10.0, -6.0 + 6.0 * j / 99.0);
        const double lhs = w(a * t), rhs = a * w(t);
        worst_sub = std::max(worst_sub, lhs / rhs);
        ok = ok && lhs <= (1.0 + 1e-12) * rhs;
      }
    }
  }
  const double at = Modulus::log_power(1.0)(std::exp(-1.0));
  ok = ok && std::abs(at - std::exp(-1.0)) <= 1e-12;
  return {ok, "omega_1(1/e)=" + num(at) + " max w(at)/(a w(t))=" + num(worst_sub)};
}

Outcome certification() {
  const auto sp = testing::circle(256);
  bool ok = true;
  double worst = 0.0, tight = 1.0;
  for (double beta : {0.3, 0.5, 1.0}) {
    const auto m = Modulus::power(beta);
    const auto fam = bump_family(sp, beta);
    for (std::size_t a = 0; a < fam.members.size(); ++a) {
      const Index xp = sp.x_indices()[a];
      const auto& g = fam.members[a].g;
      const double v = holder_seminorm(g, m, sp).value;
      const Index nn = nearest_at_distance(sp, xp, 0.0);
      const double at_nn = std::abs(g.at(xp) - g.at(nn)) / m(sp.distance(xp, nn));
      worst = std::max(worst, v);
      tight = std::min(tight, at_nn);
      ok = ok && v <= 1.0 + 1e-12 && at_nn >= 1.0 - 1e-9;
    }
  }
  return {ok, "max seminorm=" + num(worst) + " min at nearest=" + num(tight)};
}

Outcome decomposition() {
  const auto sp = testing::circle(512);
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<Index> pick(0, sp.size() - 1);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const Index a = pick(rng);
    Index b = pick(rng);
    if (b == a) b = (a + 1) % sp.size();
    std::vector<Complex> v(sp.size());
    for (auto& c : v) c = Complex(n(rng), n(rng));
    const SampledFunction g(sp.size(), testing::iota(sp.size()), v);
    worst = std::max(worst, split_difference(sp, riesz(0.5), g, a, b).residual);
  }
  return {worst <= 1e-12, "max rel residual=" + num(worst)};
}

Outcome necessity() {
  bool ok = true;
  std::string detail;
  const auto c = case_select(1.0, 0.5, 1.2, 0.5);
  for (std::size_t n : {256, 512}) {
    const auto sp = testing::circle(n);
    const auto rep = necessity_experiment(sp, double_layer_circle(1.0), c, default_necessity_grid(sp, 0.5));
    const bool good = rep.verdict == "satisfied" && rep.lhs_sup <= 10.0 * rep.op_norm.value &&
                      rep.fit.law == GrowthLaw::bounded && std::abs(rep.fit.power_exponent) <= 0.1;
    ok = ok && good;
    detail += "N=" + std::to_string(n) + ": lhs=" + num(rep.lhs_sup) + " op=" + num(rep.op_norm.value) +
              " p=" + num(rep.fit.power_exponent) + " " + to_string(rep.fit.law) + "; ";
  }
  return {ok, detail};
}

Outcome growth_discrimination() {
  const auto sp = testing::circle(4096);
  std::vector<double> grid;
  for (double r = 2.0 * sp.mesh_size(); r <= 1.0; r *= 2.0) grid.push_back(r);
  const auto prof = maximal_function(sp, log_blowup(1.0), grid);
  const auto& f = prof.fit;
  const double octaves = std::log2(grid.back() / grid.front());
  const bool ok = octaves >= 6.0 && f.law == GrowthLaw::logarithmic && std::abs(f.log_coefficient - 2.0) <= 0.3 &&
                  f.log_r_squared - f.power_r_squared >= 0.02;
  return {ok, "law=" + to_string(f.law) + " a=" + num(f.log_coefficient) + " R2 log=" + num(f.log_r_squared) +
                  " power=" + num(f.power_r_squared) + " octaves=" + num(octaves)};
}

Outcome gradient_formula() {
  const auto mu = [](const Vec& y) { return y[0]; };
  std::vector<double> res;
  for (std::size_t n : {256, 512, 1024}) {
    res.push_back(verify_gradient_formula(build_circle(1.0, n), single_layer_log(), mu, 1.0).max_residual);
  }
  const double o1 = std::log2(res[0] / res[1]), o2 = std::log2(res[1] / res[2]);
  const auto flat = verify_gradient_formula(build_circle(1.0, 1024), single_layer_log(),
                                            [](const Vec&) { return 1.0; }, 1.0);
  const bool ok = res[1] < res[0] && res[2] < res[1] && o1 >= 0.5 && o2 >= 0.5 && flat.first_term_max == 0.0 &&
                  flat.max_residual <= 1e-6;
  return {ok, "residuals " + num(res[0]) + " " + num(res[1]) + " " + num(res[2]) + " orders " + num(o1) + " " +
                  num(o2) + " constant-mu residual=" + num(flat.max_residual)};
}

Outcome sphere_condition() {
  const auto sp = testing::circle(512);
  const auto rho = dyadic_grid(sp.mesh_size(), sp.diameter() / 2.0);
  const auto circle = check_sphere_condition(sp, rho, 1.5 * (2.0 * oracle::pi / 512.0));
  const auto two = io::make_preset("two_point", 1.0, 0, 0, 1.0).space;
  const std::vector<double> r2{0.25};
  const auto pair = check_sphere_condition(two, r2, 1.5 * (2.0 * oracle::pi / 512.0));
  return {circle.all_passed && !pair.all_passed,
          "circle passes to rho=" + num(circle.a_estimate) + ", two-point " + (pair.all_passed ? "passes" : "fails")};
}

}  // namespace

int main() {
  struct Criterion {
    const char* name;
    std::function<Outcome()> run;
    double limit_s;  // 0: no runtime limit
  };
  const std::vector<Criterion> all{
      {"double-layer circle oracle", double_layer_oracle, 5.0},
      {"Q brute-force equivalence", brute_force, 1.0},
      {"c' total measure and bound", total_measure_and_bound, 0.0},
      {"c^iv log law", log_law, 10.0},
      {"omega_theta suite", omega_suite, 0.0},
      {"test-function certification", certification, 0.0},
      {"four-term decomposition", decomposition, 0.0},
      {"necessity consistency", necessity, 0.0},
      {"growth-law discrimination", growth_discrimination, 0.0},
      {"gradient formula convergence", gradient_formula, 0.0},
      {"sphere condition", sphere_condition, 0.0},
  };
  int failed = 0;
  for (std::size_t i = 0; i < all.size(); ++i) {
    const auto t0 = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = all[i].run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (all[i].limit_s > 0.0 && secs >= all[i].limit_s) {
      out.pass = false;
      out.detail += " (over " + num(all[i].limit_s) + " s)";
    }
    if (!out.pass) ++failed;
    std::printf("%s %2zu %s: %s [%.2f s]\n", out.pass ? "PASS" : "FAIL", i + 1, all[i].name, out.detail.c_str(),
                secs);
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
