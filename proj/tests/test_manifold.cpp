#include <doctest.h>

#include <cmath>
#include <vector>

#include "ak/manifold.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace ak;

namespace {

TestFunctionFamily few_bumps(const DiscreteSpace& sp, double beta) {
  auto all = bump_family(sp, beta);
  TestFunctionFamily out;
  out.beta = beta;
  for (std::size_t k = 0; k < all.members.size(); k += all.members.size() / 8) out.members.push_back(all.members[k]);
  return out;
}

}  // namespace

TEST_CASE("circle geometry") {
  const auto man = build_circle(2.0, 128);
  CHECK(man.size() == 128);
  CHECK(man.area() == doctest::Approx(4.0 * oracle::pi).epsilon(1e-14));
  for (std::size_t i = 0; i < man.size(); i += 7) {
    CHECK(man.points[i].norm() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(man.normals[i].dot(man.points[i] / 2.0) == doctest::Approx(1.0).epsilon(1e-14));
    const Mat& p = man.projectors[i];
    CHECK((p * p - p).norm() <= 1e-14);
    CHECK((p * man.normals[i]).norm() <= 1e-14);
    CHECK(p.trace() == doctest::Approx(1.0).epsilon(1e-14));
  }
  const auto sp = man.as_space();
  CHECK(sp.distance(0, 1) == doctest::Approx(4.0 * std::sin(oracle::pi / 128.0)).epsilon(1e-13));
  CHECK(sp.y_measure() == doctest::Approx(man.area()).epsilon(1e-14));
  CHECK_THROWS_AS(build_circle(1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(build_circle(-1.0, 64), std::invalid_argument);
}

TEST_CASE("sphere geometry") {
  const auto man = build_sphere(1.5, 2000);
  CHECK(man.area() == doctest::Approx(4.0 * oracle::pi * 2.25).epsilon(1e-12));
  std::size_t cap = 0;
  for (std::size_t i = 0; i < man.size(); ++i) {
    CHECK(man.points[i].norm() == doctest::Approx(1.5).epsilon(1e-14));
    if (man.points[i][2] / 1.5 > 0.5) ++cap;
    if (i % 97 == 0) {
      const Mat& p = man.projectors[i];
      CHECK((p * p - p).norm() <= 1e-12);
      CHECK((p * man.normals[i]).norm() <= 1e-12);
      CHECK(p.trace() == doctest::Approx(2.0).epsilon(1e-12));
    }
  }
  CHECK(static_cast<double>(cap) / 2000.0 == doctest::Approx(0.25).epsilon(0.01));
}

TEST_CASE("tangential gradients") {
  const AmbientField x1{[](const Vec& x) { return x[0]; }, nullptr};
  const AmbientField x1_exact{[](const Vec& x) { return x[0]; },
                              [](const Vec& x) { Vec g = Vec::Zero(x.size()); g[0] = 1.0; return g; }};
  const auto circ = build_circle(1.0, 256);
  for (std::size_t i = 0; i < circ.size(); i += 31) {
    const double t = circ.node_params[i][0];
    Vec expect(2);
    expect << std::sin(t) * std::sin(t), -std::sin(t) * std::cos(t);
    CHECK((tangential_gradient(circ, x1_exact, i) - expect).norm() <= 1e-14);
    CHECK((tangential_gradient(circ, x1, i) - expect).norm() <= 1e-3);
  }
  const auto sph = build_sphere(1.0, 400);
  const AmbientField x3{[](const Vec& x) { return x[2]; }, nullptr};
  for (std::size_t i = 0; i < sph.size(); i += 37) {
    const Vec n = sph.normals[i];
    const Vec expect = Vec::Unit(3, 2) - n[2] * n;
    CHECK((tangential_gradient(sph, x3, i) - expect).norm() <= 0.05);
  }
  CHECK_THROWS_AS(tangential_gradient(circ, x1, 9999), std::out_of_range);
}

TEST_CASE("gradient-of-potential formula") {
  const auto mu1 = [](const Vec& y) { return y[0]; };
  const auto one = [](const Vec&) { return 1.0; };

  SUBCASE("constant density") {
    const auto man = build_circle(1.0, 256);
    const auto rep = verify_gradient_formula(man, single_layer_log(), one, 1.0);
    CHECK(rep.first_term_max == 0.0);
    CHECK(rep.max_residual <= 1e-6);
    CHECK(rep.mu_seminorm == 0.0);
  }
  SUBCASE("double layer is flat along the circle") {
    const auto man = build_circle(1.0, 128);
    const auto rep = verify_gradient_formula(man, double_layer_circle_grad(1.0), mu1, 1.0);
    CHECK(rep.max_residual <= 1e-8);
    CHECK(rep.first_term_max <= 1e-8);
  }
  SUBCASE("single layer converges") {
    double prev = 0.0;
    for (std::size_t n : {128, 256, 512}) {
      const auto rep = verify_gradient_formula(build_circle(1.0, n), single_layer_log(), mu1, 1.0);
      if (prev > 0.0) CHECK(std::log2(prev / rep.max_residual) >= 0.5);
      prev = rep.max_residual;
    }
  }
}

TEST_CASE("manifold necessity") {
  const auto man = build_circle(1.0, 256);
  const auto sp = man.as_space();
  const auto grid = default_necessity_grid(sp, 1.0);
  ManifoldNecessityOptions opt;
  opt.necessity.family = few_bumps(sp, 0.5);

  SUBCASE("double layer gradient vanishes tangentially") {
    const auto rep = manifold_necessity(man, double_layer_circle_grad(1.0), 0.5, grid, opt);
    REQUIRE(rep.components.size() == 2);
    for (const auto& c : rep.components) CHECK(c.lhs_sup <= 1e-8);
  }
  SUBCASE("bumped log kernel stays bounded and refines stably") {
    Vec shift(2);
    shift << 0.3, -0.2;
    const auto k = bumped_log_grad(0.5, shift, 0.4);
    const auto a = manifold_necessity(man, k, 0.5, grid, opt);
    CHECK(a.profile.tag == HolderCase::b);
    const auto fine = build_circle(1.0, 512);
    ManifoldNecessityOptions fopt;
    fopt.necessity.family = few_bumps(fine.as_space(), 0.5);
    const auto b = manifold_necessity(fine, k, 0.5, grid, fopt);
    for (std::size_t c = 0; c < 2; ++c) {
      CHECK(a.components[c].fit.law == GrowthLaw::bounded);
      CHECK(std::abs(a.components[c].lhs_sup - b.components[c].lhs_sup) <=
            0.2 * std::max(a.components[c].lhs_sup, b.components[c].lhs_sup) + 1e-12);
    }
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_WITH(manifold_necessity(man, power_grad(0.5), 0.5, grid), "violated t1 = n-1");
    ManifoldNecessityOptions loose;
    loose.strict_t1 = false;
    CHECK_THROWS_WITH(manifold_necessity(man, power_grad(0.5), 0.5, grid, loose), "violated t2 <= n-1 + t3");
    CHECK_THROWS_WITH(manifold_necessity(man, single_layer_log(), 1.0, grid), "violated t2 - beta > n-1");
  }
}

TEST_CASE("regularity constants are stable under refinement") {
  const auto a = certify_upper_ahlfors(testing::circle(256), 1.0, 0.0, 1.0, true).c_upper;
  const auto b = certify_upper_ahlfors(testing::circle(512), 1.0, 0.0, 1.0, true).c_upper;
  CHECK(std::abs(a - b) <= 0.05 * b);
  const auto sph = build_sphere(1.0, 1500).as_space();
  const auto reg = estimate_upper_ahlfors(sph, 2.0, dyadic_grid(0.2, 2.0));
  CHECK(reg.c_upper <= 2.0 * oracle::pi);
}
