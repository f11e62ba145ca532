#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "ak/space.hpp"
#include "helpers.hpp"
#include "oracles.hpp"

using namespace ak;
using testing::circle;
using testing::iota;

TEST_CASE("ball_measure conventions") {
  const auto sp = circle(8);
  CHECK(ball_measure(sp, 0, 0.0) == 0.0);
  CHECK(ball_measure(sp, 0, sp.diameter() + 1.0) == doctest::Approx(sp.y_measure()).epsilon(1e-15));
  double nn = sp.diameter();
  for (Index k = 1; k < 8; ++k) nn = std::min(nn, sp.distance(0, k));
  CHECK(nn == doctest::Approx(2.0 * std::sin(std::numbers::pi / 8.0)));
  CHECK(ball_measure(sp, 0, nn) == doctest::Approx(2.0 * std::numbers::pi / 8.0).epsilon(1e-15));
  CHECK(ball_measure(sp, 0, nn, Ball::closed) >= 2.0 * 2.0 * std::numbers::pi / 8.0 * (1 - 1e-15));
}

TEST_CASE("ball_measure rejects points outside X") {
  const auto sp = DiscreteSpace::from_coordinates(1, {0.0, 1.0, 2.0}, {1, 1, 1}, {0}, {1, 2});
  CHECK_THROWS_AS(ball_measure(sp, 1, 1.0), std::out_of_range);
  CHECK(ball_measure(sp, 0, 1.5) == 1.0);
}

TEST_CASE("construction validates the data") {
  CHECK_THROWS_AS(DiscreteSpace::from_coordinates(1, {0.0, 1.0}, {1.0, -1.0}, {0}, {1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiscreteSpace::from_coordinates(1, {0.0, 1.0}, {1.0, 1.0}, {0, 0}, {1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiscreteSpace::from_distance_matrix({0, 1, 2, 0}, {1, 1}, {0}, {1}),
                  std::invalid_argument);
  CHECK_THROWS_AS(DiscreteSpace::from_distance_matrix({1, 1, 1, 0}, {1, 1}, {0}, {1}),
                  std::invalid_argument);
}

TEST_CASE("probabilistic metric check") {
  CHECK(check_metric(testing::random_plane(40, 3)).ok);
  // d(0,2) = 5 > d(0,1) + d(1,2) = 2
  const auto bad = DiscreteSpace::from_distance_matrix({0, 1, 5, 1, 0, 1, 5, 1, 0}, {1, 1, 1},
                                                       {0, 1, 2}, {0, 1, 2});
  const auto m = check_metric(bad, 2000, 7);
  CHECK_FALSE(m.ok);
  CHECK(m.worst_triangle_excess == doctest::Approx(3.0));
}

TEST_CASE("upper Ahlfors estimates on the circle") {
  SUBCASE("empty Y") {
    const auto sp = DiscreteSpace::from_coordinates(1, {0.0, 1.0}, {1.0, 1.0}, {0, 1}, {});
    const std::vector<double> grid{0.5, 1.0};
    CHECK(estimate_upper_ahlfors(sp, 1.0, grid).c_upper == 0.0);
  }
  SUBCASE("upsilon = 1 approaches pi") {
    const auto sp = circle(512);
    const auto grid = log_grid(sp.mesh_size(), 2.0, 40);
    const auto rep = estimate_upper_ahlfors(sp, 1.0, grid);
    CHECK(rep.c_upper == doctest::Approx(std::numbers::pi).epsilon(0.02));
    CHECK(rep.clipped == 0);
  }
  SUBCASE("upsilon = 2 grows as the floor drops") {
    const auto sp = circle(512);
    const auto coarse = estimate_upper_ahlfors(sp, 2.0, dyadic_grid(8.0 * sp.mesh_size(), 2.0));
    const auto fine = estimate_upper_ahlfors(sp, 2.0, dyadic_grid(sp.mesh_size(), 2.0));
    CHECK(fine.c_upper > 3.0 * coarse.c_upper);
  }
  SUBCASE("radii below the mesh are clipped; empty grid is an error") {
    const auto sp = circle(64);
    const std::vector<double> grid{sp.mesh_size() / 4.0, sp.mesh_size() * 2.0};
    CHECK(estimate_upper_ahlfors(sp, 1.0, grid).clipped == 1);
    CHECK_THROWS_AS(estimate_upper_ahlfors(sp, 1.0, std::vector<double>{}), std::invalid_argument);
  }
}

TEST_CASE("regularity invariants") {
  const auto sp = circle(128);
  const auto grid = dyadic_grid(sp.mesh_size(), 2.0);
  const auto rep = estimate_upper_ahlfors(sp, 1.0, grid);
  for (Index x : sp.x_indices()) {
    double prev = 0.0;
    for (double r : grid) {
      const double m = ball_measure(sp, x, r);
      CHECK(m >= prev);
      prev = m;
      CHECK(m <= rep.c_upper * r);  // re-scan
      for (double r1 : grid) {
        if (r1 < r) CHECK(annulus_measure(sp, x, r1, r) == m - ball_measure(sp, x, r1));
      }
    }
  }
  const auto again = estimate_upper_ahlfors(sp, 1.0, grid);
  CHECK(again.c_upper == rep.c_upper);

  // Permuting the points leaves the estimate unchanged.
  std::vector<std::size_t> perm = iota(128);
  std::mt19937_64 rng(5);
  std::shuffle(perm.begin(), perm.end(), rng);
  std::vector<double> coords(256), w(128);
  for (std::size_t i = 0; i < 128; ++i) {
    const auto p = sp.point(perm[i]);
    coords[2 * i] = p[0];
    coords[2 * i + 1] = p[1];
    w[i] = sp.weight(perm[i]);
  }
  const auto shuffled = DiscreteSpace::from_coordinates(2, coords, w, iota(128), iota(128));
  CHECK(estimate_upper_ahlfors(shuffled, 1.0, grid).c_upper == doctest::Approx(rep.c_upper).epsilon(1e-12));
}

TEST_CASE("certified supremum dominates grid estimates") {
  const auto sp = circle(256);
  const double hi = 1.5;
  const auto cert = certify_upper_ahlfors(sp, 1.0, sp.mesh_size(), hi);
  const auto grid = log_grid(sp.mesh_size(), hi * 0.999, 50);
  CHECK(cert.c_upper >= estimate_upper_ahlfors(sp, 1.0, grid).c_upper);
  const auto punct = certify_upper_ahlfors(sp, 1.0, 0.0, hi, true);
  CHECK(std::isfinite(punct.c_upper));
  for (Index x : sp.x_indices()) {
    for (double r : grid) CHECK(ball_measure(sp, x, r) - sp.weight(x) <= punct.c_upper * r);
  }
}

TEST_CASE("strong upper Ahlfors estimates") {
  const auto sp = circle(256);
  const double h = sp.mesh_size();
  SUBCASE("r1 = 0 reduces to balls") {
    const auto grid = dyadic_grid(h, 2.0);
    std::vector<std::pair<double, double>> pairs;
    for (double r : grid) pairs.emplace_back(0.0, r);
    const auto strong = estimate_strong_upper_ahlfors(sp, 1.0, pairs);
    const auto upper = estimate_upper_ahlfors(sp, 1.0, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) CHECK(strong.sup_ratio[k] == upper.sup_ratio[k]);
  }
  SUBCASE("thin annuli stay bounded on the circle") {
    std::vector<std::pair<double, double>> pairs;
    for (double r : dyadic_grid(h, 1.5)) pairs.emplace_back(r, r + h);
    const auto rep = estimate_strong_upper_ahlfors(sp, 1.0, pairs);
    REQUIRE(rep.c_strong.has_value());
    CHECK(*rep.c_strong < 5.0);
  }
  SUBCASE("atoms break strong regularity") {
    const auto two = DiscreteSpace::from_distance_matrix({0, 1, 1, 0}, {1, 1}, {0, 1}, {0, 1});
    double prev = 0.0;
    for (double delta : {0.1, 0.01, 0.001}) {
      const std::vector<std::pair<double, double>> pairs{{1.0 - delta, 1.0 + delta}};
      const double c = *estimate_strong_upper_ahlfors(two, 1.0, pairs).c_strong;
      CHECK(c > prev);
      prev = c;
    }
  }
  SUBCASE("pairs must be ordered") {
    const std::vector<std::pair<double, double>> pairs{{0.5, 0.5}};
    CHECK_THROWS_AS(estimate_strong_upper_ahlfors(sp, 1.0, pairs), std::invalid_argument);
  }
}

TEST_CASE("sphere condition") {
  const auto sp = circle(512);
  const auto rho = dyadic_grid(sp.mesh_size(), 2.0);
  const auto rep = check_sphere_condition(sp, rho, 2.0 * std::numbers::pi / 512.0);
  CHECK(rep.all_passed);
  CHECK(rep.a_estimate == rho.back());

  const auto two = DiscreteSpace::from_distance_matrix({0, 1, 1, 0}, {1, 1}, {0, 1}, {0, 1});
  const std::vector<double> off{0.5};
  CHECK_FALSE(check_sphere_condition(two, off, 0.01).all_passed);
  const std::vector<double> on{1.0};
  CHECK(check_sphere_condition(two, on, 0.01).all_passed);

  const auto single = DiscreteSpace::from_coordinates(1, {0.0, 1.0}, {1, 1}, {0}, {0, 1});
  const auto none = check_sphere_condition(single, on, 0.5);
  CHECK_FALSE(none.all_passed);
  CHECK(none.a_estimate == 0.0);
}

TEST_CASE("grid helpers") {
  const auto d = dyadic_grid(0.25, 2.0);
  REQUIRE(d.size() == 4);
  CHECK(d.back() == 2.0);
  CHECK(dyadic_grid(0.25, 2.0, false).size() == 3);
  const auto l = log_grid(0.01, 1.0, 3);
  CHECK(l[1] == doctest::Approx(0.1));
  CHECK(default_sphere_tolerance(circle(512)) ==
        doctest::Approx(1.5 * 2.0 * std::sin(std::numbers::pi / 512.0)));
}
