#include <doctest.h>

#include <sstream>

#include "ak/io.hpp"

using namespace ak;
using io::json;

TEST_CASE("spaces from JSON") {
  const auto sp = io::space_from_json(json::parse(R"({"coords": [[0,0],[3,4],[0,1]],
      "weights": [1, 2, 0.5], "x": [0, 1], "y": [1, 2]})"));
  CHECK(sp.size() == 3);
  CHECK(sp.distance(0, 1) == 5.0);
  CHECK(sp.y_measure() == 2.5);
  CHECK(sp.in_x(1));
  CHECK_FALSE(sp.in_y(0));

  const auto m = io::space_from_json(json::parse(R"({"dist_matrix": [[0,1],[1,0]],
      "weights": [1, 1], "x": [0, 1], "y": [0, 1]})"));
  CHECK_FALSE(m.has_coordinates());
  CHECK(m.distance(1, 0) == 1.0);

  CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"coords": [[0]], "weights": [1], "x": [0], "y": [0], "colour": 1})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"weights": [1], "x": [0], "y": [0]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::space_from_json(json::parse(R"({"coords": [[0],[1,2]], "weights": [1,1], "x": [0], "y": [0]})")),
                  std::invalid_argument);
  CHECK_THROWS_AS(io::load_space("/nonexistent/space.json"), std::invalid_argument);
}

TEST_CASE("presets") {
  const auto c = io::make_preset("circle", 1.0, 64, 0, 0);
  CHECK(c.manifold);
  CHECK(c.upsilon == 1.0);
  CHECK(c.space.size() == 64);
  const auto k = io::make_preset("cantor", 1.0, 0, 5, 0);
  CHECK(k.space.size() == 32);
  CHECK(k.upsilon == doctest::Approx(std::log(2.0) / std::log(3.0)));
  CHECK(k.space.y_measure() == doctest::Approx(1.0));
  const auto t = io::make_preset("two_point", 1.0, 0, 0, 0.25);
  CHECK(t.space.diameter() == 0.25);
  CHECK(io::make_preset("sphere", 1.0, 100, 0, 0).upsilon == 2.0);
  CHECK_THROWS_AS(io::make_preset("torus", 1.0, 10, 0, 0), std::invalid_argument);
}

TEST_CASE("reports serialize deterministically") {
  const auto sp = io::make_preset("circle", 1.0, 64, 0, 0).space;
  const auto grid = dyadic_grid(sp.mesh_size(), 2.0);
  const auto a = io::to_json(maximal_function(sp, riesz(0.5), grid)).dump();
  const auto b = io::to_json(maximal_function(sp, riesz(0.5), grid)).dump();
  CHECK(a == b);
  const auto reg = io::to_json(estimate_upper_ahlfors(sp, 1.0, grid));
  CHECK(reg.contains("c_upper"));
  std::ostringstream os;
  io::write_csv(os, maximal_function(sp, riesz(0.5), grid));
  CHECK(os.str().rfind("x_index,r,re,im,abs\n", 0) == 0);
}
