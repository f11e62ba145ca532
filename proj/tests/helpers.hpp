#pragma once

#include <numbers>
#include <random>
#include <vector>

#include "ak/manifold.hpp"
#include "ak/space.hpp"

namespace testing {

inline ak::DiscreteSpace circle(std::size_t n, double r = 1.0) {
  return ak::build_circle(r, n).as_space();
}

inline std::vector<ak::Index> iota(std::size_t n) {
  std::vector<ak::Index> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = i;
  return v;
}

inline ak::DiscreteSpace random_plane(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0), w(0.1, 1.0);
  std::vector<double> c(2 * n), wt(n);
  for (auto& v : c) v = u(rng);
  for (auto& v : wt) v = w(rng);
  return ak::DiscreteSpace::from_coordinates(2, c, wt, iota(n), iota(n));
}

}  // namespace testing
