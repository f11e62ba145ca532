#pragma once

// Compact curves and surfaces embedded in R^n: node quadrature, tangent
// projectors, tangential gradients, the gradient-of-potential formula and the
// necessity check for tangential-gradient kernels.

#include <Eigen/Dense>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ak/operator.hpp"
#include "ak/space.hpp"

namespace ak {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

struct Chart {
  std::function<Vec(const Vec&)> embed;     // parameters → ambient point
  std::function<Mat(const Vec&)> jacobian;  // n × m
};

struct QuadNode {
  Vec point;
  double weight = 0.0;
};

struct ParametrizedManifold {
  std::size_t dim = 0;      // m
  std::size_t ambient = 0;  // n
  std::vector<Chart> charts;
  std::vector<std::size_t> node_chart;
  std::vector<Vec> node_params;
  std::vector<Vec> points;
  std::vector<double> weights;
  std::vector<Vec> normals;      // unit normals when m = n - 1
  std::vector<Mat> projectors;   // J (JᵀJ)^{-1} Jᵀ at each node
  double fd_step = 0.0;          // chart-parameter step for central differences
  /// Quadrature used for potentials evaluated near node i. Defaults to the nodes.
  std::function<std::vector<QuadNode>(std::size_t)> potential_rule;

  std::size_t size() const { return points.size(); }
  double area() const;
  /// X = Y = all nodes, Euclidean metric of R^n.
  DiscreteSpace as_space() const;
  std::vector<QuadNode> nodes() const;
};

/// Uniform nodes at angles 2πk/N, weights 2πR/N. Potentials near node i use a
/// midpoint grid of refine·N nodes rotated to be symmetric about node i.
ParametrizedManifold build_circle(double radius, std::size_t n, std::size_t refine = 8);

/// Fibonacci-spiral nodes with equal weights 4πR²/N and one chart per node.
ParametrizedManifold build_sphere(double radius, std::size_t n);

struct AmbientField {
  std::function<double(const Vec&)> value;
  std::function<Vec(const Vec&)> gradient;  // optional
};

/// P(x)·∇f(x) with the analytic gradient if present, otherwise from central
/// differences of f along the chart at the node.
Vec tangential_gradient(const ParametrizedManifold& man, const AmbientField& f, std::size_t node);

struct GradKernelSpec {
  std::string name;
  std::function<double(const Vec&, const Vec&)> kernel;
  std::function<Vec(const Vec&, const Vec&)> grad_x;  // ambient gradient in x
  double s1 = 0.0;
  double t1 = 0.0, t2 = 0.0, t3 = 1.0;
};

/// log|x - y| in the plane: (t1, t2, t3) = (1, 2, 1).
GradKernelSpec single_layer_log();
/// (y - x)·(y/R) / (2π|x-y|²); its tangential gradient vanishes on the circle.
GradKernelSpec double_layer_circle_grad(double radius);
/// |x - y|^{-s}: (t1, t2, t3) = (s+1, s+2, 1).
GradKernelSpec power_grad(double s);
/// log|x - y| + a·exp(-|x - y - c|² / σ²) in the plane.
GradKernelSpec bumped_log_grad(double amplitude, Vec shift, double width);

struct GradientFormulaReport {
  std::vector<Vec> lhs;  // tangential gradient of the potential, by differences
  std::vector<Vec> rhs;  // node quadrature of the right-hand side
  std::vector<double> residual;
  double max_residual = 0.0;
  double first_term_max = 0.0;  // max |∫ P∇K (μ(y) - μ(x))|
  double mu_seminorm = 0.0;     // sampled β-seminorm of μ on the nodes
};

/// Compares ∇_Y ∫ K μ dσ with ∫ P∇_x K (μ(y) - μ(x)) dσ + μ(x) ∇_Y ∫ K dσ
/// at every node. μ is evaluated on quadrature nodes of the potential rule.
GradientFormulaReport verify_gradient_formula(const ParametrizedManifold& man,
                                              const GradKernelSpec& k,
                                              const std::function<double(const Vec&)>& mu,
                                              double beta);

struct ManifoldNecessityOptions {
  NecessityOptions necessity;
  bool strict_t1 = true;  // require t1 = n - 1
};

struct ManifoldNecessityReport {
  CaseProfile profile;
  std::vector<NecessityReport> components;  // one per ambient coordinate
  bool satisfied = false;
};

/// Validates t1 = n-1, t2 - β > n-1 and t2 <= n-1+t3, then runs the necessity
/// experiment on each component of P(x)∇_x K(x,y) with υ = n-1.
ManifoldNecessityReport manifold_necessity(const ParametrizedManifold& man, const GradKernelSpec& k,
                                           double beta, std::span<const double> r_grid,
                                           const ManifoldNecessityOptions& opt = {});

}  // namespace ak
