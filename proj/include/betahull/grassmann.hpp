#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <optional>
#include <vector>

#include "betahull/hull.hpp"
#include "betahull/quadform.hpp"

namespace betahull {

/// Maximal subspace on which the form is positive definite.
class PositiveSubspace {
 public:
  // Validates positivity of the restricted Gram and maximality (b+ columns).
  PositiveSubspace(QuadraticSpace space, Eigen::MatrixXd basis, std::optional<Eigen::MatrixXd> graph_map = {});

  const QuadraticSpace& space() const { return space_; }
  const Eigen::MatrixXd& basis() const { return basis_; }
  const std::optional<Eigen::MatrixXd>& graph_map() const { return graph_map_; }
  Eigen::MatrixXd restricted_gram() const;

 private:
  QuadraticSpace space_;
  Eigen::MatrixXd basis_;
  std::optional<Eigen::MatrixXd> graph_map_;
};

/// Global chart on the open Grassmannian Gr+ in Sylvester coordinates:
/// T (b- x b+) with spectral norm < 1 maps to the graph {(x, T x)}.
///
/// Null directions of a degenerate form are carried along with zero
/// coordinates; projected squares only depend on classes modulo the
/// radical, so the chart still parametrises every relevant subspace.
class GraphChart {
 public:
  explicit GraphChart(const QuadraticSpace& space);

  std::size_t positive_dim() const { return plus_.cols(); }
  std::size_t negative_dim() const { return minus_.cols(); }
  std::size_t null_dim() const { return null_; }
  const QuadraticSpace& space() const { return space_; }

  // Sylvester coordinates (positive part, negative part) of a class.
  std::pair<Eigen::VectorXd, Eigen::VectorXd> coordinates(const CohomologyClass& a) const;

  Eigen::MatrixXd basis_for(const Eigen::MatrixXd& t) const;
  PositiveSubspace subspace(const Eigen::MatrixXd& t) const;

 private:
  QuadraticSpace space_;
  Eigen::MatrixXd plus_;   // dim x b+
  Eigen::MatrixXd minus_;  // dim x b-
  Eigen::MatrixXd coords_plus_;
  Eigen::MatrixXd coords_minus_;
  std::size_t null_ = 0;
};

double spectral_norm(const Eigen::MatrixXd& t);

/// H = { S (x, T x) }. Throws ChartBoundaryError when ||T||_2 >= 1 and
/// InputError for a degenerate space or a T of the wrong shape.
PositiveSubspace subspace_from_graph(const QuadraticSpace& space, const Eigen::MatrixXd& t);

/// Uniformly random chart point with ||T||_2 = radius < 1 (for tests and
/// sampling).
Eigen::MatrixXd random_graph_map(const QuadraticSpace& space, double radius, std::uint64_t seed);

struct WorstCase {
  double value = 0.0;
  std::vector<std::size_t> attaining;  // class indices (zonotope: sign masks)
};

/// max over classes a of (a+)^2, a+ the Q-orthogonal projection onto H.
WorstCase worst_case(const MonopoleConfiguration& cfg, const PositiveSubspace& h);

struct AlphaOptions {
  std::size_t starts = 20;
  std::uint64_t seed = 0;
  double tolerance = 1e-8;
  std::size_t window = 50;
  double boundary_threshold = 1.0 - 1e-6;
  std::size_t max_evaluations_per_start = 60000;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct AlphaResult {
  double value = 0.0;
  std::optional<PositiveSubspace> achieving_subspace;  // absent only for an empty configuration
  bool boundary_flag = false;
  std::vector<double> trace;
  std::vector<std::size_t> classes_attaining;
  std::size_t best_start = 0;
  double chart_norm = 0.0;
};

/// Upper estimate of the inf over Gr+ of worst_case, by multi-start
/// Nelder-Mead in the graph chart. Always >= beta^2 up to rounding.
AlphaResult alpha_squared(const MonopoleConfiguration& cfg, const AlphaOptions& options = {});

}  // namespace betahull
