#include "doctest.h"
#include "generators.hpp"

#include <Eigen/Eigenvalues>

#include "betahull/errors.hpp"
#include "betahull/grassmann.hpp"

using namespace betahull;
namespace bt = betahull::testing;

namespace {

// Independent projection by a dense least-squares-free solve.
double projected_square(const Eigen::MatrixXd& g, const Eigen::VectorXd& a, const Eigen::MatrixXd& b) {
  const Eigen::MatrixXd r = b.transpose() * g * b;
  const Eigen::VectorXd coeff = r.fullPivLu().solve(b.transpose() * g * a);
  const Eigen::VectorXd p = b * coeff;
  return p.dot(g * p);
}

AlphaOptions quick(std::size_t starts = 6) {
  AlphaOptions o;
  o.starts = starts;
  o.threads = 2;
  return o;
}

}  // namespace

TEST_CASE("graph chart examples") {
  const QuadraticSpace s = QuadraticSpace::diagonal({1, -1});
  const PositiveSubspace h0 = subspace_from_graph(s, Eigen::MatrixXd::Zero(1, 1));
  CHECK(h0.basis().cols() == 1);
  CHECK(std::abs(h0.basis()(1, 0)) < 1e-15);

  Eigen::MatrixXd t(1, 1);
  t << 0.6;
  const PositiveSubspace h = subspace_from_graph(s, t);
  const Eigen::VectorXd col = h.basis().col(0) / h.basis()(0, 0);
  CHECK(col(1) == doctest::Approx(0.6));
  CHECK(h.restricted_gram()(0, 0) / (h.basis()(0, 0) * h.basis()(0, 0)) == doctest::Approx(1 - 0.36));

  t << 1.5;
  CHECK_THROWS_AS(subspace_from_graph(s, t), ChartBoundaryError);
  t << 1.0;
  CHECK_THROWS_AS(subspace_from_graph(s, t), ChartBoundaryError);
  CHECK_THROWS_AS(subspace_from_graph(QuadraticSpace::diagonal({1, 0, -1}), Eigen::MatrixXd::Zero(1, 1)),
                  InputError);
  CHECK_THROWS_AS(subspace_from_graph(s, Eigen::MatrixXd::Zero(2, 1)), InputError);
  CHECK_THROWS_AS(PositiveSubspace(s, Eigen::Vector2d(1, 2)), InputError);
  CHECK_THROWS_AS(PositiveSubspace(s, Eigen::MatrixXd::Identity(2, 2)), InputError);
}

TEST_CASE("chart soundness on random spaces") {
  Rng rng(3);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t plus = 1 + rng.below(3), minus = 1 + rng.below(3);
    const auto p = bt::random_invertible(rng, plus + minus);
    const QuadraticSpace s = MonopoleConfiguration::empty(bt::diagonal_space(plus, minus)).transformed(p).space();
    const Eigen::MatrixXd t = random_graph_map(s, rng.uniform(0.0, 0.999), trial);
    const PositiveSubspace h = subspace_from_graph(s, t);
    REQUIRE(h.basis().cols() == static_cast<Eigen::Index>(plus));
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(h.restricted_gram());
    REQUIRE(es.eigenvalues().minCoeff() > 0);

    // Outside the unit ball the graph is no longer positive.
    const Eigen::MatrixXd big = random_graph_map(s, 0.5, trial) * (rng.uniform(1.01, 3.0) / 0.5);
    CHECK_THROWS_AS(subspace_from_graph(s, big), ChartBoundaryError);
    const GraphChart chart(s);
    const Eigen::MatrixXd b = chart.basis_for(big);
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eb(b.transpose() * s.gram_double() * b);
    REQUIRE(eb.eigenvalues().minCoeff() <= 1e-12);
  }
}

TEST_CASE("worst case examples") {
  const QuadraticSpace s = QuadraticSpace::diagonal({1, -1});
  const auto pair = MonopoleConfiguration::explicit_set(s, {{3, 2}, {-3, -2}});
  const PositiveSubspace h(s, Eigen::Vector2d(1, 0));
  const WorstCase w = worst_case(pair, h);
  CHECK(w.value == doctest::Approx(9.0));
  CHECK(w.attaining == std::vector<std::size_t>{0, 1});

  const QuadraticSpace s3 = QuadraticSpace::diagonal({1, 1, -1});
  const auto null_pair = MonopoleConfiguration::explicit_set(s3, {{1, 0, 1}, {-1, 0, -1}});
  Eigen::MatrixXd b(3, 2);
  b << 1, 0, 0, 1, 0, 0;
  const WorstCase wn = worst_case(null_pair, PositiveSubspace(s3, b));
  CHECK(wn.value == doctest::Approx(projected_square(s3.gram_double(), Eigen::Vector3d(1, 0, 1), b)));
  CHECK(wn.value == doctest::Approx(1.0));

  // Zonotope inner max equals the max over the expansion.
  const auto z = MonopoleConfiguration::zonotope(QuadraticSpace::diagonal({3, -1, -1}), {{1, 0, 0}, {0, 1, 0}, {1, 0, 1}});
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const PositiveSubspace hz = subspace_from_graph(z.space(), random_graph_map(z.space(), 0.9, i));
    const WorstCase a = worst_case(z, hz);
    const WorstCase e = worst_case(z.expanded(), hz);
    REQUIRE(a.value == doctest::Approx(e.value).epsilon(1e-12));
    REQUIRE(a.attaining == e.attaining);
  }
}

TEST_CASE("worst case bounds beta from above") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t plus = 1 + rng.below(2), minus = 1 + rng.below(3);
    const QuadraticSpace base = bt::diagonal_space(plus, minus);
    const auto cfg = bt::random_configuration(rng, base, 1 + rng.below(3)).transformed(
        bt::random_invertible(rng, plus + minus));
    const double beta = to_double(beta_squared(cfg).value);
    for (int k = 0; k < 5; ++k) {
      const PositiveSubspace h = subspace_from_graph(cfg.space(), random_graph_map(cfg.space(), rng.uniform(0, 0.99), k));
      const WorstCase w = worst_case(cfg, h);
      REQUIRE(w.value >= beta - 1e-9 * std::max(1.0, beta));
      double direct = 0;
      for (const auto& a : cfg.classes())
        direct = std::max(direct, projected_square(cfg.space().gram_double(), a.to_double(), h.basis()));
      REQUIRE(w.value == doctest::Approx(direct).epsilon(1e-9));
    }
  }
}

TEST_CASE("alpha examples") {
  const QuadraticSpace s = QuadraticSpace::diagonal({1, -1});
  const AlphaResult empty = alpha_squared(MonopoleConfiguration::empty(s));
  CHECK(empty.value == 0.0);

  const AlphaResult lor = alpha_squared(MonopoleConfiguration::explicit_set(s, {{3, 2}, {-3, -2}}), quick());
  CHECK(std::abs(lor.value - 5.0) <= 1e-4);
  CHECK_FALSE(lor.boundary_flag);
  REQUIRE(lor.achieving_subspace.has_value());

  const auto triple = MonopoleConfiguration::explicit_set(
      QuadraticSpace(DenseMatrix<Rational>::from_rows({{1, 0, 0}, {0, Rational(3, 4), 0}, {0, 0, -1}})),
      {{1, 0, 1}, {-1, 0, -1}, {Rational(-1, 2), 1, 1}, {Rational(1, 2), -1, -1}, {Rational(-1, 2), -1, 1},
       {Rational(1, 2), 1, -1}});
  const AlphaResult t = alpha_squared(triple, quick(8));
  CHECK(std::abs(t.value - 1.0) <= 1e-3);
  CHECK_FALSE(t.boundary_flag);
  CHECK(t.value >= 0.75);
}

TEST_CASE("alpha result invariants") {
  Rng rng(29);
  for (int trial = 0; trial < 12; ++trial) {
    const auto cfg = bt::lorentzian_configuration(rng);
    AlphaOptions o = quick(4);
    o.seed = trial;
    const AlphaResult r = alpha_squared(cfg, o);
    REQUIRE(r.achieving_subspace.has_value());
    REQUIRE(r.value >= -1e-9);
    REQUIRE(std::abs(worst_case(cfg, *r.achieving_subspace).value - r.value) <= 1e-9 * std::max(1.0, r.value));
    for (std::size_t i = 1; i < r.trace.size(); ++i) REQUIRE(r.trace[i] <= r.trace[i - 1]);
    REQUIRE(!r.trace.empty());
    REQUIRE(std::abs(r.trace.back() - r.value) <= 1e-9 * std::max(1.0, r.value));
    const double beta = to_double(beta_squared(cfg).value);
    REQUIRE(std::abs(r.value - beta) <= 1e-4 * std::max(1.0, beta));
  }
}

TEST_CASE("alpha is deterministic across thread counts") {
  Rng rng(2);
  const auto cfg = bt::lorentzian_configuration(rng);
  AlphaOptions a = quick(5);
  a.threads = 1;
  AlphaOptions b = a;
  b.threads = 4;
  const AlphaResult ra = alpha_squared(cfg, a), rb = alpha_squared(cfg, b);
  CHECK(ra.value == rb.value);
  CHECK(ra.best_start == rb.best_start);
  CHECK(ra.trace == rb.trace);
}

TEST_CASE("negative span gives zero alpha") {
  Rng rng(41);
  for (int trial = 0; trial < 10; ++trial) {
    const auto cfg = bt::negative_span_configuration(rng, trial % 2 == 1);
    REQUIRE(beta_squared(cfg).value == 0);
    AlphaOptions o = quick(4);
    o.seed = trial;
    REQUIRE(alpha_squared(cfg, o).value <= 1e-4);
  }
}
