#include "doctest.h"
#include "generators.hpp"

#include "betahull/errors.hpp"
#include "betahull/grassmann.hpp"
#include "betahull/manifold.hpp"

using namespace betahull;
namespace bt = betahull::testing;

namespace {

BuildingBlock surface(long c1sq) { return BuildingBlock::general_type(c1sq, 24 - c1sq, c1sq - 16, 3); }

}  // namespace

TEST_CASE("catalog entries") {
  const ManifoldModel k3 = connected_sum({BuildingBlock::k3()});
  CHECK(k3.chi == 24);
  CHECK(k3.tau == -16);
  CHECK(k3.b_plus == 3);
  CHECK(k3.hypothesis_warnings.empty());
  const ManifoldModel t4 = connected_sum({BuildingBlock::t4()});
  CHECK((t4.chi == 0 && t4.tau == 0 && t4.b_plus == 3));
  const ManifoldModel cp = connected_sum({BuildingBlock::cp2bar()});
  CHECK((cp.chi == 3 && cp.tau == -1 && cp.b_plus == 0));
  CHECK(cp.hypothesis_warnings.size() == 1);
}

TEST_CASE("connected sum arithmetic") {
  const BuildingBlock x = BuildingBlock::general_type(9, 9, -3, 2);
  CHECK_NOTHROW(x.validate());
  const ManifoldModel m = connected_sum({x, BuildingBlock::cp2bar(4)});
  CHECK(m.chi == 13);
  CHECK(m.tau == -7);
  CHECK(m.two_chi_plus_three_tau() == 5);
  CHECK(m.two_chi_plus_three_tau() == 9 - 4);
  CHECK(m.summand_count() == 5);

  const ManifoldModel xyz = connected_sum({surface(2), surface(3), surface(5), BuildingBlock::cp2bar(2)});
  CHECK(xyz.hypothesis_warnings.empty());
  CHECK(xyz.chi == (22 + 21 + 19 + 6) - 2 * 4);
  CHECK(xyz.tau == (-14 - 13 - 11 - 2));
  CHECK(xyz.two_chi_plus_three_tau() == 2 + 3 + 5 - 2 - 4 * 2);

  for (long c = 1; c <= 9; ++c)
    for (std::size_t k = 0; k <= 9; ++k)
      REQUIRE(connected_sum(bt::with_blowups({surface(c)}, k)).two_chi_plus_three_tau() == c - static_cast<long>(k));
}

TEST_CASE("block validation and warnings") {
  CHECK_THROWS_AS(connected_sum({BuildingBlock::general_type(9, 9, -2, 2)}), InputError);
  CHECK_THROWS_AS(connected_sum({BuildingBlock::general_type(0, 0, 0, 2)}), InputError);
  CHECK_THROWS_AS(connected_sum({BuildingBlock::general_type(9, 9, -3, 1)}), InputError);
  CHECK_THROWS_AS(connected_sum({}), InputError);
  CHECK_THROWS_AS(connected_sum({BuildingBlock::cp2bar(0)}), InputError);
  CHECK_THROWS_AS(connected_sum({BuildingBlock::three_manifold_times_circle(-1)}), InputError);

  const ManifoldModel even = connected_sum({BuildingBlock::general_type(9, 9, -3, 2, false), surface(4)});
  CHECK(even.hypothesis_warnings.size() == 1);
  const ManifoldModel nsc = connected_sum({BuildingBlock::general_type(9, 9, -3, 2, true, false), surface(4)});
  CHECK(nsc.hypothesis_warnings.size() == 1);
  const ManifoldModel five = connected_sum({surface(1), surface(1), surface(1), surface(1), surface(1)});
  CHECK(five.hypothesis_warnings.size() == 1);
  CHECK_THROWS_AS(monopole_configuration(five), UnsupportedModelError);
}

TEST_CASE("generated configurations") {
  const GeneratedConfiguration g = monopole_configuration(connected_sum({surface(8), BuildingBlock::cp2bar(2)}));
  REQUIRE(g.cfg.is_zonotope());
  CHECK(g.cfg.generators() == std::vector<CohomologyClass>{{1, 0, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}});
  CHECK(g.cfg.space() == QuadraticSpace::diagonal({8, -1, -1, -1}));
  CHECK(g.known_beta == Rational(8));
  CHECK(beta_squared(g.cfg).value == 8);
  CHECK(g.cfg.class_count() == 8);
  CHECK(g.ambient == "[[8,0],[0,-1]] + <-1>^2");

  const GeneratedConfiguration t =
      monopole_configuration(connected_sum({surface(2), surface(3), surface(5), BuildingBlock::cp2bar()}));
  CHECK(t.known_beta == Rational(10));
  CHECK(beta_squared(t.cfg).value == 10);
  // Per-block planes are mutually orthogonal.
  const auto& gens = t.cfg.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j) CHECK(pairing(t.cfg.space(), gens[i], gens[j]) == 0);
  AlphaOptions o;
  o.starts = 4;
  CHECK(std::abs(alpha_squared(t.cfg, o).value - 10.0) <= 1e-3 * 10);

  const GeneratedConfiguration n = monopole_configuration(connected_sum({BuildingBlock::three_manifold_times_circle(2)}));
  CHECK(n.known_beta == Rational(0));
  CHECK(beta_squared(n.cfg).value == 0);
  CHECK(n.cfg.class_count() == 4);
  const GeneratedConfiguration n0 = monopole_configuration(connected_sum({BuildingBlock::three_manifold_times_circle(0)}));
  CHECK(n0.cfg.empty());
  CHECK(n0.ambient == "[[0]]");
  const GeneratedConfiguration n0x =
      monopole_configuration(connected_sum({BuildingBlock::three_manifold_times_circle(0)}), {1, 1});
  CHECK(n0x.ambient == "<1>^1 + <-1>^1");
  CHECK(n0x.cfg.space().dim() == 2);

  const GeneratedConfiguration k3 = monopole_configuration(connected_sum({BuildingBlock::k3()}));
  CHECK(k3.cfg.class_count() == 1);
  CHECK(k3.cfg.class_at(0).is_zero());
  CHECK(beta_squared(k3.cfg).value == 0);

  CHECK_THROWS_AS(monopole_configuration(connected_sum({BuildingBlock::k3(), BuildingBlock::cp2bar()})),
                  UnsupportedModelError);
  CHECK_THROWS_AS(monopole_configuration(connected_sum({BuildingBlock::cp2bar(3)})), UnsupportedModelError);
}

TEST_CASE("ambient extension is orthogonal") {
  const ManifoldModel m = connected_sum({surface(5), BuildingBlock::cp2bar(1)});
  const GeneratedConfiguration g = monopole_configuration(m, {2, 1});
  CHECK(g.cfg.space().dim() == 3 + 3);
  CHECK(g.ambient == "[[5,0],[0,-1]] + <-1>^1 + <1>^2 + <-1>^1");
  CHECK(beta_squared(g.cfg).value == 5);
  AlphaOptions o;
  o.starts = 6;
  CHECK(alpha_squared(g.cfg, o).value == doctest::Approx(5.0).epsilon(1e-4));
}

TEST_CASE("generated class count") {
  for (std::size_t k = 0; k <= 5; ++k) {
    const GeneratedConfiguration g = monopole_configuration(connected_sum(bt::with_blowups({surface(3), surface(4)}, k)));
    CHECK(g.cfg.class_count() == (std::size_t{1} << (2 + k)));
    const auto e = g.cfg.expanded();
    for (const auto& a : e.classes()) CHECK(std::find(e.classes().begin(), e.classes().end(), -a) != e.classes().end());
  }
}
