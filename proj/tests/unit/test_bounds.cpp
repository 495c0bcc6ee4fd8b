#include "doctest.h"
#include "generators.hpp"

#include <cmath>
#include <numbers>

#include "betahull/bounds.hpp"
#include "betahull/errors.hpp"

using namespace betahull;

namespace {

ManifoldModel blowup(long c1sq, std::size_t k) {
  return connected_sum(betahull::testing::with_blowups({BuildingBlock::general_type(c1sq, 24 - c1sq, c1sq - 16, 3)}, k));
}

}  // namespace

TEST_CASE("curvature bound examples") {
  const CurvatureBounds z = curvature_bounds(0);
  CHECK(z.scalar_L2_lower == 0.0);
  CHECK(z.weyl_mixed_lower == 0.0);
  CHECK(z.yamabe_upper == 0.0);

  const CurvatureBounds b = curvature_bounds(8);
  // Second evaluation path in long double.
  const long double pi = std::numbers::pi_v<long double>;
  CHECK(b.scalar_coefficient == 256);
  CHECK(b.weyl_coefficient == 576);
  CHECK(std::abs(b.scalar_L2_lower - static_cast<double>(256 * pi * pi)) <= 1e-12 * b.scalar_L2_lower);
  CHECK(std::abs(b.weyl_mixed_lower - static_cast<double>(576 * pi * pi)) <= 1e-12 * b.weyl_mixed_lower);
  CHECK(std::abs(b.yamabe_upper + static_cast<double>(4 * std::sqrt(2.0L) * pi * std::sqrt(8.0L))) <= 1e-12 * 51);
  CHECK(b.scalar_L2_lower == doctest::Approx(2526.62).epsilon(1e-5));
  CHECK(b.weyl_mixed_lower == doctest::Approx(5684.89).epsilon(1e-5));
  CHECK(b.yamabe_upper == doctest::Approx(-50.27).epsilon(1e-4));

  CHECK(std::abs(curvature_bounds(1).yamabe_upper + 4 * std::sqrt(2.0) * std::numbers::pi) <= 1e-9);
  CHECK_THROWS_AS(curvature_bounds(-1), InputError);
}

TEST_CASE("bound ratios and monotonicity") {
  CurvatureBounds prev = curvature_bounds(0);
  for (int n = 1; n <= 40; ++n) {
    Rational beta(n, 3);
    beta.canonicalize();
    const CurvatureBounds c = curvature_bounds(beta);
    REQUIRE(c.weyl_coefficient / c.scalar_coefficient == Rational(9, 4));
    REQUIRE(c.scalar_L2_lower >= prev.scalar_L2_lower);
    REQUIRE(c.weyl_mixed_lower >= prev.weyl_mixed_lower);
    REQUIRE(c.yamabe_upper <= prev.yamabe_upper);
    REQUIRE(c.yamabe_upper <= 0);
    prev = c;
  }
}

TEST_CASE("einstein examples") {
  const ManifoldModel x = connected_sum({BuildingBlock::general_type(9, 9, -3, 2), BuildingBlock::cp2bar(4)});
  const EinsteinObstruction o = einstein_obstruction(x, 9);
  CHECK(o.plus.lhs == 5);
  CHECK(o.plus.rhs == 6);
  CHECK(o.plus.verdict == Verdict::Obstructed);
  CHECK(o.overall == Verdict::Obstructed);

  const ManifoldModel x2 = connected_sum({BuildingBlock::general_type(9, 9, -3, 2), BuildingBlock::cp2bar(2)});
  const EinsteinObstruction o2 = einstein_obstruction(x2, 9);
  CHECK(o2.plus.lhs == 7);
  CHECK(o2.minus.lhs == 2 * 11 - 3 * -5);
  CHECK(o2.minus.rhs == 3);
  CHECK(o2.overall == Verdict::Undecided);

  const EinsteinObstruction k3 = einstein_obstruction(connected_sum({BuildingBlock::k3()}), 0);
  CHECK(k3.plus.verdict == Verdict::Borderline);
  CHECK(k3.overall == Verdict::Borderline);
  CHECK(k3.plus.note.find("diffeomorphic to K3 or T4") != std::string::npos);
  CHECK(to_string(Verdict::Borderline) == "BORDERLINE");
}

TEST_CASE("obstruction table for blow-ups") {
  for (long c = 1; c <= 9; ++c)
    for (std::size_t k = 0; k <= 9; ++k) {
      const EinsteinObstruction o = einstein_obstruction(blowup(c, k), c);
      const bool expected = 3 * static_cast<long>(k) > c;
      CAPTURE(c);
      CAPTURE(k);
      REQUIRE((o.plus.verdict == Verdict::Obstructed) == expected);
      REQUIRE((o.overall == Verdict::Obstructed) == (expected || o.minus.verdict == Verdict::Obstructed));
    }
}

TEST_CASE("ricci bound") {
  const RicciBound k3 = ricci_bound(connected_sum({BuildingBlock::k3()}), 0);
  CHECK(k3.value == 0.0);
  const ManifoldModel x = connected_sum({BuildingBlock::general_type(9, 9, -3, 2), BuildingBlock::cp2bar(4)});
  const RicciBound r = ricci_bound(x, 9);
  CHECK(r.coefficient == 104);
  CHECK(r.value == doctest::Approx(104 * std::numbers::pi * std::numbers::pi));
  CHECK(r.value == doctest::Approx(1026.4).epsilon(1e-4));
  CHECK(r.note == "equality iff g is Kaehler-Einstein");
  const RicciBound v = ricci_bound(blowup(9, 0), 1);
  CHECK(v.value == 0.0);
  CHECK(v.note.rfind("vacuous", 0) == 0);
  for (long c = 1; c <= 9; ++c)
    for (std::size_t k = 0; k <= 9; ++k) {
      const ManifoldModel m = blowup(c, k);
      for (int b = 0; b <= 12; ++b) {
        const RicciBound rb = ricci_bound(m, b);
        if (2 * b <= m.two_chi_plus_three_tau()) REQUIRE(rb.value == 0.0);
        REQUIRE(sgn(rb.coefficient) >= 0);
      }
    }
}

TEST_CASE("bounds report") {
  const ManifoldModel x = blowup(9, 4);
  const BoundsReport r = bounds_report(x, 9, 9.0);
  CHECK(r.beta_sq == 9);
  CHECK(r.alpha_sq == 9.0);
  CHECK(r.einstein.overall == Verdict::Obstructed);
  CHECK(r.ricci.coefficient == 8 * (18 - 5));
  const BoundsReport k = bounds_report(connected_sum({BuildingBlock::k3()}), 0);
  CHECK(k.notes.size() == 1);
  CHECK(k.curvature.yamabe_upper == 0.0);
}
