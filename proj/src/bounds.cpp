#include "betahull/bounds.hpp"

#include <cmath>
#include <numbers>

#include "betahull/errors.hpp"

namespace betahull {

namespace {

constexpr double kPiSq = std::numbers::pi * std::numbers::pi;

void require_nonnegative(const Rational& beta_sq) {
  if (sgn(beta_sq) < 0) throw InputError("beta^2 must be nonnegative");
}

EinsteinCheck compare(long lhs, const Rational& rhs, const char* equality_note) {
  EinsteinCheck c;
  c.lhs = lhs;
  c.rhs = rhs;
  const int cmp = ::cmp(Rational(lhs), rhs);
  if (cmp < 0) {
    c.verdict = Verdict::Obstructed;
    c.note = "inequality fails: no Einstein metric";
  } else if (cmp == 0) {
    c.verdict = Verdict::Borderline;
    c.note = equality_note;
  } else {
    c.verdict = Verdict::Undecided;
  }
  return c;
}

}  // namespace

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Obstructed: return "OBSTRUCTED";
    case Verdict::Borderline: return "BORDERLINE";
    case Verdict::Undecided: return "UNDECIDED";
  }
  return "UNDECIDED";
}

CurvatureBounds curvature_bounds(const Rational& beta_sq) {
  require_nonnegative(beta_sq);
  CurvatureBounds b;
  b.scalar_coefficient = 32 * beta_sq;
  b.weyl_coefficient = 72 * beta_sq;
  b.scalar_L2_lower = 32.0 * kPiSq * to_double(beta_sq);
  b.weyl_mixed_lower = 72.0 * kPiSq * to_double(beta_sq);
  if (sgn(beta_sq) > 0) b.yamabe_upper = -4.0 * std::numbers::sqrt2 * std::numbers::pi * std::sqrt(to_double(beta_sq));
  return b;
}

EinsteinObstruction einstein_obstruction(const ManifoldModel& model, const Rational& beta_sq) {
  require_nonnegative(beta_sq);
  EinsteinObstruction e;
  const Rational third = beta_sq / 3;
  e.minus = compare(model.two_chi_minus_three_tau(), third,
                    sgn(beta_sq) > 0 ? "equality case: an Einstein metric would be complex-hyperbolic (CH2/Gamma)"
                                     : "equality case: both sides vanish");
  e.plus = compare(model.two_chi_plus_three_tau(), Rational(2 * third),
                   "equality case: both sides vanish; an Einstein metric would be hyper-Kaehler and M "
                   "diffeomorphic to K3 or T4");
  e.overall = std::max(e.minus.verdict, e.plus.verdict);
  return e;
}

RicciBound ricci_bound(const ManifoldModel& model, const Rational& beta_sq) {
  require_nonnegative(beta_sq);
  RicciBound r;
  const Rational raw = 8 * (2 * beta_sq - model.two_chi_plus_three_tau());
  if (sgn(raw) > 0) {
    r.coefficient = raw;
    r.note = "equality iff g is Kaehler-Einstein";
  } else {
    r.coefficient = 0;
    r.note = "vacuous: 2 chi + 3 tau >= 2 beta^2";
  }
  r.value = to_double(r.coefficient) * kPiSq;
  return r;
}

BoundsReport bounds_report(const ManifoldModel& model, const Rational& beta_sq, std::optional<double> alpha_sq) {
  BoundsReport r;
  r.beta_sq = beta_sq;
  r.alpha_sq = alpha_sq;
  r.curvature = curvature_bounds(beta_sq);
  r.einstein = einstein_obstruction(model, beta_sq);
  r.ricci = ricci_bound(model, beta_sq);
  r.notes = model.hypothesis_warnings;
  if (sgn(beta_sq) == 0) r.notes.push_back("beta^2 = 0: curvature and Yamabe bounds are vacuous");
  return r;
}

}  // namespace betahull
