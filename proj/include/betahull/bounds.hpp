#pragma once

#include <optional>
#include <string>
#include <vector>

#include "betahull/manifold.hpp"
#include "betahull/rational.hpp"

namespace betahull {

enum class Verdict { Undecided, Borderline, Obstructed };

std::string to_string(Verdict v);

/// Curvature estimates. The *_coefficient fields are the exact multipliers
/// of pi^2; the doubles are for display.
struct CurvatureBounds {
  Rational scalar_coefficient;  // 32 beta^2
  Rational weyl_coefficient;    // 72 beta^2
  double scalar_L2_lower = 0.0;
  double weyl_mixed_lower = 0.0;
  double yamabe_upper = 0.0;
};

CurvatureBounds curvature_bounds(const Rational& beta_sq);

/// One of the two Einstein inequalities, lhs >= rhs.
struct EinsteinCheck {
  long lhs = 0;
  Rational rhs;
  Verdict verdict = Verdict::Undecided;
  std::string note;
};

struct EinsteinObstruction {
  EinsteinCheck minus;  // 2 chi - 3 tau >= beta^2 / 3
  EinsteinCheck plus;   // 2 chi + 3 tau >= 2 beta^2 / 3
  Verdict overall = Verdict::Undecided;
};

EinsteinObstruction einstein_obstruction(const ManifoldModel& model, const Rational& beta_sq);

struct RicciBound {
  Rational coefficient;  // max(0, 8 (2 beta^2 - (2 chi + 3 tau))), multiplier of pi^2
  double value = 0.0;
  std::string note;
};

RicciBound ricci_bound(const ManifoldModel& model, const Rational& beta_sq);

struct BoundsReport {
  Rational beta_sq;
  std::optional<double> alpha_sq;
  CurvatureBounds curvature;
  EinsteinObstruction einstein;
  RicciBound ricci;
  std::vector<std::string> notes;
};

BoundsReport bounds_report(const ManifoldModel& model, const Rational& beta_sq,
                           std::optional<double> alpha_sq = std::nullopt);

}  // namespace betahull
