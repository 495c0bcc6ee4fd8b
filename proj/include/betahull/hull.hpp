#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "betahull/quadform.hpp"

namespace betahull {

enum class SymmetryPolicy {
  Strict,      // asymmetric explicit input is an InputError
  Symmetrize,  // missing negatives are added and reported as warnings
};

/// Finite centrally symmetric set of classes in a quadratic space.
///
/// Explicit: the classes are listed. Zonotope: generators u_1..u_m, and the
/// set is all sign sums e_1 u_1 + ... + e_m u_m. Class index j of a
/// zonotope encodes the signs bitwise: bit i set means e_i = -1.
class MonopoleConfiguration {
 public:
  struct Explicit {
    std::vector<CohomologyClass> classes;
    friend bool operator==(const Explicit&, const Explicit&) = default;
  };
  struct Zonotope {
    std::vector<CohomologyClass> base;
    friend bool operator==(const Zonotope&, const Zonotope&) = default;
  };

  static MonopoleConfiguration explicit_set(QuadraticSpace space, std::vector<CohomologyClass> classes,
                                            SymmetryPolicy policy = SymmetryPolicy::Strict,
                                            std::vector<std::string>* warnings = nullptr);
  static MonopoleConfiguration zonotope(QuadraticSpace space, std::vector<CohomologyClass> base);
  static MonopoleConfiguration empty(QuadraticSpace space);

  const QuadraticSpace& space() const { return space_; }
  bool is_zonotope() const { return std::holds_alternative<Zonotope>(rep_); }
  bool empty() const;

  // Explicit classes; throws std::logic_error on a zonotope.
  const std::vector<CohomologyClass>& classes() const;
  // Zonotope generators; throws std::logic_error on an explicit set.
  const std::vector<CohomologyClass>& generators() const;

  std::size_t class_count() const;
  CohomologyClass class_at(std::size_t index) const;
  // Label used in witnesses: decimal index, or a sign string like "+-+".
  std::string class_label(std::size_t index) const;

  // Zonotope expanded to its 2^m classes in index order.
  MonopoleConfiguration expanded() const;
  MonopoleConfiguration scaled(const Rational& factor) const;
  // Image under the change of basis a -> S a; the form becomes
  // S^{-T} G S^{-1}, so pairings are preserved.
  MonopoleConfiguration transformed(const DenseMatrix<Rational>& s) const;

  friend bool operator==(const MonopoleConfiguration&, const MonopoleConfiguration&) = default;

 private:
  MonopoleConfiguration(QuadraticSpace space, std::variant<Explicit, Zonotope> rep)
      : space_(std::move(space)), rep_(std::move(rep)) {}

  QuadraticSpace space_;
  std::variant<Explicit, Zonotope> rep_;
};

std::string sign_pattern_label(std::size_t index, std::size_t generators);

struct BarycentricTerm {
  std::size_t class_index = 0;
  std::string label;
  Rational weight;
};

struct HullWitness {
  CohomologyClass point;
  std::vector<BarycentricTerm> barycentric;
  Rational value;
};

enum class BetaMode { Exact, Heuristic };

std::string to_string(BetaMode mode);

struct BetaResult {
  Rational value;
  HullWitness witness;
  BetaMode mode = BetaMode::Exact;
  std::optional<double> oracle_gap;
  // Supports (class labels joined by ',') or box face patterns of all
  // maximisers found, capped at 64 entries.
  std::vector<std::string> attaining;
  std::size_t attaining_count = 0;
};

struct BetaOptions {
  std::size_t generator_cap = 14;
  std::size_t vertex_cap = 12;
  bool allow_heuristic = true;
  std::size_t heuristic_starts = 100;
  std::uint64_t seed = 0;
  std::size_t oracle_samples = 100000;
};

struct RemovedPoint {
  std::size_t index = 0;
  std::vector<std::pair<std::size_t, Rational>> certificate;  // retained index, weight
};

struct ExtremePointFilter {
  std::vector<std::size_t> retained;
  std::vector<RemovedPoint> removed;
};

ExtremePointFilter filter_extreme_points(const MonopoleConfiguration& cfg);

std::vector<CohomologyClass> extreme_points(const MonopoleConfiguration& cfg);

struct BoxMaximum {
  Rational value;
  Vector<Rational> point;  // s in [-1, 1]^m
  // Per coordinate '+' (fixed at +1), '-' (fixed at -1) or 'f' (free).
  std::string pattern;
  std::vector<std::string> attaining_patterns;  // capped at 64
  std::size_t attaining_count = 0;
  std::size_t faces_examined = 0;
};

/// Exact maximum of s^T U s over the box [-1, 1]^m.
BoxMaximum max_quadratic_on_box(const DenseMatrix<Rational>& generator_gram, std::size_t cap = 14);

BetaResult beta_squared(const MonopoleConfiguration& cfg, const BetaOptions& options = {});

/// Lower bound for beta^2 from random points of the hull plus all vertices.
double monte_carlo_oracle(const MonopoleConfiguration& cfg, std::size_t samples, std::uint64_t seed);

/// Same sampler on floating-point data (vertices given as rows of points).
double monte_carlo_oracle(const Eigen::MatrixXd& gram, const std::vector<Eigen::VectorXd>& vertices,
                          std::size_t samples, std::uint64_t seed);

/// Gram matrix U_ij = pairing(u_i, u_j) of the zonotope generators.
DenseMatrix<Rational> generator_gram(const MonopoleConfiguration& cfg);

/// True when the form restricted to span of the classes is negative
/// semidefinite.
bool span_is_negative_semidefinite(const MonopoleConfiguration& cfg);

}  // namespace betahull
