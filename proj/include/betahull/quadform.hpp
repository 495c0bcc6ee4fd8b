#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

#include "betahull/matrix.hpp"
#include "betahull/rational.hpp"

namespace betahull {

/// Finite-dimensional real vector space with a symmetric, possibly
/// indefinite or degenerate, bilinear form given by an exact Gram matrix.
class QuadraticSpace {
 public:
  QuadraticSpace() = default;
  explicit QuadraticSpace(DenseMatrix<Rational> gram);

  static QuadraticSpace diagonal(const std::vector<Rational>& entries);

  std::size_t dim() const { return gram_.rows(); }
  const DenseMatrix<Rational>& gram() const { return gram_; }
  Eigen::MatrixXd gram_double() const;

  friend bool operator==(const QuadraticSpace&, const QuadraticSpace&) = default;

 private:
  DenseMatrix<Rational> gram_;
};

/// Coordinate vector of a class in the basis of its owning space.
struct CohomologyClass {
  Vector<Rational> coords;

  CohomologyClass() = default;
  explicit CohomologyClass(Vector<Rational> c) : coords(std::move(c)) {}
  CohomologyClass(std::initializer_list<Rational> c) : coords(c) {}

  std::size_t size() const { return coords.size(); }
  bool is_zero() const;
  CohomologyClass operator-() const;
  CohomologyClass scaled(const Rational& factor) const;
  Eigen::VectorXd to_double() const;

  friend CohomologyClass operator+(const CohomologyClass& a, const CohomologyClass& b);
  friend bool operator==(const CohomologyClass&, const CohomologyClass&) = default;
  friend bool operator<(const CohomologyClass& a, const CohomologyClass& b) { return a.coords < b.coords; }
};

struct Signature {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t null = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// Basis in which the form is diagonal, ordered positive, negative, null.
///
/// In exact mode the diagonal keeps the signed rationals produced by the
/// congruence (no square roots); float_basis() rescales the nonnull
/// columns so that the diagonal reads +1/-1.
struct SylvesterBasis {
  DenseMatrix<Rational> basis;  // columns
  Vector<Rational> diagonal;
  Signature signature;

  Eigen::MatrixXd float_basis() const;
  // Inverse of float_basis(); rows give Sylvester coordinates.
  Eigen::MatrixXd float_coordinates() const;
};

/// Subspace spanned by the columns of a full-column-rank matrix.
class Subspace {
 public:
  explicit Subspace(DenseMatrix<Rational> basis);
  static Subspace span(const std::vector<CohomologyClass>& vectors, std::size_t dim);

  std::size_t ambient_dim() const { return basis_.rows(); }
  std::size_t dim() const { return basis_.cols(); }
  const DenseMatrix<Rational>& basis() const { return basis_; }

 private:
  DenseMatrix<Rational> basis_;
};

Rational pairing(const QuadraticSpace& space, const CohomologyClass& a, const CohomologyClass& b);

inline Rational square(const QuadraticSpace& space, const CohomologyClass& a) { return pairing(space, a, a); }

SylvesterBasis signature_decompose(const QuadraticSpace& space);

inline Signature signature(const QuadraticSpace& space) { return signature_decompose(space).signature; }

/// Gram matrix of the form restricted to the subspace, B^T G B.
DenseMatrix<Rational> restricted_gram(const QuadraticSpace& space, const Subspace& h);

/// Q-orthogonal projection of a onto h: B (B^T G B)^{-1} B^T G a.
/// Throws DegenerateSubspaceError if the restricted Gram is singular.
CohomologyClass project_onto(const QuadraticSpace& space, const CohomologyClass& a, const Subspace& h);

/// Floating-point counterpart for a basis given in doubles.
Eigen::VectorXd project_onto(const Eigen::MatrixXd& gram, const Eigen::VectorXd& a, const Eigen::MatrixXd& basis);

}  // namespace betahull
