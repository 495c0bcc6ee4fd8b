#include "betahull/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "betahull/errors.hpp"

namespace betahull {

QuadraticSpace::QuadraticSpace(DenseMatrix<Rational> gram) : gram_(std::move(gram)) {
  if (gram_.rows() == 0 || gram_.rows() != gram_.cols()) {
    throw InputError("gram matrix must be square with dim >= 1");
  }
  for (std::size_t i = 0; i < gram_.rows(); ++i)
    for (std::size_t j = 0; j < gram_.cols(); ++j) gram_(i, j).canonicalize();
  if (!gram_.is_symmetric()) throw InputError("gram matrix is not symmetric");
}

QuadraticSpace QuadraticSpace::diagonal(const std::vector<Rational>& entries) {
  DenseMatrix<Rational> g(entries.size(), entries.size());
  for (std::size_t i = 0; i < entries.size(); ++i) g(i, i) = entries[i];
  return QuadraticSpace(std::move(g));
}

Eigen::MatrixXd QuadraticSpace::gram_double() const {
  Eigen::MatrixXd g(dim(), dim());
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < dim(); ++j) g(i, j) = to_double(gram_(i, j));
  return g;
}

bool CohomologyClass::is_zero() const {
  return std::all_of(coords.begin(), coords.end(), [](const Rational& c) { return sgn(c) == 0; });
}

CohomologyClass CohomologyClass::operator-() const {
  CohomologyClass out = *this;
  for (auto& c : out.coords) c = -c;
  return out;
}

CohomologyClass CohomologyClass::scaled(const Rational& factor) const {
  CohomologyClass out = *this;
  for (auto& c : out.coords) c *= factor;
  return out;
}

Eigen::VectorXd CohomologyClass::to_double() const {
  Eigen::VectorXd v(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) v(static_cast<Eigen::Index>(i)) = betahull::to_double(coords[i]);
  return v;
}

CohomologyClass operator+(const CohomologyClass& a, const CohomologyClass& b) {
  if (a.size() != b.size()) throw InputError("class dimension mismatch");
  CohomologyClass out = a;
  for (std::size_t i = 0; i < a.size(); ++i) out.coords[i] += b.coords[i];
  return out;
}

Eigen::MatrixXd SylvesterBasis::float_basis() const {
  const std::size_t n = basis.rows();
  Eigen::MatrixXd s(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    const double d = std::abs(to_double(diagonal[j]));
    const double scale = d > 0 ? 1.0 / std::sqrt(d) : 1.0;
    for (std::size_t i = 0; i < n; ++i) s(i, j) = to_double(basis(i, j)) * scale;
  }
  return s;
}

Eigen::MatrixXd SylvesterBasis::float_coordinates() const {
  const std::size_t n = basis.rows();
  auto inv = inverse(basis);
  if (!inv) throw std::logic_error("Sylvester basis is singular");
  Eigen::MatrixXd c(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = std::abs(to_double(diagonal[i]));
    const double scale = d > 0 ? std::sqrt(d) : 1.0;
    for (std::size_t j = 0; j < n; ++j) c(i, j) = to_double((*inv)(i, j)) * scale;
  }
  return c;
}

Subspace::Subspace(DenseMatrix<Rational> basis) : basis_(std::move(basis)) {
  if (rank(basis_) != basis_.cols()) throw InputError("subspace basis is not of full column rank");
}

Subspace Subspace::span(const std::vector<CohomologyClass>& vectors, std::size_t dim) {
  // Keep a maximal independent subset, in order.
  std::vector<Vector<Rational>> kept;
  for (const auto& v : vectors) {
    if (v.size() != dim) throw InputError("class dimension mismatch");
    kept.push_back(v.coords);
    if (rank(DenseMatrix<Rational>::from_columns(kept, dim)) < kept.size()) kept.pop_back();
  }
  return Subspace(DenseMatrix<Rational>::from_columns(kept, dim));
}

Rational pairing(const QuadraticSpace& space, const CohomologyClass& a, const CohomologyClass& b) {
  if (a.size() != space.dim() || b.size() != space.dim()) {
    throw InputError("pairing: class dimension does not match the space");
  }
  return bilinear(space.gram(), a.coords, b.coords);
}

SylvesterBasis signature_decompose(const QuadraticSpace& space) {
  Congruence<Rational> c = congruence_diagonalize(space.gram());
  const std::size_t n = space.dim();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto rank_of = [&](std::size_t i) {
    const int s = sgn(c.diagonal[i]);
    return s > 0 ? 0 : (s < 0 ? 1 : 2);
  };
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank_of(a) < rank_of(b); });

  SylvesterBasis out;
  out.basis = DenseMatrix<Rational>(n, n);
  out.diagonal.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t src = order[j];
    for (std::size_t i = 0; i < n; ++i) out.basis(i, j) = c.basis(i, src);
    out.diagonal[j] = c.diagonal[src];
    switch (rank_of(src)) {
      case 0: ++out.signature.positive; break;
      case 1: ++out.signature.negative; break;
      default: ++out.signature.null; break;
    }
  }
  return out;
}

DenseMatrix<Rational> restricted_gram(const QuadraticSpace& space, const Subspace& h) {
  if (h.ambient_dim() != space.dim()) throw InputError("subspace dimension does not match the space");
  return multiply(transpose(h.basis()), multiply(space.gram(), h.basis()));
}

CohomologyClass project_onto(const QuadraticSpace& space, const CohomologyClass& a, const Subspace& h) {
  if (a.size() != space.dim()) throw InputError("project_onto: class dimension mismatch");
  const DenseMatrix<Rational> bt = transpose(h.basis());
  const DenseMatrix<Rational> restricted = restricted_gram(space, h);
  const Vector<Rational> rhs = multiply(bt, multiply(space.gram(), a.coords));
  auto coeff = solve(restricted, rhs);
  if (!coeff) throw DegenerateSubspaceError("restricted Gram matrix is singular");
  return CohomologyClass(multiply(h.basis(), *coeff));
}

Eigen::VectorXd project_onto(const Eigen::MatrixXd& gram, const Eigen::VectorXd& a, const Eigen::MatrixXd& basis) {
  const Eigen::MatrixXd gb = gram * basis;
  const Eigen::MatrixXd restricted = basis.transpose() * gb;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(restricted);
  if (!lu.isInvertible()) throw DegenerateSubspaceError("restricted Gram matrix is singular");
  return basis * lu.solve(gb.transpose() * a);
}

}  // namespace betahull
