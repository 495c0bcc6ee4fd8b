#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "betahull/rational.hpp"

namespace betahull {

template <class T>
using Vector = std::vector<T>;

/// Row-major dense matrix over an exact field.
///
/// Eigen is used for the floating-point side of the library; the exact side
/// needs field types (mpq_class, QuadraticSurd) whose expression templates do
/// not mix well with Eigen, hence this small container.
template <class T>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  static DenseMatrix from_rows(const std::vector<Vector<T>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    DenseMatrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw std::invalid_argument("ragged matrix rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = rows[i][j];
    }
    return m;
  }

  static DenseMatrix from_columns(const std::vector<Vector<T>>& columns, std::size_t rows) {
    DenseMatrix m(rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw std::invalid_argument("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Vector<T> column(std::size_t j) const {
    Vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  Vector<T> row(std::size_t i) const {
    return Vector<T>(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                     data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }

  void swap_rows(std::size_t a, std::size_t b) {
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  bool is_symmetric() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!((*this)(i, j) == (*this)(j, i))) return false;
    return true;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

template <class T>
DenseMatrix<T> transpose(const DenseMatrix<T>& a) {
  DenseMatrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <class T>
DenseMatrix<T> multiply(const DenseMatrix<T>& a, const DenseMatrix<T>& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matrix product dimension mismatch");
  DenseMatrix<T> c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
    }
  return c;
}

template <class T>
Vector<T> multiply(const DenseMatrix<T>& a, const Vector<T>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matrix-vector dimension mismatch");
  Vector<T> y(a.rows(), T(0));
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) y[i] += a(i, j) * x[j];
  return y;
}

// x^T G y
template <class T>
T bilinear(const DenseMatrix<T>& gram, const Vector<T>& x, const Vector<T>& y) {
  T total(0);
  for (std::size_t i = 0; i < gram.rows(); ++i) {
    if (is_zero(x[i])) continue;
    T row(0);
    for (std::size_t j = 0; j < gram.cols(); ++j) row += gram(i, j) * y[j];
    total += x[i] * row;
  }
  return total;
}

/// Solves A X = B exactly by Gauss-Jordan elimination. Returns nullopt when
/// A is singular.
template <class T>
std::optional<DenseMatrix<T>> solve(DenseMatrix<T> a, DenseMatrix<T> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n || b.rows() != n) throw std::invalid_argument("solve dimension mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    while (pivot < n && is_zero(a(pivot, k))) ++pivot;
    if (pivot == n) return std::nullopt;
    if (pivot != k) {
      a.swap_rows(pivot, k);
      b.swap_rows(pivot, k);
    }
    const T inv = T(1) / a(k, k);
    for (std::size_t j = k; j < n; ++j) a(k, j) *= inv;
    for (std::size_t j = 0; j < b.cols(); ++j) b(k, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || is_zero(a(i, k))) continue;
      const T f = a(i, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(i, j) -= f * b(k, j);
    }
  }
  return b;
}

template <class T>
std::optional<Vector<T>> solve(const DenseMatrix<T>& a, const Vector<T>& rhs) {
  auto x = solve(a, DenseMatrix<T>::from_columns({rhs}, rhs.size()));
  if (!x) return std::nullopt;
  return x->column(0);
}

template <class T>
std::optional<DenseMatrix<T>> inverse(const DenseMatrix<T>& a) {
  return solve(a, DenseMatrix<T>::identity(a.rows()));
}

template <class T>
std::size_t rank(DenseMatrix<T> a) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < a.cols() && r < a.rows(); ++c) {
    std::size_t pivot = r;
    while (pivot < a.rows() && is_zero(a(pivot, c))) ++pivot;
    if (pivot == a.rows()) continue;
    a.swap_rows(pivot, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (is_zero(a(i, c))) continue;
      const T f = a(i, c) / a(r, c);
      for (std::size_t j = c; j < a.cols(); ++j) a(i, j) -= f * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Result of a symmetric congruence reduction: basis^T * G * basis is
/// diagonal with the given entries.
template <class T>
struct Congruence {
  DenseMatrix<T> basis;  // columns are the new basis vectors
  Vector<T> diagonal;
};

/// Symmetric Gaussian congruence without square roots.
///
/// Zero pivots are repaired first by a symmetric swap with a later nonzero
/// diagonal entry, then by adding a column j with G(k,j) != 0 onto column k,
/// which makes the pivot 2 G(k,j). Rows that vanish identically belong to
/// the radical and are left as zero diagonal entries.
template <class T>
Congruence<T> congruence_diagonalize(const DenseMatrix<T>& gram) {
  const std::size_t n = gram.rows();
  DenseMatrix<T> a = gram;
  DenseMatrix<T> p = DenseMatrix<T>::identity(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (is_zero(a(k, k))) {
      std::size_t swap_with = n;
      for (std::size_t j = k + 1; j < n; ++j) {
        if (!is_zero(a(j, j))) {
          swap_with = j;
          break;
        }
      }
      if (swap_with != n) {
        a.swap_rows(k, swap_with);
        a.swap_cols(k, swap_with);
        p.swap_cols(k, swap_with);
      } else {
        std::size_t partner = n;
        for (std::size_t j = k + 1; j < n; ++j) {
          if (!is_zero(a(k, j))) {
            partner = j;
            break;
          }
        }
        if (partner == n) continue;  // row k is zero: radical direction
        for (std::size_t i = 0; i < n; ++i) a(i, k) += a(i, partner);
        for (std::size_t j = 0; j < n; ++j) a(k, j) += a(partner, j);
        for (std::size_t i = 0; i < n; ++i) p(i, k) += p(i, partner);
      }
    }
    const T pivot = a(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      const T f = a(i, k) / pivot;
      for (std::size_t j = 0; j < n; ++j) a(i, j) -= f * a(k, j);
      for (std::size_t j = 0; j < n; ++j) a(j, i) -= f * a(j, k);
      for (std::size_t r = 0; r < n; ++r) p(r, i) -= f * p(r, k);
    }
  }
  Congruence<T> out{std::move(p), Vector<T>(n)};
  for (std::size_t i = 0; i < n; ++i) out.diagonal[i] = a(i, i);
  return out;
}

struct Inertia {
  std::size_t positive = 0;
  std::size_t negative = 0;
  std::size_t zero = 0;
};

template <class T>
Inertia inertia(const DenseMatrix<T>& gram) {
  Inertia in;
  for (const T& d : congruence_diagonalize(gram).diagonal) {
    const int s = sign_of(d);
    if (s > 0)
      ++in.positive;
    else if (s < 0)
      ++in.negative;
    else
      ++in.zero;
  }
  return in;
}

template <class T>
bool is_negative_semidefinite(const DenseMatrix<T>& gram) {
  return inertia(gram).positive == 0;
}

template <class T>
bool is_negative_definite(const DenseMatrix<T>& gram) {
  const Inertia in = inertia(gram);
  return in.positive == 0 && in.zero == 0;
}

}  // namespace betahull
