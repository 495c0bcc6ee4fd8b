#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

#include "betahull/matrix.hpp"

namespace betahull {

/// Finds barycentric weights w >= 0, sum w = 1, with sum w_i points[i] ==
/// target, or nullopt if target is outside conv(points).
///
/// Phase-I simplex on the equality system with one artificial variable per
/// row, Bland's rule for entering and leaving variables, so it terminates on
/// degenerate vertex sets. Runs over any ordered field.
template <class T>
std::optional<Vector<T>> convex_combination(const std::vector<Vector<T>>& points, const Vector<T>& target) {
  const std::size_t n = points.size();
  if (n == 0) return std::nullopt;
  const std::size_t dim = target.size();
  const std::size_t m = dim + 1;
  const std::size_t cols = n + m;  // originals then artificials
  DenseMatrix<T> tab(m, cols + 1);
  for (std::size_t r = 0; r < m; ++r) {
    T rhs = r < dim ? target[r] : T(1);
    const bool flip = sign_of(rhs) < 0;
    for (std::size_t j = 0; j < n; ++j) {
      T coeff = r < dim ? points[j][r] : T(1);
      tab(r, j) = flip ? T(-coeff) : coeff;
    }
    tab(r, n + r) = T(1);
    tab(r, cols) = flip ? T(-rhs) : rhs;
  }
  std::vector<std::size_t> basic(m);
  for (std::size_t r = 0; r < m; ++r) basic[r] = n + r;

  // Reduced costs for minimising the artificial sum; last entry is -objective.
  Vector<T> cost(cols + 1, T(0));
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t j = 0; j <= cols; ++j)
      if (j < n || j == cols) cost[j] -= tab(r, j);

  for (;;) {
    std::size_t entering = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (sign_of(cost[j]) < 0) {
        entering = j;
        break;
      }
    }
    if (entering == cols) break;
    std::size_t leaving = m;
    T best_ratio(0);
    for (std::size_t r = 0; r < m; ++r) {
      if (sign_of(tab(r, entering)) <= 0) continue;
      T ratio = tab(r, cols) / tab(r, entering);
      if (leaving == m || ratio < best_ratio || (ratio == best_ratio && basic[r] < basic[leaving])) {
        leaving = r;
        best_ratio = ratio;
      }
    }
    if (leaving == m) break;  // unbounded direction; cannot happen for phase I
    const T inv = T(1) / tab(leaving, entering);
    for (std::size_t j = 0; j <= cols; ++j) tab(leaving, j) *= inv;
    for (std::size_t r = 0; r < m; ++r) {
      if (r == leaving || is_zero(tab(r, entering))) continue;
      const T f = tab(r, entering);
      for (std::size_t j = 0; j <= cols; ++j) tab(r, j) -= f * tab(leaving, j);
    }
    if (!is_zero(cost[entering])) {
      const T f = cost[entering];
      for (std::size_t j = 0; j <= cols; ++j) cost[j] -= f * tab(leaving, j);
    }
    basic[leaving] = entering;
  }
  if (!is_zero(cost[cols])) return std::nullopt;
  Vector<T> weights(n, T(0));
  for (std::size_t r = 0; r < m; ++r)
    if (basic[r] < n) weights[basic[r]] = tab(r, cols);
  return weights;
}

template <class T>
struct PolytopeCandidate {
  std::vector<std::size_t> support;  // increasing vertex indices
  Vector<T> weights;                 // barycentric weights on support, all > 0
  Vector<T> point;
  T value{0};
};

template <class T>
struct PolytopeMaximum {
  PolytopeCandidate<T> witness;
  std::vector<std::vector<std::size_t>> attaining_supports;  // capped list
  std::size_t attaining_count = 0;
  std::size_t faces_examined = 0;
};

/// Exact maximum of v -> v^T G v over conv(vertices).
///
/// Every point of the polytope lies in the relative interior of some simplex
/// spanned by affinely independent vertices, so the maximum is either at a
/// vertex or at an interior critical point of such a simplex at which the
/// tangential Hessian is negative definite. Supports are visited depth-first
/// in lexicographic order and a support is only extended while its tangential
/// Hessian stays negative definite: both indefiniteness and singularity are
/// inherited by every superset sharing the same base vertex, and a singular
/// negative semidefinite face attains its maximum on its relative boundary,
/// which is itself enumerated.
template <class T>
PolytopeMaximum<T> maximize_quadratic_on_polytope(const DenseMatrix<T>& gram, const std::vector<Vector<T>>& vertices,
                                                  std::size_t max_listed_supports = 64) {
  PolytopeMaximum<T> result;
  if (vertices.empty()) return result;
  const std::size_t dim = gram.rows();
  const std::size_t n = vertices.size();
  bool have_best = false;

  auto consider = [&](PolytopeCandidate<T>&& candidate) {
    if (!have_best || candidate.value > result.witness.value) {
      have_best = true;
      result.attaining_supports.assign(1, candidate.support);
      result.attaining_count = 1;
      result.witness = std::move(candidate);
    } else if (candidate.value == result.witness.value) {
      ++result.attaining_count;
      if (result.attaining_supports.size() < max_listed_supports)
        result.attaining_supports.push_back(candidate.support);
      // DFS order is lexicographic, so the stored witness already has the
      // smallest support among ties.
    }
  };

  std::vector<std::size_t> support;
  std::function<void()> visit = [&]() {
    ++result.faces_examined;
    const std::size_t k = support.size() - 1;  // number of edge directions
    const Vector<T>& base = vertices[support.front()];
    std::vector<Vector<T>> dirs(k, Vector<T>(dim));
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t c = 0; c < dim; ++c) dirs[j][c] = vertices[support[j + 1]][c] - base[c];

    PolytopeCandidate<T> cand;
    cand.support = support;
    if (k == 0) {
      cand.weights = {T(1)};
      cand.point = base;
      cand.value = bilinear(gram, base, base);
      consider(std::move(cand));
    } else {
      if (rank(DenseMatrix<T>::from_columns(dirs, dim)) < k) return;  // affinely dependent
      DenseMatrix<T> hess(k, k);
      Vector<T> rhs(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = i; j < k; ++j) {
          hess(i, j) = bilinear(gram, dirs[i], dirs[j]);
          hess(j, i) = hess(i, j);
        }
        rhs[i] = -bilinear(gram, base, dirs[i]);
      }
      if (!is_negative_definite(hess)) return;
      auto lambda = solve(hess, rhs);
      if (lambda) {
        T base_weight(1);
        bool interior = true;
        for (const T& l : *lambda) {
          base_weight -= l;
          if (sign_of(l) <= 0) interior = false;
        }
        if (sign_of(base_weight) <= 0) interior = false;
        if (interior) {
          cand.weights.push_back(base_weight);
          cand.weights.insert(cand.weights.end(), lambda->begin(), lambda->end());
          cand.point = base;
          for (std::size_t j = 0; j < k; ++j)
            for (std::size_t c = 0; c < dim; ++c) cand.point[c] += (*lambda)[j] * dirs[j][c];
          cand.value = bilinear(gram, cand.point, cand.point);
          consider(std::move(cand));
        }
      }
    }
    if (support.size() >= dim + 1) return;
    for (std::size_t next = support.back() + 1; next < n; ++next) {
      support.push_back(next);
      visit();
      support.pop_back();
    }
  };

  for (std::size_t first = 0; first < n; ++first) {
    support.assign(1, first);
    visit();
  }
  return result;
}

}  // namespace betahull
