#pragma once
// Exact dense linear algebra over a field K (same k_* protocol as poly.hpp).

#include <optional>
#include <vector>

#include "mck/poly.hpp"

namespace mck {

template <class K>
struct Mat {
  int rows = 0, cols = 0;
  K ex;
  std::vector<K> a;

  Mat(int r, int c, const K& exemplar)
      : rows(r), cols(c), ex(k_zero(exemplar)), a((size_t)r * c, k_zero(exemplar)) {}
  K& at(int i, int j) { return a[(size_t)i * cols + j]; }
  const K& at(int i, int j) const { return a[(size_t)i * cols + j]; }
};

// Row-reduce in place; returns pivot column indices.
template <class K>
std::vector<int> rref(Mat<K>& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int col = 0; col < m.cols && r < m.rows; ++col) {
    int sel = -1;
    for (int i = r; i < m.rows; ++i)
      if (!k_is_zero(m.at(i, col))) { sel = i; break; }
    if (sel < 0) continue;
    if (sel != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m.at(sel, j), m.at(r, j));
    K il = k_inv(m.at(r, col));
    for (int j = col; j < m.cols; ++j) m.at(r, j) = m.at(r, j) * il;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || k_is_zero(m.at(i, col))) continue;
      K f = m.at(i, col);
      for (int j = col; j < m.cols; ++j)
        m.at(i, j) = m.at(i, j) - f * m.at(r, j);
    }
    pivots.push_back(col);
    ++r;
  }
  return pivots;
}

template <class K>
int mat_rank(Mat<K> m) {
  return (int)rref(m).size();
}

// Basis of the right kernel of m.
template <class K>
std::vector<std::vector<K>> kernel_basis(Mat<K> m) {
  auto pivots = rref(m);
  std::vector<bool> is_pivot(m.cols, false);
  for (int p : pivots) is_pivot[p] = true;
  std::vector<std::vector<K>> basis;
  K one = k_one(m.ex);
  for (int j = 0; j < m.cols; ++j) {
    if (is_pivot[j]) continue;
    std::vector<K> v(m.cols, m.ex);
    v[j] = one;
    for (size_t r = 0; r < pivots.size(); ++r)
      v[pivots[r]] = m.ex - m.at((int)r, j);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Solve m x = b; returns one solution if consistent.
template <class K>
std::optional<std::vector<K>> solve_linear(Mat<K> m, std::vector<K> b) {
  require((int)b.size() == m.rows, "solve_linear: size mismatch");
  Mat<K> aug(m.rows, m.cols + 1, m.ex);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols) = b[i];
  }
  auto pivots = rref(aug);
  for (int p : pivots)
    if (p == m.cols) return std::nullopt;  // inconsistent
  std::vector<K> x(m.cols, m.ex);
  for (size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = aug.at((int)r, m.cols);
  return x;
}

}  // namespace mck
