#pragma once

/**
 * Exact linear algebra over a coefficient field: Gaussian elimination,
 * solving with kernel bases, and incremental row spans.  Membership tests
 * throughout the library reduce to these routines.
 */

#include <algorithm>
#include <optional>
#include <vector>

#include "field.hpp"

namespace staralg {

using Vec = std::vector<FieldElem>;

template <typename T>
class Matrix {
 public:
  Matrix(std::size_t rows, std::size_t cols, const T& fill)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  Matrix<T> operator*(const Matrix<T>& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("Matrix: dimension mismatch");
    const T* proto = !data_.empty() ? &data_[0] : (!o.data_.empty() ? &o.data_[0] : nullptr);
    if (!proto) throw std::invalid_argument("Matrix: cannot infer entry ring of empty product");
    Matrix<T> r(rows_, o.cols_, *proto - *proto);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = at(i, k);
        for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
      }
    return r;
  }

  bool operator==(const Matrix<T>& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<T> data_;
};

struct LinearSolveResult {
  std::optional<Vec> solution;   // one solution of M x = b, if consistent
  std::vector<Vec> kernel;       // basis of the null space of M
};

/// Exact Gaussian elimination.  Returns a particular solution (free
/// variables set to zero) and a kernel basis.
inline LinearSolveResult linear_solve(const Matrix<FieldElem>& m, const Vec& target) {
  if (target.size() != m.rows()) throw std::invalid_argument("linear_solve: dimension mismatch");
  const std::size_t rows = m.rows(), cols = m.cols();
  Field f = cols > 0 ? m.at(0, 0).field() : (rows > 0 ? target[0].field() : Field::rationals());
  // augmented working copy
  std::vector<Vec> a(rows, Vec(cols + 1, FieldElem::zero(f)));
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a[i][j] = m.at(i, j);
    a[i][cols] = target[i];
  }
  std::vector<long> pivot_of_col(cols, -1);
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t sel = rank;
    while (sel < rows && a[sel][col].is_zero()) ++sel;
    if (sel == rows) continue;
    std::swap(a[sel], a[rank]);
    FieldElem inv = a[rank][col].inverse();
    for (std::size_t j = col; j <= cols; ++j) a[rank][j] = a[rank][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == rank || a[i][col].is_zero()) continue;
      FieldElem c = a[i][col];
      for (std::size_t j = col; j <= cols; ++j) a[i][j] = a[i][j] - c * a[rank][j];
    }
    pivot_of_col[col] = static_cast<long>(rank);
    ++rank;
  }
  LinearSolveResult res;
  bool consistent = true;
  for (std::size_t i = rank; i < rows; ++i)
    if (!a[i][cols].is_zero()) { consistent = false; break; }
  if (consistent) {
    Vec x(cols, FieldElem::zero(f));
    for (std::size_t col = 0; col < cols; ++col)
      if (pivot_of_col[col] >= 0) x[col] = a[static_cast<std::size_t>(pivot_of_col[col])][cols];
    res.solution = std::move(x);
  }
  for (std::size_t free_col = 0; free_col < cols; ++free_col) {
    if (pivot_of_col[free_col] >= 0) continue;
    Vec v(cols, FieldElem::zero(f));
    v[free_col] = FieldElem::one(f);
    for (std::size_t col = 0; col < cols; ++col)
      if (pivot_of_col[col] >= 0)
        v[col] = -a[static_cast<std::size_t>(pivot_of_col[col])][free_col];
    res.kernel.push_back(std::move(v));
  }
  return res;
}

/**
 * An incrementally built subspace of k^n in reduced row echelon form.
 * Supports membership, coordinates of a member over the inserted
 * generators, and span comparison.
 */
class RowSpan {
 public:
  RowSpan(Field f, std::size_t n) : field_(f), n_(n) {}

  std::size_t dim() const { return rows_.size(); }
  std::size_t ambient_dim() const { return n_; }
  const std::vector<Vec>& basis() const { return rows_; }

  /// Insert a vector; returns true if it enlarged the span.
  bool insert(Vec v) {
    if (v.size() != n_) throw std::invalid_argument("RowSpan: vector length");
    reduce(v);
    std::size_t p = pivot(v);
    if (p == n_) return false;
    FieldElem inv = v[p].inverse();
    for (auto& c : v) c = c * inv;
    // back-substitute into existing rows
    for (auto& r : rows_) {
      if (!r[p].is_zero()) {
        FieldElem c = r[p];
        for (std::size_t j = 0; j < n_; ++j) r[j] = r[j] - c * v[j];
      }
    }
    rows_.push_back(std::move(v));
    std::sort(rows_.begin(), rows_.end(),
              [this](const Vec& a, const Vec& b) { return pivot_of(a) < pivot_of(b); });
    return true;
  }

  bool contains(Vec v) const {
    reduce(v);
    return pivot(v) == n_;
  }

  bool contains_span(const RowSpan& o) const {
    for (const auto& r : o.rows_)
      if (!contains(r)) return false;
    return true;
  }

  bool same_span(const RowSpan& o) const {
    return dim() == o.dim() && contains_span(o);
  }

  /// Intersection with another span, as a fresh span.
  RowSpan intersect(const RowSpan& o) const {
    // kernel of [A^T | B^T] stacked columnwise: vectors x,y with A^T... use
    // the standard formulation: solve c_A * basisA - c_B * basisB = 0.
    std::size_t ka = rows_.size(), kb = o.rows_.size();
    RowSpan out(field_, n_);
    if (ka == 0 || kb == 0) return out;
    Matrix<FieldElem> m(n_, ka + kb, FieldElem::zero(field_));
    for (std::size_t j = 0; j < ka; ++j)
      for (std::size_t i = 0; i < n_; ++i) m.at(i, j) = rows_[j][i];
    for (std::size_t j = 0; j < kb; ++j)
      for (std::size_t i = 0; i < n_; ++i) m.at(i, ka + j) = -o.rows_[j][i];
    Vec zero(n_, FieldElem::zero(field_));
    auto res = linear_solve(m, zero);
    for (const auto& k : res.kernel) {
      Vec v(n_, FieldElem::zero(field_));
      for (std::size_t j = 0; j < ka; ++j)
        for (std::size_t i = 0; i < n_; ++i) v[i] += k[j] * rows_[j][i];
      out.insert(std::move(v));
    }
    return out;
  }

 private:
  std::size_t pivot(const Vec& v) const { return pivot_of(v); }

  std::size_t pivot_of(const Vec& v) const {
    for (std::size_t j = 0; j < n_; ++j)
      if (!v[j].is_zero()) return j;
    return n_;
  }

  void reduce(Vec& v) const {
    for (const auto& r : rows_) {
      std::size_t p = pivot_of(r);
      if (p < n_ && !v[p].is_zero()) {
        FieldElem c = v[p];
        for (std::size_t j = 0; j < n_; ++j) v[j] = v[j] - c * r[j];
      }
    }
  }

  Field field_;
  std::size_t n_;
  std::vector<Vec> rows_;
};

/// Coordinates of `target` over the column span of `gens` (each a length-n
/// vector); nullopt when target is outside the span.
inline std::optional<Vec> coordinates_over(const std::vector<Vec>& gens, const Vec& target, Field f) {
  std::size_t n = target.size();
  Matrix<FieldElem> m(n, gens.size(), FieldElem::zero(f));
  for (std::size_t j = 0; j < gens.size(); ++j) {
    if (gens[j].size() != n) throw std::invalid_argument("coordinates_over: vector length");
    for (std::size_t i = 0; i < n; ++i) m.at(i, j) = gens[j][i];
  }
  return linear_solve(m, target).solution;
}

}  // namespace staralg
