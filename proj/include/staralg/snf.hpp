#pragma once

/**
 * Smith normal form over the Euclidean ring k[x] of univariate polynomials,
 * with a wrapper for the truncation k[x]/(x^N) that lifts, reduces exactly,
 * and re-truncates.  Produces unimodular U, V with U*M*V = D diagonal and
 * d_1 | d_2 | ... ; diagonal entries are normalized monic.
 */

#include <vector>

#include "linalg.hpp"
#include "polynomial.hpp"

namespace staralg {

struct SnfResult {
  Matrix<Polynomial> u, d, v;
  std::vector<Polynomial> invariant_factors;  // nonzero diagonal entries, in order
};

namespace detail {

inline bool poly_divides(const Polynomial& a, const Polynomial& b) {
  // a | b for univariate a != 0
  if (b.is_zero()) return true;
  return b.divmod(a).second.is_zero();
}

inline void swap_rows(Matrix<Polynomial>& m, std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m.at(a, j), m.at(b, j));
}

inline void swap_cols(Matrix<Polynomial>& m, std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < m.rows(); ++i) std::swap(m.at(i, a), m.at(i, b));
}

// row[a] -= q * row[b]
inline void row_axpy(Matrix<Polynomial>& m, std::size_t a, std::size_t b, const Polynomial& q) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) -= q * m.at(b, j);
}

inline void col_axpy(Matrix<Polynomial>& m, std::size_t a, std::size_t b, const Polynomial& q) {
  for (std::size_t i = 0; i < m.rows(); ++i) m.at(i, a) -= q * m.at(i, b);
}

inline void scale_row(Matrix<Polynomial>& m, std::size_t a, const FieldElem& c) {
  for (std::size_t j = 0; j < m.cols(); ++j) m.at(a, j) = m.at(a, j) * c;
}

}  // namespace detail

inline SnfResult smith_normal_form(const Matrix<Polynomial>& input) {
  using namespace detail;
  const std::size_t rows = input.rows(), cols = input.cols();
  if (rows == 0 || cols == 0) throw std::invalid_argument("smith_normal_form: empty matrix");
  const Polynomial& probe = input.at(0, 0);
  if (probe.vars().size() != 1)
    throw std::invalid_argument("smith_normal_form: base ring must be univariate polynomials");
  Field f = probe.field();
  auto vars = probe.vars();
  Polynomial zero = Polynomial::zero(f, vars);
  Polynomial one = Polynomial::one(f, vars);

  Matrix<Polynomial> d = input;
  Matrix<Polynomial> u(rows, rows, zero), v(cols, cols, zero);
  for (std::size_t i = 0; i < rows; ++i) u.at(i, i) = one;
  for (std::size_t j = 0; j < cols; ++j) v.at(j, j) = one;

  auto deg = [](const Polynomial& p) { return p.total_deg(); };

  std::size_t t = 0;
  const std::size_t lim = std::min(rows, cols);
  while (t < lim) {
    // locate a minimal-degree nonzero pivot in the trailing block
    bool found = false;
    std::size_t pi = t, pj = t;
    for (std::size_t i = t; i < rows; ++i)
      for (std::size_t j = t; j < cols; ++j) {
        if (d.at(i, j).is_zero()) continue;
        if (!found || deg(d.at(i, j)) < deg(d.at(pi, pj))) { pi = i; pj = j; found = true; }
      }
    if (!found) break;
    if (pi != t) { swap_rows(d, pi, t); swap_rows(u, pi, t); }
    if (pj != t) { swap_cols(d, pj, t); swap_cols(v, pj, t); }

    bool clean = true;
    for (std::size_t i = t + 1; i < rows; ++i) {
      if (d.at(i, t).is_zero()) continue;
      Polynomial q = d.at(i, t).divmod(d.at(t, t)).first;
      row_axpy(d, i, t, q);
      row_axpy(u, i, t, q);
      if (!d.at(i, t).is_zero()) clean = false;  // remainder of smaller degree remains
    }
    for (std::size_t j = t + 1; j < cols; ++j) {
      if (d.at(t, j).is_zero()) continue;
      Polynomial q = d.at(t, j).divmod(d.at(t, t)).first;
      col_axpy(d, j, t, q);
      col_axpy(v, j, t, q);
      if (!d.at(t, j).is_zero()) clean = false;
    }
    if (!clean) continue;  // repeat with the smaller pivot now present

    // pivot must divide every entry of the remaining block
    bool divides_all = true;
    for (std::size_t i = t + 1; i < rows && divides_all; ++i)
      for (std::size_t j = t + 1; j < cols && divides_all; ++j)
        if (!poly_divides(d.at(t, t), d.at(i, j))) divides_all = false;
    if (!divides_all) {
      // fold an offending row into row t and restart the elimination at t
      for (std::size_t i = t + 1; i < rows; ++i) {
        bool offending = false;
        for (std::size_t j = t + 1; j < cols; ++j)
          if (!poly_divides(d.at(t, t), d.at(i, j))) { offending = true; break; }
        if (offending) {
          row_axpy(d, t, i, -one);  // row t += row i
          row_axpy(u, t, i, -one);
          break;
        }
      }
      continue;
    }
    ++t;
  }

  // normalize monic diagonal
  for (std::size_t i = 0; i < lim; ++i) {
    if (d.at(i, i).is_zero()) continue;
    FieldElem lead = d.at(i, i).leading_term().second;
    if (!lead.is_one()) {
      FieldElem inv = lead.inverse();
      scale_row(d, i, inv);
      scale_row(u, i, inv);
    }
  }

  SnfResult res{u, d, v, {}};
  for (std::size_t i = 0; i < lim; ++i)
    if (!res.d.at(i, i).is_zero()) res.invariant_factors.push_back(res.d.at(i, i));
  return res;
}

/**
 * SNF over k[x]/(x^N): entries are lifted to their canonical polynomial
 * representatives, reduced exactly over k[x], and the diagonal re-truncated.
 * Diagonal entries whose valuation reaches N vanish in the quotient.
 */
inline SnfResult smith_normal_form_truncated(const Matrix<Polynomial>& lifted, std::size_t precision) {
  SnfResult res = smith_normal_form(lifted);
  for (std::size_t i = 0; i < std::min(res.d.rows(), res.d.cols()); ++i) {
    const Polynomial& p = res.d.at(i, i);
    if (p.is_zero()) continue;
    // drop monomials of order >= N
    Polynomial r = Polynomial::zero(p.field(), p.vars());
    for (const auto& [m, c] : p.terms())
      if (m[0] < precision) r += Polynomial::term(p.field(), p.vars(), m, c);
    res.d.at(i, i) = r;
  }
  res.invariant_factors.clear();
  for (std::size_t i = 0; i < std::min(res.d.rows(), res.d.cols()); ++i)
    if (!res.d.at(i, i).is_zero()) res.invariant_factors.push_back(res.d.at(i, i));
  return res;
}

}  // namespace staralg
