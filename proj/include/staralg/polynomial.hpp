#pragma once

/**
 * Sparse multivariate polynomials over a coefficient field.
 *
 * Terms map exponent vectors to nonzero coefficients; the zero coefficient
 * is never stored.  The monomial order is graded lexicographic throughout
 * (total degree first, then lex on the variable list), which fixes leading
 * terms for division and reduction.
 */

#include <algorithm>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"

namespace staralg {

using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Monomial& m) {
  std::uint32_t s = 0;
  for (auto e : m) s += e;
  return s;
}

/// Graded lexicographic order.
struct GrlexLess {
  bool operator()(const Monomial& a, const Monomial& b) const {
    std::uint32_t da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
  }
};

class Polynomial {
 public:
  using TermMap = std::map<Monomial, FieldElem, GrlexLess>;

  Polynomial(Field f, std::vector<std::string> vars)
      : field_(f), vars_(std::move(vars)) {}

  static Polynomial zero(Field f, std::vector<std::string> vars) {
    return Polynomial(f, std::move(vars));
  }

  static Polynomial constant(Field f, std::vector<std::string> vars, const FieldElem& c) {
    Polynomial p(f, std::move(vars));
    if (!c.is_zero()) p.terms_[Monomial(p.vars_.size(), 0)] = c;
    return p;
  }

  static Polynomial one(Field f, std::vector<std::string> vars) {
    return constant(f, std::move(vars), FieldElem::one(f));
  }

  /// The variable `name` as a polynomial.
  static Polynomial variable(Field f, std::vector<std::string> vars, const std::string& name) {
    Polynomial p(f, std::move(vars));
    Monomial m(p.vars_.size(), 0);
    m[p.var_index(name)] = 1;
    p.terms_[m] = FieldElem::one(f);
    return p;
  }

  static Polynomial term(Field f, std::vector<std::string> vars, Monomial m, const FieldElem& c) {
    Polynomial p(f, std::move(vars));
    if (m.size() != p.vars_.size()) throw std::invalid_argument("Polynomial::term: exponent length");
    if (!c.is_zero()) p.terms_[std::move(m)] = c;
    return p;
  }

  const Field& field() const { return field_; }
  const std::vector<std::string>& vars() const { return vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    return terms_.empty() || (terms_.size() == 1 && total_degree(terms_.begin()->first) == 0);
  }

  std::size_t var_index(const std::string& name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) return i;
    throw std::invalid_argument("Polynomial: unknown variable '" + name + "'");
  }

  std::uint32_t degree_in(std::size_t var) const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, m[var]);
    return d;
  }

  std::uint32_t total_deg() const {
    std::uint32_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max(d, total_degree(m));
    return d;
  }

  /// Leading term in graded lex (largest monomial).
  std::pair<Monomial, FieldElem> leading_term() const {
    if (terms_.empty()) throw std::domain_error("Polynomial: leading term of zero");
    auto it = std::prev(terms_.end());
    return {it->first, it->second};
  }

  Polynomial operator-() const {
    Polynomial r(field_, vars_);
    for (const auto& [m, c] : terms_) r.terms_[m] = -c;
    return r;
  }

  Polynomial operator+(const Polynomial& o) const {
    check(o);
    Polynomial r(*this);
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }

  Polynomial operator-(const Polynomial& o) const { return *this + (-o); }

  Polynomial operator*(const Polynomial& o) const {
    check(o);
    Polynomial r(field_, vars_);
    for (const auto& [ma, ca] : terms_)
      for (const auto& [mb, cb] : o.terms_) {
        Monomial m(ma);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += mb[i];
        r.add_term(m, ca * cb);
      }
    return r;
  }

  Polynomial operator*(const FieldElem& c) const {
    Polynomial r(field_, vars_);
    if (c.is_zero()) return r;
    for (const auto& [m, a] : terms_) r.terms_[m] = a * c;
    return r;
  }

  Polynomial& operator+=(const Polynomial& o) { return *this = *this + o; }
  Polynomial& operator-=(const Polynomial& o) { return *this = *this - o; }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }

  bool operator==(const Polynomial& o) const {
    check(o);
    return terms_ == o.terms_;
  }
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  /// Division with remainder by the graded lex leading term of b: returns
  /// (q, r) with *this = q*b + r and no term of r divisible by LT(b).
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& b) const {
    check(b);
    if (b.is_zero()) throw std::domain_error("Polynomial::divmod: division by zero polynomial");
    Polynomial q(field_, vars_), r(field_, vars_);
    Polynomial work(*this);
    auto [lm, lc] = b.leading_term();
    while (!work.is_zero()) {
      auto [wm, wc] = work.leading_term();
      bool divisible = true;
      for (std::size_t i = 0; i < wm.size(); ++i)
        if (wm[i] < lm[i]) { divisible = false; break; }
      if (divisible) {
        Monomial qm(wm);
        for (std::size_t i = 0; i < qm.size(); ++i) qm[i] -= lm[i];
        FieldElem qc = wc / lc;
        Polynomial t = Polynomial::term(field_, vars_, qm, qc);
        q += t;
        work -= t * b;
      } else {
        Polynomial t = Polynomial::term(field_, vars_, wm, wc);
        r += t;
        work -= t;
      }
    }
    return {q, r};
  }

  /// Formal partial derivative.
  Polynomial derivative(std::size_t var) const {
    Polynomial r(field_, vars_);
    for (const auto& [m, c] : terms_) {
      if (m[var] == 0) continue;
      Monomial dm(m);
      dm[var] -= 1;
      r.add_term(dm, static_cast<long>(m[var]) * c);
    }
    return r;
  }

  Polynomial derivative(const std::string& name) const { return derivative(var_index(name)); }

  /**
   * Evaluate in any commutative ring R: variables are replaced by `values`
   * and coefficients act through R's FieldElem scaling.  R needs `operator*`,
   * `operator+`, and a `scale(FieldElem)` method; `one` is R's identity.
   */
  template <typename R>
  R eval(const std::vector<R>& values, const R& one, const R& zero) const {
    if (values.size() != vars_.size())
      throw std::invalid_argument("Polynomial::eval: value count mismatch");
    R acc = zero;
    for (const auto& [m, c] : terms_) {
      R t = one;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::uint32_t e = 0; e < m[i]; ++e) t = t * values[i];
      acc = acc + t.scale(c);
    }
    return acc;
  }

  /// Evaluate into the coefficient field itself.
  FieldElem eval_field(const std::vector<FieldElem>& values) const {
    if (values.size() != vars_.size())
      throw std::invalid_argument("Polynomial::eval_field: value count mismatch");
    FieldElem acc = FieldElem::zero(field_);
    for (const auto& [m, c] : terms_) {
      FieldElem t = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::uint32_t e = 0; e < m[i]; ++e) t = t * values[i];
      acc = acc + t;
    }
    return acc;
  }

  /// Substitute polynomials (in a possibly different variable list) for the variables.
  Polynomial substitute(const std::vector<Polynomial>& values) const {
    if (values.empty()) throw std::invalid_argument("Polynomial::substitute: no values");
    Polynomial acc = Polynomial::zero(values[0].field(), values[0].vars());
    Polynomial unit = Polynomial::one(values[0].field(), values[0].vars());
    for (const auto& [m, c] : terms_) {
      Polynomial t = unit;
      for (std::size_t i = 0; i < m.size(); ++i)
        for (std::uint32_t e = 0; e < m[i]; ++e) t = t * values[i];
      acc += t * c;
    }
    return acc;
  }

  /// Sets every variable in `which` to zero (reduction at a monomial prime's zero locus).
  Polynomial kill_variables(const std::vector<std::size_t>& which) const {
    Polynomial r(field_, vars_);
    for (const auto& [m, c] : terms_) {
      bool alive = true;
      for (auto v : which)
        if (m[v] > 0) { alive = false; break; }
      if (alive) r.add_term(m, c);
    }
    return r;
  }

  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    // print from the leading term down
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!first) os << " + ";
      first = false;
      const auto& [m, c] = *it;
      bool wrote = false;
      if (!c.is_one() || total_degree(m) == 0) {
        os << c.str();
        wrote = true;
      }
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (wrote) os << "*";
        os << vars_[i];
        if (m[i] > 1) os << "^" << m[i];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  void check(const Polynomial& o) const {
    if (field_ != o.field_ || vars_ != o.vars_)
      throw std::invalid_argument("Polynomial: mixed rings");
  }

  void add_term(const Monomial& m, const FieldElem& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      terms_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Field field_;
  std::vector<std::string> vars_;
  TermMap terms_;
};

inline Polynomial operator*(const FieldElem& c, const Polynomial& p) { return p * c; }

inline Polynomial operator*(long n, const Polynomial& p) {
  return p * FieldElem::from_int(p.field(), n);
}

/// Random sparse polynomial: up to `nterms` terms of total degree <= maxdeg.
inline Polynomial random_polynomial(Field f, const std::vector<std::string>& vars,
                                    std::uint32_t maxdeg, std::size_t nterms,
                                    std::mt19937_64& rng) {
  Polynomial p = Polynomial::zero(f, vars);
  std::uniform_int_distribution<std::uint32_t> dd(0, maxdeg);
  for (std::size_t t = 0; t < nterms; ++t) {
    Monomial m(vars.size(), 0);
    std::uint32_t budget = dd(rng);
    for (std::size_t i = 0; i < vars.size() && budget > 0; ++i) {
      std::uniform_int_distribution<std::uint32_t> de(0, budget);
      m[i] = de(rng);
      budget -= m[i];
    }
    p += Polynomial::term(f, vars, m, FieldElem::sample(f, rng));
  }
  return p;
}

}  // namespace staralg
