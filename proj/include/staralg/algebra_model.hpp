#pragma once

/**
 * Finite-dimensional models of local rings: quotients of polynomial rings
 * by monomial relations and degree caps, monomial subalgebras, and
 * table-backed quotient algebras.  Elements are coordinate vectors over
 * the coefficient field; all operations are exact linear algebra.
 *
 * Monomial-backed algebras multiply structurally (exponent addition with a
 * basis lookup), so large ambient models never materialize a full
 * multiplication table.  Table-backed algebras arise as small quotients.
 */

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "linalg.hpp"
#include "polynomial.hpp"

namespace staralg {

class QuotientAlgebra {
 public:
  /**
   * k[vars] modulo the monomial ideal generated by `dead_monomials`, every
   * monomial with per-variable exponent >= var_caps[i], and every monomial
   * of total degree >= total_cap (when given).
   */
  static QuotientAlgebra monomial_quotient(Field f, std::vector<std::string> vars,
                                           std::vector<std::size_t> var_caps,
                                           std::optional<std::size_t> total_cap = std::nullopt,
                                           std::vector<Monomial> dead_monomials = {}) {
    if (var_caps.size() != vars.size())
      throw std::invalid_argument("monomial_quotient: one cap per variable required");
    QuotientAlgebra a;
    a.field_ = f;
    a.vars_ = std::move(vars);
    a.var_caps_ = std::move(var_caps);
    a.total_cap_ = total_cap;
    a.dead_ = std::move(dead_monomials);
    // enumerate surviving monomials in graded lex order
    std::vector<Monomial> all;
    Monomial m(a.vars_.size(), 0);
    a.enumerate(m, 0, all);
    std::sort(all.begin(), all.end(), GrlexLess{});
    std::size_t cap_guard = 200000;
    if (all.size() > cap_guard)
      throw std::invalid_argument("monomial_quotient: ambient not finite-dimensional under supplied bounds");
    a.basis_monos_ = std::move(all);
    for (std::size_t i = 0; i < a.basis_monos_.size(); ++i) a.index_[a.basis_monos_[i]] = i;
    return a;
  }

  /// The monomial subalgebra of `ambient` generated by the given monomials
  /// (e.g. the numerical semigroup ring k[t^2, t^3] inside k[t]/(t^cap)).
  static QuotientAlgebra monomial_subalgebra(const QuotientAlgebra& ambient,
                                             const std::vector<Monomial>& gens) {
    if (!ambient.is_monomial_backed())
      throw std::invalid_argument("monomial_subalgebra: ambient must be monomial-backed");
    std::vector<Monomial> reach;
    std::map<Monomial, bool> seen;
    Monomial unit(ambient.vars_.size(), 0);
    reach.push_back(unit);
    seen[unit] = true;
    for (std::size_t head = 0; head < reach.size(); ++head) {
      for (const auto& g : gens) {
        Monomial m = reach[head];
        for (std::size_t i = 0; i < m.size(); ++i) m[i] += g[i];
        if (!ambient.alive(m) || seen.count(m)) continue;
        seen[m] = true;
        reach.push_back(m);
      }
    }
    std::sort(reach.begin(), reach.end(), GrlexLess{});
    QuotientAlgebra a = ambient;
    a.basis_monos_ = std::move(reach);
    a.index_.clear();
    for (std::size_t i = 0; i < a.basis_monos_.size(); ++i) a.index_[a.basis_monos_[i]] = i;
    return a;
  }

  /// Table-backed algebra from an explicit basis and multiplication table.
  static QuotientAlgebra from_table(Field f, std::vector<std::string> labels,
                                    std::vector<std::vector<Vec>> table, Vec one_coords) {
    QuotientAlgebra a;
    a.field_ = f;
    a.labels_ = std::move(labels);
    a.table_ = std::move(table);
    a.one_coords_ = std::move(one_coords);
    return a;
  }

  const Field& field() const { return field_; }
  bool is_monomial_backed() const { return !basis_monos_.empty(); }
  std::size_t dim() const { return is_monomial_backed() ? basis_monos_.size() : labels_.size(); }
  const std::vector<Monomial>& basis_monomials() const { return basis_monos_; }
  const std::vector<std::string>& vars() const { return vars_; }

  std::string basis_label(std::size_t i) const {
    if (!is_monomial_backed()) return labels_[i];
    const Monomial& m = basis_monos_[i];
    if (total_degree(m) == 0) return "1";
    std::string s;
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (!s.empty()) s += "*";
      s += vars_[v];
      if (m[v] > 1) s += "^" + std::to_string(m[v]);
    }
    return s;
  }

  Vec zero() const { return Vec(dim(), FieldElem::zero(field_)); }

  Vec one() const {
    if (!is_monomial_backed()) return one_coords_;
    Vec v = zero();
    v[index_.at(Monomial(vars_.size(), 0))] = FieldElem::one(field_);
    return v;
  }

  Vec basis_vector(std::size_t i) const {
    Vec v = zero();
    v[i] = FieldElem::one(field_);
    return v;
  }

  /// Coordinates of a polynomial's class; monomials outside the basis are
  /// dead (quotient) for monomial-backed models.
  Vec project(const Polynomial& p) const {
    if (!is_monomial_backed())
      throw std::invalid_argument("QuotientAlgebra::project: table-backed model has no monomial basis");
    if (p.vars() != vars_) throw std::invalid_argument("QuotientAlgebra::project: variable mismatch");
    Vec v = zero();
    for (const auto& [m, c] : p.terms()) {
      auto it = index_.find(m);
      if (it != index_.end()) v[it->second] += c;
      else if (!alive(m)) continue;  // dead by relations: class is zero
      else throw std::invalid_argument("QuotientAlgebra::project: monomial outside subalgebra basis");
    }
    return v;
  }

  Vec mul(const Vec& a, const Vec& b) const {
    if (a.size() != dim() || b.size() != dim())
      throw std::invalid_argument("QuotientAlgebra::mul: coordinate length");
    Vec r = zero();
    if (is_monomial_backed()) {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (b[j].is_zero()) continue;
          Monomial m = basis_monos_[i];
          for (std::size_t v = 0; v < m.size(); ++v) m[v] += basis_monos_[j][v];
          auto it = index_.find(m);
          if (it != index_.end()) r[it->second] += a[i] * b[j];
          // otherwise the product is dead in the quotient (or beyond the
          // subalgebra's reach, which the closure construction rules out)
        }
      }
    } else {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) {
          if (b[j].is_zero()) continue;
          const Vec& t = table_[i][j];
          FieldElem c = a[i] * b[j];
          for (std::size_t k = 0; k < r.size(); ++k) r[k] += c * t[k];
        }
      }
    }
    return r;
  }

  Vec power(Vec a, std::size_t e) const {
    Vec r = one();
    for (std::size_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  bool is_nilpotent(const Vec& a) const {
    Vec p = a;
    for (std::size_t i = 0; i < dim() + 1; ++i) {
      bool zero = true;
      for (const auto& c : p)
        if (!c.is_zero()) { zero = false; break; }
      if (zero) return true;
      p = mul(p, a);
    }
    return false;
  }

  /**
   * The maximal ideal of a local model: the span of the non-identity basis
   * vectors, all of which must be nilpotent.  Throws when the model is not
   * local in this recognizable sense.
   */
  RowSpan maximal_ideal_span() const {
    RowSpan span(field_, dim());
    Vec id = one();
    for (std::size_t i = 0; i < dim(); ++i) {
      Vec e = basis_vector(i);
      bool is_identity = (e == id);
      if (is_identity) continue;
      if (!is_nilpotent(e))
        throw std::invalid_argument(
            "QuotientAlgebra: maximal ideal not identifiable (basis element " + basis_label(i) +
            " is neither the identity nor nilpotent; non-local model)");
      span.insert(e);
    }
    if (span.dim() + 1 != dim())
      throw std::invalid_argument("QuotientAlgebra: maximal ideal not identifiable (non-local model)");
    return span;
  }

  bool alive(const Monomial& m) const {
    for (std::size_t i = 0; i < m.size(); ++i)
      if (var_caps_[i] && m[i] >= var_caps_[i]) return false;
    if (total_cap_ && total_degree(m) >= *total_cap_) return false;
    for (const auto& dmon : dead_) {
      bool divisible = true;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] < dmon[i]) { divisible = false; break; }
      if (divisible) return false;
    }
    return true;
  }

 private:
  QuotientAlgebra() : field_(Field::rationals()) {}

  void enumerate(Monomial& m, std::size_t var, std::vector<Monomial>& out) const {
    if (var == m.size()) {
      if (alive(m)) out.push_back(m);
      return;
    }
    for (std::uint32_t e = 0;; ++e) {
      if (e > 100000)
        throw std::invalid_argument("monomial_quotient: unbounded variable " + vars_[var]);
      m[var] = e;
      if (!alive(m)) break;
      enumerate(m, var + 1, out);
    }
    m[var] = 0;
  }

  Field field_;
  // monomial-backed state
  std::vector<std::string> vars_;
  std::vector<std::size_t> var_caps_;  // 0 = no per-variable cap
  std::optional<std::size_t> total_cap_;
  std::vector<Monomial> dead_;
  std::vector<Monomial> basis_monos_;
  std::map<Monomial, std::size_t> index_;
  // table-backed state
  std::vector<std::string> labels_;
  std::vector<std::vector<Vec>> table_;
  Vec one_coords_;
};

/// A finite-dimensional module over a QuotientAlgebra, given by the action
/// of each algebra basis vector on the module coordinates.
struct ModuleModel {
  Field field;
  std::size_t dim = 0;
  // action[b][r] = image of module basis r under algebra basis b
  std::vector<std::vector<Vec>> action;

  static ModuleModel zero_module(const QuotientAlgebra& base) {
    ModuleModel m{base.field(), 0, {}};
    m.action.assign(base.dim(), {});
    return m;
  }

  /// Free module of the given rank: block copies of the regular representation.
  static ModuleModel free_module(const QuotientAlgebra& base, std::size_t rank) {
    ModuleModel m{base.field(), rank * base.dim(), {}};
    m.action.assign(base.dim(), std::vector<Vec>(m.dim, Vec(m.dim, FieldElem::zero(base.field()))));
    for (std::size_t b = 0; b < base.dim(); ++b)
      for (std::size_t c = 0; c < rank; ++c)
        for (std::size_t r = 0; r < base.dim(); ++r) {
          Vec img = base.mul(base.basis_vector(b), base.basis_vector(r));
          for (std::size_t k = 0; k < base.dim(); ++k)
            m.action[b][c * base.dim() + r][c * base.dim() + k] = img[k];
        }
    return m;
  }

  /// Module with every algebra basis element except the identity acting as
  /// zero (the residue-field module k^rank of a local model).
  static ModuleModel residue_module(const QuotientAlgebra& base, std::size_t rank) {
    ModuleModel m{base.field(), rank, {}};
    m.action.assign(base.dim(), std::vector<Vec>(rank, Vec(rank, FieldElem::zero(base.field()))));
    Vec id = base.one();
    for (std::size_t b = 0; b < base.dim(); ++b)
      for (std::size_t r = 0; r < rank; ++r)
        m.action[b][r][r] = id[b];  // only the identity component acts
    return m;
  }

  Vec zero() const { return Vec(dim, FieldElem::zero(field)); }

  /// Bilinear action of an algebra element on a module element.
  Vec act(const Vec& a, const Vec& x) const {
    Vec r = zero();
    for (std::size_t b = 0; b < action.size(); ++b) {
      if (a[b].is_zero()) continue;
      for (std::size_t j = 0; j < dim; ++j) {
        if (x[j].is_zero()) continue;
        FieldElem c = a[b] * x[j];
        const Vec& img = action[b][j];
        for (std::size_t k = 0; k < dim; ++k) r[k] += c * img[k];
      }
    }
    return r;
  }
};

}  // namespace staralg
