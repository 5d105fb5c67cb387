#pragma once

/**
 * The idealization A * M of a module M over a ring A, realized on
 * finite-dimensional local models: element arithmetic with the star
 * multiplication (a1, m1)(a2, m2) = (a1 a2, a1 m2 + a2 m1), ideal spans,
 * quotient algebras, and the embedding dimension dim m/m^2.
 */

#include <string>
#include <vector>

#include "algebra_model.hpp"

namespace staralg {

struct IdealizationElement {
  Vec ring_part;
  Vec module_part;

  bool operator==(const IdealizationElement& o) const {
    return ring_part == o.ring_part && module_part == o.module_part;
  }
};

class IdealizationModel {
 public:
  IdealizationModel(QuotientAlgebra base, ModuleModel mod)
      : base_(std::move(base)), mod_(std::move(mod)) {
    if (mod_.action.size() != base_.dim())
      throw std::invalid_argument("IdealizationModel: module action does not match base ring");
  }

  const QuotientAlgebra& base() const { return base_; }
  const ModuleModel& module() const { return mod_; }
  std::size_t dim() const { return base_.dim() + mod_.dim; }
  const Field& field() const { return base_.field(); }

  IdealizationElement zero() const { return {base_.zero(), mod_.zero()}; }
  IdealizationElement one() const { return {base_.one(), mod_.zero()}; }

  IdealizationElement element(Vec ring_part, Vec module_part) const {
    if (ring_part.size() != base_.dim() || module_part.size() != mod_.dim)
      throw std::invalid_argument("IdealizationModel: coordinate lengths");
    return {std::move(ring_part), std::move(module_part)};
  }

  IdealizationElement add(const IdealizationElement& a, const IdealizationElement& b) const {
    IdealizationElement r = a;
    for (std::size_t i = 0; i < r.ring_part.size(); ++i) r.ring_part[i] += b.ring_part[i];
    for (std::size_t i = 0; i < r.module_part.size(); ++i) r.module_part[i] += b.module_part[i];
    return r;
  }

  /// (a1, l1) (a2, l2) = (a1 a2, a1 l2 + a2 l1)
  IdealizationElement star_mul(const IdealizationElement& a, const IdealizationElement& b) const {
    if (a.ring_part.size() != base_.dim() || b.ring_part.size() != base_.dim() ||
        a.module_part.size() != mod_.dim || b.module_part.size() != mod_.dim)
      throw std::invalid_argument("IdealizationModel::star_mul: ring mismatch");
    Vec ring = base_.mul(a.ring_part, b.ring_part);
    Vec m1 = mod_.act(a.ring_part, b.module_part);
    Vec m2 = mod_.act(b.ring_part, a.module_part);
    for (std::size_t i = 0; i < m1.size(); ++i) m1[i] += m2[i];
    return {std::move(ring), std::move(m1)};
  }

  Vec flatten(const IdealizationElement& e) const {
    Vec v = e.ring_part;
    v.insert(v.end(), e.module_part.begin(), e.module_part.end());
    return v;
  }

  IdealizationElement unflatten(const Vec& v) const {
    Vec r(v.begin(), v.begin() + static_cast<long>(base_.dim()));
    Vec m(v.begin() + static_cast<long>(base_.dim()), v.end());
    return {std::move(r), std::move(m)};
  }

  /**
   * The ideal generated by `gens` as a subspace of the flattened model.
   * One saturation round over the basis multipliers (e_b, 0) and (0, e_m)
   * suffices: the span of all generator-by-basis products is already
   * multiplication-stable in a commutative unital algebra.
   */
  RowSpan ideal_span(const std::vector<IdealizationElement>& gens) const {
    RowSpan span(field(), dim());
    for (const auto& g : gens) {
      for (std::size_t b = 0; b < base_.dim(); ++b) {
        IdealizationElement mult{base_.basis_vector(b), mod_.zero()};
        span.insert(flatten(star_mul(g, mult)));
      }
      for (std::size_t m = 0; m < mod_.dim; ++m) {
        Vec mv = mod_.zero();
        mv[m] = FieldElem::one(field());
        IdealizationElement mult{base_.zero(), std::move(mv)};
        span.insert(flatten(star_mul(g, mult)));
      }
    }
    return span;
  }

  /// The maximal ideal: nilpotent part of the base plus the whole module.
  RowSpan maximal_ideal_span() const {
    RowSpan base_m = base_.maximal_ideal_span();
    RowSpan span(field(), dim());
    for (const auto& row : base_m.basis()) {
      Vec v = row;
      v.resize(dim(), FieldElem::zero(field()));
      span.insert(std::move(v));
    }
    for (std::size_t m = 0; m < mod_.dim; ++m) {
      Vec v(dim(), FieldElem::zero(field()));
      v[base_.dim() + m] = FieldElem::one(field());
      span.insert(std::move(v));
    }
    return span;
  }

  /// dim_k m / m^2 of the local model.
  std::size_t embedding_dimension() const {
    RowSpan m = maximal_ideal_span();
    RowSpan m2(field(), dim());
    const auto& rows = m.basis();
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = i; j < rows.size(); ++j)
        m2.insert(flatten(star_mul(unflatten(rows[i]), unflatten(rows[j]))));
    return m.dim() - m2.dim();
  }

  /**
   * The quotient by an ideal, as a table-backed algebra descriptor
   * (basis + multiplication table).  The span must be an ideal; the basis
   * of the quotient is the set of non-pivot coordinates of the span.
   */
  QuotientAlgebra quotient_model(const RowSpan& ideal) const {
    // verify the span is multiplication-stable
    for (const auto& row : ideal.basis()) {
      for (std::size_t b = 0; b < base_.dim(); ++b) {
        IdealizationElement mult{base_.basis_vector(b), mod_.zero()};
        if (!ideal.contains(flatten(star_mul(unflatten(row), mult))))
          throw std::invalid_argument("quotient_model: span is not an ideal under the supplied bounds");
      }
      for (std::size_t m = 0; m < mod_.dim; ++m) {
        Vec mv = mod_.zero();
        mv[m] = FieldElem::one(field());
        IdealizationElement mult{base_.zero(), std::move(mv)};
        if (!ideal.contains(flatten(star_mul(unflatten(row), mult))))
          throw std::invalid_argument("quotient_model: span is not an ideal under the supplied bounds");
      }
    }
    // complement coordinates = non-pivot columns of the echelonized span
    std::vector<bool> is_pivot(dim(), false);
    for (const auto& row : ideal.basis()) {
      for (std::size_t j = 0; j < dim(); ++j)
        if (!row[j].is_zero()) { is_pivot[j] = true; break; }
    }
    std::vector<std::size_t> comp;
    for (std::size_t j = 0; j < dim(); ++j)
      if (!is_pivot[j]) comp.push_back(j);

    // reduce a flattened vector mod the ideal, then read complement coords
    auto reduce_to_comp = [&](Vec v) {
      for (const auto& row : ideal.basis()) {
        std::size_t p = 0;
        while (p < dim() && row[p].is_zero()) ++p;
        if (p < dim() && !v[p].is_zero()) {
          FieldElem c = v[p];
          for (std::size_t j = 0; j < dim(); ++j) v[j] = v[j] - c * row[j];
        }
      }
      Vec out;
      out.reserve(comp.size());
      for (auto j : comp) out.push_back(v[j]);
      return out;
    };

    std::size_t q = comp.size();
    std::vector<std::string> labels;
    for (auto j : comp)
      labels.push_back(j < base_.dim() ? base_.basis_label(j)
                                       : "e" + std::to_string(j - base_.dim()));
    std::vector<std::vector<Vec>> table(q, std::vector<Vec>(q));
    for (std::size_t i = 0; i < q; ++i)
      for (std::size_t j = 0; j < q; ++j) {
        Vec a(dim(), FieldElem::zero(field()));
        a[comp[i]] = FieldElem::one(field());
        Vec b(dim(), FieldElem::zero(field()));
        b[comp[j]] = FieldElem::one(field());
        table[i][j] = reduce_to_comp(flatten(star_mul(unflatten(a), unflatten(b))));
      }
    Vec one_c = reduce_to_comp(flatten(one()));
    return QuotientAlgebra::from_table(field(), std::move(labels), std::move(table), std::move(one_c));
  }

 private:
  QuotientAlgebra base_;
  ModuleModel mod_;
};

}  // namespace staralg
