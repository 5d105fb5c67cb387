#pragma once

/**
 * Derivations given by generator images, extended by additivity, the
 * Leibniz rule, and the quotient rule; Kahler-differential presentations
 * with the universal factoring map.
 *
 * A derivation is specified on a finitely presented ring
 *   k[v_1..v_n] / (relations)
 * by the images D(v_i), which live in a free module of some rank over the
 * same polynomial ring.  Construction validates that the images are
 * compatible with the relations (the Leibniz-expanded image of every
 * relation reduces to zero) and that every declared linearity-base element
 * maps to zero, so invalid specifications never exist downstream.
 */

#include <optional>
#include <string>
#include <vector>

#include "fraction.hpp"
#include "polynomial.hpp"

namespace staralg {

/// A finitely presented ring: polynomial variables, relation polynomials,
/// the subset of variables generating the base subring, and the monomial
/// prime at which it is localized (empty = no localization).
struct RingPresentation {
  Field field;
  std::vector<std::string> vars;
  std::vector<Polynomial> relations;
  std::vector<std::string> base_vars;    // generators of the subring A
  std::vector<std::string> localized_at; // monomial prime generators

  static RingPresentation polynomial_ring(Field f, std::vector<std::string> vs) {
    return RingPresentation{f, std::move(vs), {}, {}, {}};
  }
};

class DerivationSpec {
 public:
  /**
   * `images[i]` is the image of `domain.vars[i]`, a vector over the target
   * free module (rank = images[i].size(), equal for all i).
   * `linearity_base` lists ring elements required to map to zero.
   */
  DerivationSpec(RingPresentation domain, std::vector<std::vector<Polynomial>> images,
                 std::vector<Polynomial> linearity_base)
      : domain_(std::move(domain)), images_(std::move(images)),
        linearity_base_(std::move(linearity_base)) {
    if (images_.size() != domain_.vars.size())
      throw std::invalid_argument("DerivationSpec: one image per ring generator required");
    rank_ = images_.empty() ? 0 : images_[0].size();
    for (const auto& im : images_)
      if (im.size() != rank_) throw std::invalid_argument("DerivationSpec: ragged image ranks");
    validate();
  }

  /// d/dZ on k[vars]; every other variable maps to zero.
  static DerivationSpec partial(const RingPresentation& domain, const std::string& var) {
    Field f = domain.field;
    std::vector<std::vector<Polynomial>> ims;
    for (const auto& v : domain.vars) {
      ims.push_back({v == var ? Polynomial::one(f, domain.vars) : Polynomial::zero(f, domain.vars)});
    }
    std::vector<Polynomial> base;
    for (const auto& v : domain.vars)
      if (v != var) base.push_back(Polynomial::variable(f, domain.vars, v));
    return DerivationSpec(domain, std::move(ims), std::move(base));
  }

  const RingPresentation& domain() const { return domain_; }
  std::size_t target_rank() const { return rank_; }
  const std::vector<std::vector<Polynomial>>& images() const { return images_; }

  /// D on a polynomial: sum over variables of (df/dv) * D(v).
  std::vector<Polynomial> derive(const Polynomial& f) const {
    if (f.vars() != domain_.vars)
      throw std::invalid_argument("DerivationSpec::derive: element uses unknown variables");
    std::vector<Polynomial> out(rank_, Polynomial::zero(domain_.field, domain_.vars));
    for (std::size_t i = 0; i < domain_.vars.size(); ++i) {
      Polynomial pf = f.derivative(i);
      if (pf.is_zero()) continue;
      for (std::size_t c = 0; c < rank_; ++c) out[c] += pf * images_[i][c];
    }
    for (auto& p : out) p = reduce(p);
    return out;
  }

  /// Quotient rule D(u/v) = (v D(u) - u D(v)) / v^2; the denominator must
  /// be a unit in the ambient localization.
  std::vector<LocalFraction> derive(const LocalFraction& f) const {
    if (!f.denominator_is_unit())
      throw std::invalid_argument("DerivationSpec::derive: denominator is not a unit in the localization");
    std::vector<Polynomial> du = derive(f.num());
    std::vector<Polynomial> dv = derive(f.den());
    std::vector<LocalFraction> out;
    out.reserve(rank_);
    for (std::size_t c = 0; c < rank_; ++c)
      out.push_back(LocalFraction(f.den() * du[c] - f.num() * dv[c],
                                  f.den() * f.den(), f.prime_vars()));
    return out;
  }

  struct LinearityReport {
    bool pass;
    std::optional<Polynomial> witness;
  };

  /// Pass iff every linearity-base element and all pairwise products map to
  /// zero; on failure reports the first offending element.
  LinearityReport check_linearity() const {
    for (const auto& g : linearity_base_) {
      if (!all_zero(derive(g))) return {false, g};
    }
    for (std::size_t i = 0; i < linearity_base_.size(); ++i)
      for (std::size_t j = i; j < linearity_base_.size(); ++j) {
        Polynomial p = linearity_base_[i] * linearity_base_[j];
        if (!all_zero(derive(p))) return {false, p};
      }
    return {true, std::nullopt};
  }

 private:
  void validate() {
    for (const auto& rel : domain_.relations) {
      std::vector<Polynomial> im;
      {
        // Leibniz expansion of the relation, before reduction
        im.assign(rank_, Polynomial::zero(domain_.field, domain_.vars));
        for (std::size_t i = 0; i < domain_.vars.size(); ++i) {
          Polynomial pf = rel.derivative(i);
          if (pf.is_zero()) continue;
          for (std::size_t c = 0; c < rank_; ++c) im[c] += pf * images_[i][c];
        }
      }
      for (auto& p : im) p = reduce(p);
      for (const auto& p : im)
        if (!p.is_zero())
          throw std::invalid_argument("DerivationSpec: images incompatible with relation " + rel.str());
    }
    for (const auto& g : linearity_base_) {
      if (!all_zero(derive(g)))
        throw std::invalid_argument("DerivationSpec: linearity-base element " + g.str() +
                                    " has nonzero image");
    }
  }

  static bool all_zero(const std::vector<Polynomial>& v) {
    for (const auto& p : v)
      if (!p.is_zero()) return false;
    return true;
  }

  /// Normal form modulo the relation polynomials (graded lex reduction).
  Polynomial reduce(Polynomial p) const {
    bool changed = true;
    while (changed && !p.is_zero()) {
      changed = false;
      for (const auto& rel : domain_.relations) {
        if (rel.is_zero()) continue;
        auto [q, r] = p.divmod(rel);
        if (!q.is_zero()) { p = r; changed = true; }
      }
    }
    return p;
  }

  RingPresentation domain_;
  std::vector<std::vector<Polynomial>> images_;
  std::vector<Polynomial> linearity_base_;
  std::size_t rank_;
};

/**
 * The module of Kahler differentials of S over A, presented by the symbols
 * d(v) for the non-base variables v, modulo the Jacobian rows of the
 * relations.
 */
class KahlerPresentation {
 public:
  explicit KahlerPresentation(const RingPresentation& s) : ring_(s) {
    for (const auto& v : s.vars) {
      bool in_base = false;
      for (const auto& b : s.base_vars)
        if (b == v) { in_base = true; break; }
      if (!in_base) gens_.push_back(v);
    }
    for (const auto& rel : s.relations) {
      std::vector<Polynomial> row;
      for (const auto& g : gens_) row.push_back(rel.derivative(g));
      rows_.push_back(std::move(row));
    }
  }

  const std::vector<std::string>& generators() const { return gens_; }
  const std::vector<std::vector<Polynomial>>& relation_rows() const { return rows_; }

  /// d(v_i) as a coordinate vector over the generators; base variables map to 0.
  std::vector<Polynomial> differential_of(const std::string& var) const {
    std::vector<Polynomial> out(gens_.size(), Polynomial::zero(ring_.field, ring_.vars));
    for (std::size_t i = 0; i < gens_.size(); ++i)
      if (gens_[i] == var) out[i] = Polynomial::one(ring_.field, ring_.vars);
    return out;
  }

  /**
   * The universal property, desk form: given images alpha(d v_i) in a free
   * module, return the derivation alpha o d.  Throws when the images do not
   * kill the Jacobian rows, i.e. when no such module map exists.
   */
  DerivationSpec factor_through(const std::vector<std::vector<Polynomial>>& gen_images) const {
    if (gen_images.size() != gens_.size())
      throw std::invalid_argument("factor_through: one image per differential generator");
    std::size_t rank = gens_.empty() ? 0 : gen_images[0].size();
    std::vector<std::vector<Polynomial>> var_images;
    for (const auto& v : ring_.vars) {
      bool found = false;
      for (std::size_t i = 0; i < gens_.size(); ++i)
        if (gens_[i] == v) {
          var_images.push_back(gen_images[i]);
          found = true;
          break;
        }
      if (!found)
        var_images.push_back(std::vector<Polynomial>(rank, Polynomial::zero(ring_.field, ring_.vars)));
    }
    std::vector<Polynomial> base;
    for (const auto& b : ring_.base_vars) base.push_back(Polynomial::variable(ring_.field, ring_.vars, b));
    return DerivationSpec(ring_, std::move(var_images), std::move(base));
  }

 private:
  RingPresentation ring_;
  std::vector<std::string> gens_;
  std::vector<std::vector<Polynomial>> rows_;
};

}  // namespace staralg
