#pragma once

/**
 * Finite-rank torsion-free modules over a DVR model.
 *
 * The DVR is k[t] localized at (t): arithmetic lifts to exact polynomial
 * computation and re-truncates at t^N, so valuations at or above the
 * truncation window surface as sentinels rather than numbers.  A module is
 * presented by finitely many generator columns inside a free module; the
 * rank invariant and the freeness of K/JK come from the Smith normal form
 * of the generator matrix.  Stable-ideal and minimal-generator checks run
 * on finite-dimensional local algebra models.
 */

#include <optional>
#include <string>
#include <vector>

#include "algebra_model.hpp"
#include "snf.hpp"

namespace staralg {

struct DvrModel {
  Field field;
  std::string uniformizer = "t";
  std::size_t precision = 16;  // truncation exponent N
};

/// A submodule of V^n given by generator columns (entries: polynomials in
/// the uniformizer); torsion-freeness is automatic.
class DvrModulePresentation {
 public:
  DvrModulePresentation(DvrModel model, std::size_t ambient_rank,
                        std::vector<std::vector<Polynomial>> generators)
      : model_(std::move(model)), ambient_rank_(ambient_rank), gens_(std::move(generators)) {
    for (const auto& g : gens_) {
      if (g.size() != ambient_rank_)
        throw std::invalid_argument("DvrModulePresentation: generator length mismatch");
      for (const auto& e : g)
        if (e.vars() != std::vector<std::string>{model_.uniformizer})
          throw std::invalid_argument("DvrModulePresentation: entries must be univariate in " +
                                      model_.uniformizer);
    }
  }

  const DvrModel& model() const { return model_; }
  std::size_t ambient_rank() const { return ambient_rank_; }
  const std::vector<std::vector<Polynomial>>& generators() const { return gens_; }

  Matrix<Polynomial> generator_matrix() const {
    Polynomial zero = Polynomial::zero(model_.field, {model_.uniformizer});
    Matrix<Polynomial> m(ambient_rank_, std::max<std::size_t>(gens_.size(), 1), zero);
    for (std::size_t j = 0; j < gens_.size(); ++j)
      for (std::size_t i = 0; i < ambient_rank_; ++i) m.at(i, j) = gens_[j][i];
    return m;
  }

  bool is_zero() const {
    for (const auto& g : gens_)
      for (const auto& e : g)
        if (!e.is_zero()) return false;
    return true;
  }

 private:
  DvrModel model_;
  std::size_t ambient_rank_;
  std::vector<std::vector<Polynomial>> gens_;
};

/// r = number of invariant factors of the generator matrix = dim K/tK.
inline std::size_t tffr_rank(const DvrModulePresentation& k) {
  if (k.generators().empty() || k.is_zero()) return 0;
  SnfResult s = smith_normal_form(k.generator_matrix());
  // unit-content factors are units of the localization; only t-order matters
  return s.invariant_factors.size();
}

struct QuotientFreenessReport {
  bool pass = false;
  std::size_t rank = 0;                    // size of the exhibited basis
  std::vector<std::vector<Polynomial>> basis;  // representatives in V^n
  std::string detail;
};

namespace detail {

/// k-linear coordinates of a vector of polynomials inside (k[t]/t^bound)^n.
inline Vec dvr_coords(const std::vector<Polynomial>& v, std::size_t bound, Field f) {
  Vec out(v.size() * bound, FieldElem::zero(f));
  for (std::size_t i = 0; i < v.size(); ++i)
    for (const auto& [m, c] : v[i].terms())
      if (m[0] < bound) out[i * bound + m[0]] = c;
  return out;
}

inline std::vector<Polynomial> scale_by_t_pow(const std::vector<Polynomial>& v, std::size_t e) {
  std::vector<Polynomial> out;
  for (const auto& p : v) {
    Polynomial q = p;
    for (std::size_t i = 0; i < e; ++i)
      q *= Polynomial::variable(p.field(), p.vars(), p.vars()[0]);
    out.push_back(std::move(q));
  }
  return out;
}

}  // namespace detail

/**
 * K/JK for J = (t^m) is a free V/J-module of rank tffr_rank(K): exhibits
 * the basis coming from the Smith normal form and verifies spanning and
 * V/J-independence by exact linear algebra over k, inside (k[t]/t^bound)^n.
 */
inline QuotientFreenessReport quotient_freeness(const DvrModulePresentation& k, std::size_t m) {
  QuotientFreenessReport rep;
  if (m == 0) throw std::invalid_argument("quotient_freeness: need m >= 1");
  const DvrModel& model = k.model();
  Field f = model.field;
  if (k.generators().empty() || k.is_zero()) {
    rep.pass = true;
    rep.detail = "zero module: free of rank 0";
    return rep;
  }
  SnfResult s = smith_normal_form(k.generator_matrix());
  std::size_t r = s.invariant_factors.size();
  // max t-order among the invariant factors
  std::size_t maxval = 0;
  for (const auto& d : s.invariant_factors) {
    std::size_t v = d.terms().begin()->first[0];  // lowest-order term
    maxval = std::max(maxval, v);
  }
  if (m * std::max<std::size_t>(maxval, 1) >= model.precision)
    throw std::domain_error("quotient_freeness: precision exhausted (m * max valuation >= N)");

  // basis candidates b_i = d_i * (column i of U^{-1}); equivalently solve
  // U b_i = d_i e_i by applying U's inverse through the identity U M V = D:
  // the columns of M V are exactly U^{-1} D, so b_i = (M V) e_i.
  Matrix<Polynomial> mv = k.generator_matrix() * s.v;
  std::vector<std::vector<Polynomial>> basis;
  for (std::size_t i = 0; i < r; ++i) {
    std::vector<Polynomial> b;
    for (std::size_t row = 0; row < k.ambient_rank(); ++row) b.push_back(mv.at(row, i));
    basis.push_back(std::move(b));
  }

  std::size_t bound = model.precision;
  std::size_t n = k.ambient_rank();
  // K and t^m K as k-spans inside (k[t]/t^bound)^n
  RowSpan kspan(f, n * bound), tmk(f, n * bound);
  for (const auto& g : k.generators())
    for (std::size_t e = 0; e + 1 <= bound; ++e) {
      kspan.insert(detail::dvr_coords(detail::scale_by_t_pow(g, e), bound, f));
      tmk.insert(detail::dvr_coords(detail::scale_by_t_pow(g, e + m), bound, f));
    }

  // spanning: b_i and their t-shifts recover K modulo t^m K
  RowSpan combined = tmk;
  for (const auto& b : basis)
    for (std::size_t e = 0; e < m; ++e)
      combined.insert(detail::dvr_coords(detail::scale_by_t_pow(b, e), bound, f));
  for (const auto& row : kspan.basis()) {
    if (!combined.contains(row)) {
      rep.detail = "basis fails to span K/t^m K";
      return rep;
    }
  }
  // V/J-independence: the m r shifted basis vectors are independent mod t^m K
  std::size_t quot_dim = kspan.dim() - tmk.dim();
  std::size_t indep = combined.dim() - tmk.dim();
  if (indep != m * r || quot_dim != m * r) {
    rep.detail = "independence count " + std::to_string(indep) + " differs from m*r = " +
                 std::to_string(m * r) + " (dim K/t^m K = " + std::to_string(quot_dim) + ")";
    return rep;
  }
  rep.pass = true;
  rep.rank = r;
  rep.basis = std::move(basis);
  rep.detail = "free V/J-basis of rank " + std::to_string(r) + " exhibited";
  return rep;
}

struct StableIdealReport {
  bool pass = false;
  std::string witness;        // the element i with I^2 = iI
  bool search_exhausted = false;
  std::string detail;
};

/**
 * Quasilocal stability test I^2 = iI: candidates are the generators and
 * their k-linear combinations of bounded coefficient height (all of k for
 * small finite fields).
 */
inline StableIdealReport is_stable_ideal(const QuotientAlgebra& local_model,
                                         const std::vector<Vec>& i_gens) {
  if (i_gens.empty()) throw std::invalid_argument("is_stable_ideal: ideal must be nonzero");
  Field f = local_model.field();
  StableIdealReport rep;

  // the ideal span and its square
  RowSpan ideal(f, local_model.dim());
  for (const auto& g : i_gens)
    for (std::size_t b = 0; b < local_model.dim(); ++b)
      ideal.insert(local_model.mul(g, local_model.basis_vector(b)));
  RowSpan square(f, local_model.dim());
  for (const auto& r1 : ideal.basis())
    for (const auto& r2 : ideal.basis()) square.insert(local_model.mul(r1, r2));

  // candidate coefficients
  std::vector<FieldElem> coeffs;
  if (f.kind() == FieldKind::PrimeField && f.characteristic() <= 25) {
    for (long c = 0; c < static_cast<long>(f.characteristic()); ++c)
      coeffs.push_back(FieldElem::from_int(f, c));
  } else {
    for (long num : {0L, 1L, -1L, 2L, -2L})
      coeffs.push_back(FieldElem::rational(num, 1));
    coeffs.push_back(FieldElem::rational(1, 2));
    coeffs.push_back(FieldElem::rational(-1, 2));
  }

  auto try_candidate = [&](const Vec& cand) -> bool {
    RowSpan ci(f, local_model.dim());
    for (const auto& r : ideal.basis()) ci.insert(local_model.mul(cand, r));
    return ci.same_span(square);
  };

  // single generators first, then bounded combinations
  for (std::size_t gi = 0; gi < i_gens.size(); ++gi) {
    if (try_candidate(i_gens[gi])) {
      rep.pass = true;
      rep.witness = "generator " + std::to_string(gi);
      return rep;
    }
  }
  std::vector<std::size_t> idx(i_gens.size(), 0);
  const std::size_t total = [&] {
    std::size_t t = 1;
    for (std::size_t i = 0; i < i_gens.size(); ++i) {
      if (t > 200000 / coeffs.size()) return std::size_t(200001);
      t *= coeffs.size();
    }
    return t;
  }();
  if (total > 200000) {
    rep.search_exhausted = true;
    rep.detail = "candidate family too large; search capped";
    return rep;
  }
  for (std::size_t code = 0; code < total; ++code) {
    std::size_t c = code;
    Vec cand(local_model.dim(), FieldElem::zero(f));
    bool nonzero = false;
    for (std::size_t i = 0; i < i_gens.size(); ++i) {
      FieldElem w = coeffs[c % coeffs.size()];
      c /= coeffs.size();
      if (w.is_zero()) continue;
      nonzero = true;
      for (std::size_t j = 0; j < cand.size(); ++j) cand[j] += w * i_gens[i][j];
    }
    if (!nonzero) continue;
    if (try_candidate(cand)) {
      rep.pass = true;
      rep.witness = "a k-combination of the generators";
      return rep;
    }
  }
  rep.search_exhausted = true;
  rep.detail = "no witness in the bounded candidate family";
  return rep;
}

/// Minimal generator count of a module over a local algebra model: the
/// dimension of the generated span modulo the maximal ideal's action
/// (Nakayama).  An ideal of the algebra is the module ModuleModel::free_module
/// (rank 1) with the ideal generators as module generators.
inline std::size_t minimal_generators(const QuotientAlgebra& local_model, const ModuleModel& mod,
                                      const std::vector<Vec>& gens) {
  Field f = local_model.field();
  RowSpan mod_span(f, mod.dim);
  for (const auto& g : gens)
    for (std::size_t b = 0; b < local_model.dim(); ++b)
      mod_span.insert(mod.act(local_model.basis_vector(b), g));
  RowSpan mspan = local_model.maximal_ideal_span();
  RowSpan mm(f, mod.dim);
  for (const auto& m : mspan.basis())
    for (const auto& g : mod_span.basis()) mm.insert(mod.act(m, g));
  return mod_span.dim() - mm.dim();
}

}  // namespace staralg
