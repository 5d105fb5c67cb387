#pragma once

/**
 * Ring extensions A ⊆ S inside the truncated model k[x,y]/(x^N, y^(d+1)).
 *
 * Both rings are presented by generator images (series with the y variable
 * kept symbolic).  Their k-spans in the truncated model are computed once by
 * a monomial walk and every check — divisibility, torsion-freeness,
 * quadraticity, ideal contraction/extension, generator counts — is exact
 * linear algebra over those spans.
 *
 * Every check is truncation-level: a pass means "verified up to precision N,
 * y-degree d, and exponent M", never an unconditional proof.
 */

#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "algebra_model.hpp"
#include "series.hpp"

namespace staralg {

struct SpanCertificate {
  std::string target;  // label of a spanned element
  Vec coordinates;     // its coordinates over the certifying basis
};

struct CAnalyticReport {
  bool pass = false;
  std::string failure;                      // witness description when failing
  std::size_t small_dim = 0, big_dim = 0;   // span dimensions
  std::size_t small_quot_dim = 0, big_quot_dim = 0;  // dims of A/c^m A, S/c^m S
  std::vector<SpanCertificate> divisibility_samples;
};

struct QuadraticReport {
  bool pass = false;
  std::size_t witness = 0;  // index of the failing sample pair
};

struct ContractExtendReport {
  bool pass = false;
  std::size_t ideal_dim = 0;       // span dimension of the input ideal
  std::size_t transported_dim = 0; // dimension after the round trip
  std::string detail;
};

struct GeneratorBoundReport {
  bool pass = false;
  std::size_t count = 0;         // generators returned
  std::vector<Vec> generators;   // model coordinates, each verified in J ∩ A
  std::string detail;
};

struct PrimeCorrespondenceReport {
  bool pass = false;
  std::size_t small_quot_dim = 0, big_quot_dim = 0;
  std::string detail;
};

class ExtensionInstance {
 public:
  ExtensionInstance(Field f, std::size_t precision, std::size_t ydeg,
                    std::vector<YLaurent> small_gens, std::vector<YLaurent> big_gens,
                    YLaurent c_image, std::size_t max_exponent = 3)
      : field_(f),
        precision_(precision),
        ydeg_(ydeg),
        model_(QuotientAlgebra::monomial_quotient(f, {"x", "y"}, {precision, ydeg + 1})),
        small_span_(f, model_.dim()),
        big_span_(f, model_.dim()),
        c_(to_model(c_image)),
        max_exponent_(max_exponent) {
    build_span(small_gens, small_span_);
    // the big ring contains the small one
    std::vector<YLaurent> all = small_gens;
    all.insert(all.end(), big_gens.begin(), big_gens.end());
    build_span(all, big_span_);
    Valuation cv = model_valuation(c_);
    if (!cv.exact || cv.value < 1)
      throw std::invalid_argument("ExtensionInstance: c must be a nonunit with determinate order");
    c_val_ = static_cast<std::size_t>(cv.value);
    check_nonzerodivisor();
  }

  const QuotientAlgebra& model() const { return model_; }
  const RowSpan& small_span() const { return small_span_; }
  const RowSpan& big_span() const { return big_span_; }
  std::size_t precision() const { return precision_; }
  std::size_t ydeg() const { return ydeg_; }
  std::size_t max_exponent() const { return max_exponent_; }

  /// Coordinates of a y-symbolic series in the truncated model; the window
  /// of every y-coefficient must reach order N.
  Vec to_model(const YLaurent& a) const {
    if (a.ydeg_bound() < ydeg_)
      throw std::invalid_argument("ExtensionInstance: y-degree bound of element too small");
    Vec v = model_.zero();
    for (std::size_t j = 0; j <= ydeg_; ++j) {
      const Laurent& c = a.coeff(j);
      if (c.bound() < static_cast<long>(precision_))
        throw std::domain_error("ExtensionInstance: precision exhausted while embedding element");
      for (long o = c.lo(); o < static_cast<long>(precision_); ++o) {
        FieldElem cv = c.coeff(o);
        if (cv.is_zero()) continue;
        if (o < 0)
          throw std::invalid_argument("ExtensionInstance: element has a pole; not in the model ring");
        Monomial m{static_cast<std::uint32_t>(o), static_cast<std::uint32_t>(j)};
        v[index_of(m)] += cv;
      }
    }
    return v;
  }

  Vec c_power(std::size_t m) const {
    Vec p = model_.one();
    for (std::size_t i = 0; i < m; ++i) p = model_.mul(p, c_);
    return p;
  }

  /// The ideal of the subring spanned by `ring` generated by `gens`:
  /// one multiplication round over the ring's span basis.
  RowSpan ideal_in(const RowSpan& ring, const std::vector<Vec>& gens) const {
    RowSpan out(field_, model_.dim());
    for (const auto& g : gens)
      for (const auto& b : ring.basis()) out.insert(model_.mul(g, b));
    return out;
  }

  RowSpan scaled_span(const RowSpan& span, const Vec& factor) const {
    RowSpan out(field_, model_.dim());
    for (const auto& b : span.basis()) out.insert(model_.mul(factor, b));
    return out;
  }

  /**
   * Divisibility and torsion-freeness of S/A at c^m:
   *   (i)  every S-image lies in  span(A) + c^m span(S)
   *   (ii) span(A) ∩ c^m span(S) ⊆ c^m span(A)
   * together with the dimension count for A/c^m A ≅ S/c^m S.
   */
  CAnalyticReport is_c_analytic(std::size_t m) const {
    if (m == 0) throw std::invalid_argument("is_c_analytic: exponent must be positive");
    if (m * c_val_ >= precision_)
      throw std::domain_error("is_c_analytic: precision exhausted (N <= m * ord c)");
    CAnalyticReport rep;
    Vec cm = c_power(m);
    RowSpan cmS = scaled_span(big_span_, cm);
    RowSpan cmA = scaled_span(small_span_, cm);

    RowSpan divisor(field_, model_.dim());
    for (const auto& b : small_span_.basis()) divisor.insert(b);
    for (const auto& b : cmS.basis()) divisor.insert(b);

    rep.small_dim = small_span_.dim();
    rep.big_dim = big_span_.dim();
    rep.small_quot_dim = small_span_.dim() - cmA.dim();
    rep.big_quot_dim = big_span_.dim() - cmS.dim();

    for (const auto& b : big_span_.basis()) {
      if (!divisor.contains(b)) {
        rep.pass = false;
        rep.failure = "divisibility fails: an S-element is outside span(A) + c^" +
                      std::to_string(m) + " span(S)";
        return rep;
      }
    }
    // certificates for a few spanned targets
    std::vector<Vec> columns;
    for (const auto& b : small_span_.basis()) columns.push_back(b);
    for (const auto& b : cmS.basis()) columns.push_back(b);
    for (std::size_t i = 0; i < big_span_.basis().size() && rep.divisibility_samples.size() < 3;
         i += std::max<std::size_t>(1, big_span_.basis().size() / 3)) {
      auto coords = coordinates_over(columns, big_span_.basis()[i], field_);
      if (coords)
        rep.divisibility_samples.push_back({"S-basis[" + std::to_string(i) + "]", *coords});
    }

    RowSpan meet = small_span_.intersect(cmS);
    if (!cmA.contains_span(meet)) {
      rep.pass = false;
      rep.failure = "torsion-freeness fails: c^" + std::to_string(m) +
                    " S ∩ A exceeds c^" + std::to_string(m) + " A";
      return rep;
    }
    if (rep.small_quot_dim != rep.big_quot_dim) {
      rep.pass = false;
      rep.failure = "quotient dimensions differ: dim A/c^m A = " +
                    std::to_string(rep.small_quot_dim) +
                    ", dim S/c^m S = " + std::to_string(rep.big_quot_dim);
      return rep;
    }
    rep.pass = true;
    return rep;
  }

  /// st ∈ sR + tR + R for the sampled pairs, with R ranging over the small span.
  QuadraticReport is_quadratic(const std::vector<std::pair<Vec, Vec>>& samples) const {
    auto mul = [this](const Vec& a, const Vec& b) { return model_.mul(a, b); };
    return quadratic_over(mul, small_span_.basis(), samples, field_);
  }

  /**
   * Generic quadratic-extension solver: for each pair (s, t) solve
   * st = s r + t r' + r'' with r, r', r'' over `small_basis`.
   */
  static QuadraticReport quadratic_over(
      const std::function<Vec(const Vec&, const Vec&)>& mul,
      const std::vector<Vec>& small_basis,
      const std::vector<std::pair<Vec, Vec>>& samples, Field field) {
    QuadraticReport rep;
    for (std::size_t k = 0; k < samples.size(); ++k) {
      const auto& [s, t] = samples[k];
      Vec target = mul(s, t);
      std::size_t n = target.size(), cols = 3 * small_basis.size();
      Matrix<FieldElem> mat(n, cols, FieldElem::zero(field));
      for (std::size_t j = 0; j < small_basis.size(); ++j) {
        Vec sc = mul(s, small_basis[j]);
        Vec tc = mul(t, small_basis[j]);
        for (std::size_t i = 0; i < n; ++i) {
          mat.at(i, j) = sc[i];
          mat.at(i, small_basis.size() + j) = tc[i];
          mat.at(i, 2 * small_basis.size() + j) = small_basis[j][i];
        }
      }
      if (!linear_solve(mat, target).solution) {
        rep.pass = false;
        rep.witness = k;
        return rep;
      }
    }
    rep.pass = true;
    return rep;
  }

  /// Least positive e <= bound with c^e in the span; nullopt otherwise.
  std::optional<std::size_t> c_exponent_in(const RowSpan& ideal) const {
    for (std::size_t e = 1; e <= max_exponent_ * 2; ++e) {
      if (e * c_val_ >= precision_) break;
      if (ideal.contains(c_power(e))) return e;
    }
    return std::nullopt;
  }

  /**
   * Prop-style ideal transport: extend an ideal of A to S and contract
   * back (side == 'A'), or contract an ideal of S and re-extend
   * (side == 'S').  The ideal must meet C.
   */
  ContractExtendReport contract_extend(const std::vector<Vec>& gens, char side) const {
    ContractExtendReport rep;
    if (side == 'A') {
      RowSpan ideal = ideal_in(small_span_, gens);
      if (!c_exponent_in(ideal))
        throw std::invalid_argument("contract_extend: ideal does not meet C");
      RowSpan extended = ideal_in(big_span_, gens);
      RowSpan back = extended.intersect(small_span_);
      rep.ideal_dim = ideal.dim();
      rep.transported_dim = back.dim();
      rep.pass = back.same_span(ideal);
      rep.detail = rep.pass ? "I = IS ∩ A within bounds" : "round trip changed the ideal";
    } else {
      RowSpan ideal = ideal_in(big_span_, gens);
      if (!c_exponent_in(ideal))
        throw std::invalid_argument("contract_extend: ideal does not meet C");
      RowSpan contracted = ideal.intersect(small_span_);
      std::vector<Vec> cg(contracted.basis().begin(), contracted.basis().end());
      RowSpan re_extended = ideal_in(big_span_, cg);
      rep.ideal_dim = ideal.dim();
      rep.transported_dim = re_extended.dim();
      rep.pass = re_extended.same_span(ideal);
      rep.detail = rep.pass ? "J = (J ∩ A)S within bounds" : "round trip changed the ideal";
    }
    return rep;
  }

  /**
   * Prop "n+1 generators" procedure: for J = (x_1..x_n)S meeting C, write
   * x_i = a_i + c^2 s_i and return (a_1..a_n, c^2) — or (a_1..a_n) under
   * the quasilocal flag, when the smaller set still generates.
   */
  GeneratorBoundReport generator_bound(const std::vector<Vec>& j_gens, bool quasilocal) const {
    GeneratorBoundReport rep;
    RowSpan ideal = ideal_in(big_span_, j_gens);
    auto e = c_exponent_in(ideal);
    if (!e) throw std::invalid_argument("generator_bound: ideal does not meet C");
    CAnalyticReport pre = is_c_analytic(2 * *e);
    if (!pre.pass) {
      rep.pass = false;
      rep.detail = "precondition failed: extension not C-analytic at exponent " +
                   std::to_string(2 * *e);
      return rep;
    }
    Vec c_sq = c_power(2 * *e);
    RowSpan contracted = ideal.intersect(small_span_);

    std::vector<Vec> columns;
    for (const auto& b : small_span_.basis()) columns.push_back(b);
    RowSpan c2S = scaled_span(big_span_, c_sq);
    for (const auto& b : c2S.basis()) columns.push_back(b);

    std::vector<Vec> a_gens;
    for (const auto& x : j_gens) {
      auto coords = coordinates_over(columns, x, field_);
      if (!coords)
        throw std::domain_error("generator_bound: decomposition x = a + c^2 s not found at precision N");
      Vec a = model_.zero();
      for (std::size_t j = 0; j < small_span_.basis().size(); ++j)
        for (std::size_t i = 0; i < a.size(); ++i)
          a[i] += (*coords)[j] * small_span_.basis()[j][i];
      // a = x - c^2 s lies in J and in A
      if (!ideal.contains(a) || !small_span_.contains(a)) {
        rep.pass = false;
        rep.detail = "candidate generator failed the J ∩ A verification";
        return rep;
      }
      a_gens.push_back(std::move(a));
    }

    std::vector<Vec> with_c2 = a_gens;
    with_c2.push_back(c_sq);
    if (!ideal_in(small_span_, with_c2).same_span(contracted)) {
      rep.pass = false;
      rep.detail = "generators (a_1..a_n, c^2) do not span J ∩ A within bounds";
      return rep;
    }
    if (quasilocal) {
      if (ideal_in(small_span_, a_gens).same_span(contracted)) {
        rep.generators = a_gens;
      } else {
        rep.pass = false;
        rep.detail = "quasilocal reduction failed within bounds";
        return rep;
      }
    } else {
      rep.generators = with_c2;
    }
    rep.count = rep.generators.size();
    rep.pass = true;
    rep.detail = "generators verified in J ∩ A and spanning it within bounds";
    return rep;
  }

  /**
   * Quotient-level prime correspondence: for an ideal P of A meeting C,
   * the inclusion A/P -> S/PS must be a k-algebra isomorphism; checked by
   * dimension count, injectivity, and multiplication-table comparison.
   */
  PrimeCorrespondenceReport prime_correspondence(const std::vector<Vec>& p_gens) const {
    PrimeCorrespondenceReport rep;
    RowSpan pa = ideal_in(small_span_, p_gens);
    if (!c_exponent_in(pa))
      throw std::invalid_argument("prime_correspondence: ideal does not meet C");
    RowSpan ps = ideal_in(big_span_, p_gens);
    rep.small_quot_dim = small_span_.dim() - pa.dim();
    rep.big_quot_dim = big_span_.dim() - ps.dim();
    if (rep.small_quot_dim != rep.big_quot_dim) {
      rep.detail = "quotient dimensions differ";
      return rep;
    }
    // choose representatives of A/P: rows of A independent mod PA
    std::vector<Vec> reps;
    RowSpan seen = pa;
    for (const auto& b : small_span_.basis())
      if (seen.insert(b)) reps.push_back(b);
    // injectivity of A/P -> S/PS on representatives
    RowSpan seen_s = ps;
    for (const auto& r : reps) {
      if (!seen_s.insert(r)) {
        rep.detail = "representative collapses in S/PS: map not injective";
        return rep;
      }
    }
    // multiplicativity: compare products modulo PS against products modulo PA
    auto reduce_coords = [this](const RowSpan& ideal, const std::vector<Vec>& basis, const Vec& v)
        -> std::optional<Vec> {
      std::vector<Vec> cols = basis;
      for (const auto& b : ideal.basis()) cols.push_back(b);
      auto sol = coordinates_over(cols, v, field_);
      if (!sol) return std::nullopt;
      return Vec(sol->begin(), sol->begin() + static_cast<long>(basis.size()));
    };
    for (std::size_t i = 0; i < reps.size(); ++i)
      for (std::size_t j = i; j < reps.size(); ++j) {
        Vec prod = model_.mul(reps[i], reps[j]);
        auto ca = reduce_coords(pa, reps, prod);
        auto cs = reduce_coords(ps, reps, prod);
        if (!ca || !cs || *ca != *cs) {
          rep.detail = "multiplication tables disagree";
          return rep;
        }
      }
    rep.pass = true;
    rep.detail = "A/P ≅ S/PS as k-algebras within bounds";
    return rep;
  }

 private:
  void build_span(const std::vector<YLaurent>& gens, RowSpan& out) const {
    std::vector<Vec> images;
    for (const auto& g : gens) {
      Valuation w = weight(g);
      if (!w.exact && w.value < 1)
        throw std::domain_error("ExtensionInstance: generator weight indeterminate at this precision");
      if (w.exact && w.value < 1)
        throw std::invalid_argument(
            "ExtensionInstance: generator is a unit in the truncated model; span not finite");
      images.push_back(to_model(g));
    }
    out.insert(model_.one());
    // breadth-first products of generators; identical images are visited
    // once (sound: products factor through the image) and zeros prune
    std::set<Vec> visited;
    std::vector<Vec> frontier{model_.one()};
    visited.insert(model_.one());
    std::size_t guard = 0;
    while (!frontier.empty()) {
      if (++guard > precision_ + ydeg_ + 4)
        throw std::domain_error("ExtensionInstance: span enumeration exceeded the depth bound");
      std::vector<Vec> next;
      for (const auto& v : frontier) {
        for (const auto& g : images) {
          Vec p = model_.mul(v, g);
          bool zero = true;
          for (const auto& cc : p)
            if (!cc.is_zero()) { zero = false; break; }
          if (zero || visited.count(p)) continue;
          visited.insert(p);
          out.insert(p);
          next.push_back(std::move(p));
        }
      }
      if (out.dim() == model_.dim()) break;  // span saturated
      frontier = std::move(next);
    }
  }

  /// min over y-degrees j of (x-valuation of coefficient j) + j
  Valuation weight(const YLaurent& a) const {
    long best = 1 << 20;
    bool exact = false;
    for (std::size_t j = 0; j <= a.ydeg_bound(); ++j) {
      Valuation v = a.coeff(j).valuation();
      long w = v.value + static_cast<long>(j);
      if (v.exact && (!exact || w < best)) { best = w; exact = true; }
      else if (!v.exact && !exact) best = std::min(best, w);
    }
    return exact ? Valuation::at(best) : Valuation::at_least(best);
  }

  Valuation model_valuation(const Vec& v) const {
    long best = 1 << 20;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i].is_zero()) continue;
      best = std::min(best, static_cast<long>(model_.basis_monomials()[i][0]));
    }
    if (best == (1 << 20)) return Valuation::at_least(static_cast<long>(precision_));
    return Valuation::at(best);
  }

  std::size_t index_of(const Monomial& m) const {
    const auto& monos = model_.basis_monomials();
    for (std::size_t i = 0; i < monos.size(); ++i)
      if (monos[i] == m) return i;
    throw std::logic_error("ExtensionInstance: monomial not in model basis");
  }

  void check_nonzerodivisor() {
    // multiplication by c is injective on the span of monomials of order < N - ord(c)
    RowSpan image(field_, model_.dim());
    const auto& monos = model_.basis_monomials();
    std::size_t expected = 0;
    for (std::size_t i = 0; i < monos.size(); ++i) {
      if (monos[i][0] + c_val_ >= precision_) continue;
      ++expected;
      image.insert(model_.mul(c_, model_.basis_vector(i)));
    }
    if (image.dim() != expected)
      throw std::invalid_argument("ExtensionInstance: c is a zerodivisor on the truncated model");
  }

  Field field_;
  std::size_t precision_;
  std::size_t ydeg_;
  QuotientAlgebra model_;
  RowSpan small_span_;
  RowSpan big_span_;
  Vec c_;
  std::size_t c_val_ = 0;
  std::size_t max_exponent_;
};

}  // namespace staralg
