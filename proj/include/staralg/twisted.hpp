#pragma once

/**
 * Series-embedded twisted-subring scenarios.
 *
 * The scenario realizes R = S ∩ D^{-1}(K) for
 *   A = k[x,y] localized at (x,y),
 *   S = A[Z] with Z embedded as a series z(x) of positive order,
 *   D = d/dZ (A-linear),
 *   C = powers of x,
 *   K = the valuation lattice { u : ord(u) >= v0 } in k[[x]],
 * with y itself embedded as a series y(x) of positive order whenever a
 * computation needs the full univariate picture.  The defaults are the
 * truncated lacunary series z = sum x^(i!) and y = sum x^((2i)!), explicit
 * stand-ins for power series algebraically independent over k(x); only
 * truncation-level identities are ever asserted.
 *
 * Membership, the coset map S/R -> K_C/K, the idealization comparison
 * r -> (r, D(r)) modulo c^m, the intermediate-ring correspondence, the
 * K/aK generator count, and the associated-prime witness search all live
 * here, together with the finite global-stability instances over k[t].
 */

#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "derivation.hpp"
#include "extension.hpp"
#include "fraction.hpp"
#include "idealization.hpp"
#include "series.hpp"

namespace staralg {

struct ScenarioConfig {
  Field field = Field::prime(5);
  std::size_t precision = 24;  // N
  std::size_t ydeg = 6;        // y-degree bound d
  long lattice_threshold = 0;  // v0; K = { ord >= v0 }
  bool lattice_proper = true;  // false models K = K_C (no lattice cut)
  std::size_t max_exponent = 3;
  std::string x_name = "x";    // the series variable generating C
  std::string y_name = "y";    // the second variable of A
  std::string z_name = "Z";    // the adjoined variable
  std::optional<TruncatedSeries> y_embed;  // default liouville(2)
  std::optional<TruncatedSeries> z_embed;  // default liouville(1)
};

struct MembershipVerdict {
  enum class State { Yes, No, Indeterminate };
  State in_R = State::Indeterminate;
  std::string element;
  bool derivative_zero = false;          // D(f) = 0 identically
  std::optional<Valuation> evidence;     // ord of the embedded derivative
  std::string note;

  bool yes() const { return in_R == State::Yes; }
  bool determinate() const { return in_R != State::Indeterminate; }

  std::string state_str() const {
    switch (in_R) {
      case State::Yes: return "yes";
      case State::No: return "no";
      default: return "indeterminate";
    }
  }
};

struct ClosureReport {
  bool pass = false;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // pairs containing a non-member
  std::string failure;
};

struct AlphaIsoReport {
  bool pass = false;
  std::vector<std::string> witnesses;  // one per coset layer j
  std::string failure;
};

struct AnalyticIsoReport {
  bool pass = false;
  std::size_t ring_dim = 0;    // dim of the S/c^m S part
  std::size_t module_dim = 0;  // dim of the K/c^m K part
  std::size_t image_dim = 0;   // dim of the span of f-images
  std::size_t hom_pairs = 0;   // pairs on which the homomorphism law was checked
  std::size_t kernel_samples = 0;
  std::string failure;
};

struct OneCaseReport {
  bool pass = false;
  std::size_t lhs_dim = 0, rhs_dim = 0;
  std::string detail;
};

struct CorrespondenceReport {
  bool pass = false;
  long recovered_threshold = 0;
  std::size_t samples = 0;
  std::string detail;
};

struct KqReport {
  std::size_t quotient_dim = 0;    // dim_k of K/aK at truncation
  std::size_t generator_count = 0; // minimal S-module generators (Nakayama)
  long a_valuation = 0;
};

struct AssocPrimeReport {
  bool found = false;
  std::string witness;
  std::string detail;
};

class Scenario {
 public:
  explicit Scenario(ScenarioConfig cfg)
      : cfg_(std::move(cfg)),
        vars_{cfg_.x_name, cfg_.y_name, cfg_.z_name},
        ring_(RingPresentation{cfg_.field, vars_, {}, {cfg_.x_name, cfg_.y_name},
                               {cfg_.x_name, cfg_.y_name}}),
        ddz_(DerivationSpec::partial(ring_, cfg_.z_name)),
        y_series_(cfg_.y_embed ? *cfg_.y_embed
                               : TruncatedSeries::liouville(cfg_.field, cfg_.x_name, cfg_.precision, 2)),
        z_series_(cfg_.z_embed ? *cfg_.z_embed
                               : TruncatedSeries::liouville(cfg_.field, cfg_.x_name, cfg_.precision, 1)) {
    if (y_series_.precision() != cfg_.precision || z_series_.precision() != cfg_.precision)
      throw std::invalid_argument("Scenario: embedded series precision mismatch");
    Valuation zy = Laurent::from_series(y_series_).valuation();
    Valuation zz = Laurent::from_series(z_series_).valuation();
    if ((zy.exact && zy.value < 1) || (zz.exact && zz.value < 1))
      throw std::invalid_argument("Scenario: embedded series must have positive order (lie in xU)");
  }

  const ScenarioConfig& config() const { return cfg_; }
  const Field& field() const { return cfg_.field; }
  std::size_t precision() const { return cfg_.precision; }
  long threshold() const { return cfg_.lattice_threshold; }
  const std::vector<std::string>& vars() const { return vars_; }

  Polynomial var(const std::string& name) const {
    return Polynomial::variable(cfg_.field, vars_, name);
  }

  LocalFraction frac(const Polynomial& num) const { return LocalFraction(num); }

  /// Full embedding x -> x, y -> y(x), Z -> z(x); univariate Laurent output.
  Laurent embed_full(const LocalFraction& f) const {
    long n = static_cast<long>(cfg_.precision);
    std::vector<Laurent> values{Laurent::monomial(cfg_.field, FieldElem::one(cfg_.field), 1, n),
                                Laurent::from_series(y_series_),
                                Laurent::from_series(z_series_)};
    Laurent zero = Laurent::zero_window(cfg_.field, 0, n);
    Laurent one = Laurent::monomial(cfg_.field, FieldElem::one(cfg_.field), 0, n);
    Laurent num = f.num().eval(values, one, zero);
    Laurent den = f.den().eval(values, one, zero);
    if (!den.valuation().exact)
      throw std::domain_error("Scenario: denominator embeds to zero within the precision window (" +
                              f.den().str() + ")");
    return num.divide(den);
  }

  /// y-symbolic embedding x -> x, Z -> z(x); y stays a bounded symbol.
  YLaurent embed_y(const LocalFraction& f) const {
    long n = static_cast<long>(cfg_.precision);
    std::size_t d = cfg_.ydeg;
    std::vector<YLaurent> values{
        YLaurent::from_laurent(d, Laurent::monomial(cfg_.field, FieldElem::one(cfg_.field), 1, n)),
        YLaurent::y_symbol(cfg_.field, d, n),
        YLaurent::from_laurent(d, Laurent::from_series(z_series_))};
    YLaurent zero(cfg_.field, d, n);
    YLaurent one =
        YLaurent::from_laurent(d, Laurent::monomial(cfg_.field, FieldElem::one(cfg_.field), 0, n));
    YLaurent num = f.num().eval(values, one, zero);
    YLaurent den = f.den().eval(values, one, zero);
    return num.divide(den);
  }

  LocalFraction derivative_of(const LocalFraction& f) const { return ddz_.derive(f)[0]; }

  /// Is f in the S-model at truncation: every y-coefficient has order >= 0.
  bool in_big_ring(const LocalFraction& f) const {
    YLaurent e = embed_y(f);
    for (std::size_t j = 0; j <= e.ydeg_bound(); ++j) {
      Valuation v = e.coeff(j).valuation();
      if (v.exact && v.value < 0) return false;
    }
    return true;
  }

  MembershipVerdict membership(const LocalFraction& f) const {
    return membership_at(f, cfg_.lattice_threshold);
  }

  /// Membership for the lattice { ord >= v }: R_v = S ∩ D^{-1}({ord >= v}).
  MembershipVerdict membership_at(const LocalFraction& f, long v) const {
    MembershipVerdict out;
    out.element = f.str();
    if (!in_big_ring(f)) {
      out.in_R = MembershipVerdict::State::No;
      out.note = "element is not in S at this truncation (a y-coefficient has a pole)";
      return out;
    }
    LocalFraction df = derivative_of(f);
    if (df.is_zero()) {
      out.in_R = MembershipVerdict::State::Yes;
      out.derivative_zero = true;
      out.note = "D(f) = 0 identically";
      return out;
    }
    Laurent e = embed_full(df);
    Valuation val = e.valuation();
    out.evidence = val;
    if (!val.exact) {
      // a symbolically nonzero derivative vanished within the window
      out.in_R = MembershipVerdict::State::Indeterminate;
      out.note = "embedded derivative vanishes mod x^" + std::to_string(val.value);
      return out;
    }
    out.in_R = val.value >= v ? MembershipVerdict::State::Yes : MembershipVerdict::State::No;
    return out;
  }

  /// Randomly sampled members: sparse polynomials over x, y, Z divided by
  /// small powers of x, filtered through the membership oracle.
  std::vector<LocalFraction> sample_members(std::size_t count, std::mt19937_64& rng) const {
    std::vector<LocalFraction> out;
    std::uniform_int_distribution<int> jdist(0, 2);
    std::size_t attempts = 0;
    while (out.size() < count) {
      if (++attempts > 60 * count + 100)
        throw std::runtime_error("Scenario::sample_members: sampling stalled");
      Polynomial p = random_polynomial(cfg_.field, vars_, 3, 4, rng);
      if (p.is_zero()) continue;
      int j = jdist(rng);
      Polynomial den = Polynomial::one(cfg_.field, vars_);
      for (int i = 0; i < j; ++i) den *= var(cfg_.x_name);
      LocalFraction f(p, den);
      MembershipVerdict v = membership(f);
      if (v.yes()) out.push_back(std::move(f));
    }
    return out;
  }

  /// Sums and products of member pairs stay members.  Pairs containing a
  /// non-member are skipped; indeterminate verdicts are an error.
  ClosureReport closure_check(const std::vector<std::pair<LocalFraction, LocalFraction>>& pairs) const {
    ClosureReport rep;
    for (const auto& [f, g] : pairs) {
      MembershipVerdict vf = membership(f), vg = membership(g);
      if (!vf.determinate() || !vg.determinate())
        throw std::domain_error("closure_check: indeterminate verdict encountered");
      if (!vf.yes() || !vg.yes()) {
        ++rep.skipped;
        continue;
      }
      for (const LocalFraction& h : {f + g, f * g}) {
        MembershipVerdict vh = membership(h);
        if (!vh.determinate())
          throw std::domain_error("closure_check: indeterminate verdict encountered");
        if (!vh.yes()) {
          rep.pass = false;
          rep.failure = "closure fails on " + h.str();
          return rep;
        }
      }
      ++rep.checked;
    }
    rep.pass = true;
    return rep;
  }

  /// The order-t truncation of z(x), as a polynomial in x.
  Polynomial z_truncation(std::size_t t) const {
    Polynomial p = Polynomial::zero(cfg_.field, vars_);
    for (std::size_t i = 0; i <= t && i < cfg_.precision; ++i) {
      if (z_series_.coeff(i).is_zero()) continue;
      Monomial m{static_cast<std::uint32_t>(i), 0, 0};
      p += Polynomial::term(cfg_.field, vars_, m, z_series_.coeff(i));
    }
    return p;
  }

  /// x^e as a fraction (e may be negative).
  LocalFraction x_power(long e) const {
    Polynomial num = Polynomial::one(cfg_.field, vars_);
    Polynomial den = Polynomial::one(cfg_.field, vars_);
    for (long i = 0; i < e; ++i) num *= var(cfg_.x_name);
    for (long i = 0; i < -e; ++i) den *= var(cfg_.x_name);
    return LocalFraction(num, den);
  }

  /// s_j = (Z - p_t) x^(v0 - j), the canonical representative with
  /// D(s_j) = x^(v0-j); t is the truncation order needed for s_j ∈ S.
  LocalFraction coset_witness(long j) const {
    long t = std::max<long>(0, j - cfg_.lattice_threshold - 1);
    LocalFraction zp(var(cfg_.z_name) - z_truncation(static_cast<std::size_t>(t)));
    return zp * x_power(cfg_.lattice_threshold - j);
  }

  /**
   * Surjectivity and injectivity of the coset map S/R -> K_C/K at the
   * layers j = 1..j_max: each coset x^(v0-j) + K is hit by an exhibited
   * element of S, and sampled elements with D(s) in K are members.
   */
  AlphaIsoReport alpha_iso_check(std::size_t j_max, std::mt19937_64& rng) const {
    AlphaIsoReport rep;
    if (j_max >= cfg_.precision)
      throw std::domain_error("alpha_iso_check: precision exhausted (j_max >= N)");
    for (long j = 1; j <= static_cast<long>(j_max); ++j) {
      long t = std::max<long>(0, j - cfg_.lattice_threshold - 1);
      if (t >= static_cast<long>(cfg_.precision))
        throw std::domain_error("alpha_iso_check: witness construction fails at layer " +
                                std::to_string(j) + " (truncation exceeds precision)");
      LocalFraction s = coset_witness(j);
      // s must lie in S: every y-coefficient of its embedding has order >= 0
      if (!in_big_ring(s)) {
        rep.pass = false;
        rep.failure = "witness " + s.str() + " is not in S at this truncation";
        return rep;
      }
      // D(s) = x^(v0-j) exactly: a representative of the j-th coset below the lattice
      LocalFraction ds = derivative_of(s);
      Laurent e = embed_full(ds);
      Valuation v = e.valuation();
      if (!v.exact || v.value != cfg_.lattice_threshold - j) {
        rep.pass = false;
        rep.failure = "derivative of witness at layer " + std::to_string(j) +
                      " has order " + v.str();
        return rep;
      }
      MembershipVerdict mv = membership(s);
      if (mv.yes()) {
        rep.pass = false;
        rep.failure = "witness at layer " + std::to_string(j) + " unexpectedly lies in R";
        return rep;
      }
      std::ostringstream os;
      os << "j=" << j << ": s_j = " << s.str() << ", ord D(s_j) = " << v.str();
      rep.witnesses.push_back(os.str());
    }
    // injectivity restated on verdicts: sampled members have the zero coset
    for (const LocalFraction& f : sample_members(8, rng)) {
      MembershipVerdict v = membership(f);
      if (!v.yes()) {
        rep.pass = false;
        rep.failure = "sampled member lost its verdict";
        return rep;
      }
    }
    rep.pass = true;
    return rep;
  }

  // ---------------------------------------------------------------------
  // The idealization comparison r -> (r, D(r)) modulo c^m
  // ---------------------------------------------------------------------

  /// The S/c^m S * K/c^m K model: ring part k[x,y]/(x^m, y^(d+1)) with Z
  /// folded through its series, module part the lattice layers
  /// x^v0 .. x^(v0+m-1) with the S-action through the full embedding.
  IdealizationModel idealization_model(std::size_t m) const {
    if (m == 0 || m >= cfg_.precision)
      throw std::invalid_argument("idealization_model: need 0 < m < N");
    QuotientAlgebra base =
        QuotientAlgebra::monomial_quotient(cfg_.field, {cfg_.x_name, cfg_.y_name}, {m, cfg_.ydeg + 1});
    ModuleModel mod{cfg_.field, m, {}};
    mod.action.assign(base.dim(), std::vector<Vec>(m, Vec(m, FieldElem::zero(cfg_.field))));
    Laurent y_emb = Laurent::from_series(y_series_);
    for (std::size_t b = 0; b < base.dim(); ++b) {
      const Monomial& mono = base.basis_monomials()[b];
      // the action of x^i y^j on the lattice layer x^(v0+r)
      Laurent factor = Laurent::monomial(cfg_.field, FieldElem::one(cfg_.field),
                                         static_cast<long>(mono[0]), static_cast<long>(cfg_.precision));
      for (std::uint32_t rep = 0; rep < mono[1]; ++rep) factor = factor * y_emb;
      for (std::size_t r = 0; r < m; ++r) {
        Laurent img = factor * Laurent::monomial(cfg_.field, FieldElem::one(cfg_.field),
                                                 cfg_.lattice_threshold + static_cast<long>(r),
                                                 static_cast<long>(cfg_.precision) +
                                                     cfg_.lattice_threshold);
        for (std::size_t s = 0; s < m; ++s) {
          long order = cfg_.lattice_threshold + static_cast<long>(s);
          if (order < img.bound()) mod.action[b][r][s] = img.coeff(order);
        }
      }
    }
    return IdealizationModel(std::move(base), std::move(mod));
  }

  /// f(r) = (r mod c^m S, D(r) mod c^m K) in the model above.
  IdealizationElement f_map(const IdealizationModel& model, std::size_t m,
                            const LocalFraction& r) const {
    MembershipVerdict v = membership(r);
    if (!v.yes())
      throw std::invalid_argument("f_map: " + r.str() + " is not a verified member of R");
    return f_map_coords(model, m, r);
  }

  /**
   * Coordinates of (r mod c^m S, D(r) mod c^m K) for an element whose
   * verdict is yes or indeterminate — an indeterminate derivative has
   * determinate low-order coordinates, which is all the model reads.
   */
  IdealizationElement f_map_lenient(const IdealizationModel& model, std::size_t m,
                                    const LocalFraction& r) const {
    MembershipVerdict v = membership(r);
    if (v.in_R == MembershipVerdict::State::No)
      throw std::invalid_argument("f_map: " + r.str() + " is not in R");
    return f_map_coords(model, m, r);
  }

 private:
  IdealizationElement f_map_coords(const IdealizationModel& model, std::size_t m,
                                   const LocalFraction& r) const {
    Vec ring = model.base().zero();
    YLaurent e = embed_y(r);
    for (std::size_t j = 0; j <= cfg_.ydeg; ++j) {
      const Laurent& c = e.coeff(j);
      for (long o = std::max(0L, c.lo()); o < std::min<long>(c.bound(), static_cast<long>(m)); ++o) {
        FieldElem cv = c.coeff(o);
        if (cv.is_zero()) continue;
        Monomial mono{static_cast<std::uint32_t>(o), static_cast<std::uint32_t>(j)};
        const auto& monos = model.base().basis_monomials();
        for (std::size_t idx = 0; idx < monos.size(); ++idx)
          if (monos[idx] == mono) { ring[idx] += cv; break; }
      }
    }
    Vec module(m, FieldElem::zero(cfg_.field));
    LocalFraction df = derivative_of(r);
    if (!df.is_zero()) {
      Laurent de = embed_full(df);
      if (de.bound() < cfg_.lattice_threshold + static_cast<long>(m))
        throw std::domain_error("f_map: precision exhausted for the module part");
      for (std::size_t s = 0; s < m; ++s) {
        long order = cfg_.lattice_threshold + static_cast<long>(s);
        module[s] = de.coeff(order);
      }
    }
    return model.element(std::move(ring), std::move(module));
  }

 public:
  /// Curated member family spanning the mod-c^m model: monomials x^i y^j Z^l
  /// and the lattice witnesses (Z - p_1) x^(v0+r).
  std::vector<LocalFraction> model_family(std::size_t m) const {
    std::vector<LocalFraction> fam;
    for (std::uint32_t i = 0; i <= m; ++i)
      for (std::uint32_t jdeg = 0; jdeg <= cfg_.ydeg; ++jdeg)
        for (std::uint32_t l = 0; l <= 2; ++l) {
          Monomial mono{i, jdeg, l};
          fam.push_back(LocalFraction(
              Polynomial::term(cfg_.field, vars_, mono, FieldElem::one(cfg_.field))));
        }
    LocalFraction zp(var(cfg_.z_name) - z_truncation(1));
    for (std::size_t r = 0; r < m; ++r)
      fam.push_back(zp * x_power(cfg_.lattice_threshold + static_cast<long>(r)));
    return fam;
  }

  /**
   * The map r -> (r, D(r)) is a ring homomorphism onto the idealization
   * modulo c^m: the law f(r r') = f(r) * f(r') exactly on sampled member
   * pairs, surjectivity as a k-span statement, and kernel samples that are
   * exactly c^m times members.
   */
  AnalyticIsoReport analytic_iso_check(std::size_t m, std::mt19937_64& rng) const {
    AnalyticIsoReport rep;
    IdealizationModel model = idealization_model(m);
    rep.ring_dim = model.base().dim();
    rep.module_dim = model.module().dim;

    std::vector<LocalFraction> fam = model_family(m);
    {
      std::vector<LocalFraction> extra = sample_members(6, rng);
      fam.insert(fam.end(), extra.begin(), extra.end());
    }

    RowSpan image(cfg_.field, model.dim());
    std::vector<std::pair<LocalFraction, IdealizationElement>> mapped;
    for (const auto& f : fam) {
      MembershipVerdict v = membership(f);
      if (!v.yes()) continue;  // family is curated but verified, never assumed
      IdealizationElement e = f_map(model, m, f);
      image.insert(model.flatten(e));
      mapped.emplace_back(f, std::move(e));
    }
    rep.image_dim = image.dim();

    // homomorphism law on pairs drawn from the mapped family; products with
    // truncation-indeterminate verdicts still have determinate model
    // coordinates, and an exact "no" is a genuine failure
    std::uniform_int_distribution<std::size_t> pick(0, mapped.size() - 1);
    for (int t = 0; t < 60; ++t) {
      const auto& [rf, re] = mapped[pick(rng)];
      const auto& [sf, se] = mapped[pick(rng)];
      LocalFraction prod = rf * sf;
      IdealizationElement lhs = model.zero();
      try {
        lhs = f_map_lenient(model, m, prod);
      } catch (const std::invalid_argument&) {
        rep.failure = "member product left R: " + prod.str();
        return rep;
      } catch (const std::domain_error&) {
        continue;  // window too short for this pair; draw another
      }
      IdealizationElement rhs = model.star_mul(re, se);
      if (!(lhs == rhs)) {
        rep.failure = "homomorphism law fails on " + rf.str() + " and " + sf.str();
        return rep;
      }
      ++rep.hom_pairs;
    }
    // additivity comes with linearity of both coordinates; spot-check anyway
    for (int t = 0; t < 20; ++t) {
      const auto& [rf, re] = mapped[pick(rng)];
      const auto& [sf, se] = mapped[pick(rng)];
      IdealizationElement lhs = model.zero();
      try {
        lhs = f_map_lenient(model, m, rf + sf);
      } catch (const std::domain_error&) {
        continue;
      }
      IdealizationElement rhs = model.add(re, se);
      if (!(lhs == rhs)) {
        rep.failure = "additivity fails on " + rf.str() + " and " + sf.str();
        return rep;
      }
    }

    if (rep.image_dim != model.dim()) {
      rep.failure = "f-images span " + std::to_string(rep.image_dim) + " of " +
                    std::to_string(model.dim()) + " dimensions";
      return rep;
    }

    // kernel side: c^m-multiples of members map to zero, and sampled kernel
    // elements divide back into R
    std::vector<LocalFraction> kernel_samples;
    for (int t = 0; t < 8; ++t) {
      const auto& [rf, re] = mapped[pick(rng)];
      kernel_samples.push_back(rf * x_power(static_cast<long>(m)));
    }
    for (const auto& kf : kernel_samples) {
      IdealizationElement e = f_map(model, m, kf);
      if (!(e == model.zero())) {
        rep.failure = "c^m-multiple " + kf.str() + " has a nonzero image";
        return rep;
      }
      LocalFraction back = kf * x_power(-static_cast<long>(m));
      if (!membership(back).yes()) {
        rep.failure = "kernel sample " + kf.str() + " does not divide back into R";
        return rep;
      }
      ++rep.kernel_samples;
    }
    rep.pass = true;
    return rep;
  }

  /// f(I)(S*K) = (IS)*K modulo c^m, as an equality of ideal spans.
  OneCaseReport one_case_check(const std::vector<LocalFraction>& i_gens, std::size_t m,
                               std::mt19937_64& rng) const {
    OneCaseReport rep;
    IdealizationModel model = idealization_model(m);
    std::vector<IdealizationElement> f_gens;
    for (const auto& g : i_gens) {
      if (!membership(g).yes())
        throw std::invalid_argument("one_case_check: generator " + g.str() + " is not in R");
      f_gens.push_back(f_map(model, m, g));
    }

    // precondition: c^m lies in IS (checked in the full-precision model)
    const ExtensionInstance& ext = extension_instance();
    std::vector<Vec> ring_images;
    for (const auto& g : i_gens) ring_images.push_back(ext.to_model(embed_y(g)));
    RowSpan is_full = ext.ideal_in(ext.big_span(), ring_images);
    Vec cm_full = ext.c_power(m);
    if (!is_full.contains(cm_full))
      throw std::invalid_argument("one_case_check: c^m is not visibly in IS at this precision");

    // bounded certificate for I = IS ∩ R: members landing in IS map into the
    // span; fractional members whose window falls short of N are skipped
    RowSpan lhs = model.ideal_span(f_gens);
    for (const LocalFraction& f : sample_members(10, rng)) {
      Vec img;
      try {
        img = ext.to_model(embed_y(f));
      } catch (const std::domain_error&) {
        continue;
      }
      if (is_full.contains(img)) {
        if (!lhs.contains(model.flatten(f_map(model, m, f)))) {
          throw std::domain_error(
              "one_case_check: hypothesis I = IS ∩ R not certified within bounds (sample " +
              f.str() + ")");
        }
      }
    }

    // right-hand side: (IS mod c^m) * (K mod c^m)
    RowSpan is_part(cfg_.field, model.base().dim());
    for (const auto& g : f_gens)
      for (std::size_t b = 0; b < model.base().dim(); ++b)
        is_part.insert(model.base().mul(g.ring_part, model.base().basis_vector(b)));
    RowSpan rhs(cfg_.field, model.dim());
    for (const auto& row : is_part.basis()) {
      Vec v = row;
      v.resize(model.dim(), FieldElem::zero(cfg_.field));
      rhs.insert(std::move(v));
    }
    for (std::size_t s = 0; s < model.module().dim; ++s) {
      Vec v(model.dim(), FieldElem::zero(cfg_.field));
      v[model.base().dim() + s] = FieldElem::one(cfg_.field);
      rhs.insert(std::move(v));
    }

    rep.lhs_dim = lhs.dim();
    rep.rhs_dim = rhs.dim();
    rep.pass = lhs.same_span(rhs);
    rep.detail = rep.pass ? "f(I)(S*K) = (IS)*K within bounds" : "ideal spans differ";
    return rep;
  }

  /**
   * Intermediate-ring correspondence for L = { ord >= v1 }, v1 <= v0:
   * T = S ∩ D^{-1}(L) recovers exactly the threshold v1 from D(T), and
   * re-deriving T from the recovered lattice changes no verdict.
   */
  CorrespondenceReport intermediate_correspondence(long v1, std::mt19937_64& rng) const {
    if (v1 > cfg_.lattice_threshold)
      throw std::invalid_argument("intermediate_correspondence: need v1 <= v0 (K ⊆ L)");
    CorrespondenceReport rep;
    // sample family: members of T with witnesses reaching the bottom layer
    std::vector<LocalFraction> fam = model_family(2);
    long t = std::max<long>(0, -v1 - 1);
    LocalFraction bottom = LocalFraction(var(cfg_.z_name) - z_truncation(static_cast<std::size_t>(t)));
    fam.push_back(bottom * x_power(v1));
    {
      std::vector<LocalFraction> extra = sample_members(8, rng);
      fam.insert(fam.end(), extra.begin(), extra.end());
    }
    std::optional<long> min_seen;
    std::vector<LocalFraction> t_members;
    for (const auto& f : fam) {
      MembershipVerdict v = membership_at(f, v1);
      if (!v.determinate())
        throw std::domain_error("intermediate_correspondence: indeterminate verdict at precision");
      if (!v.yes()) continue;
      t_members.push_back(f);
      if (v.evidence && v.evidence->exact)
        min_seen = min_seen ? std::min(*min_seen, v.evidence->value) : v.evidence->value;
    }
    rep.samples = t_members.size();
    if (!min_seen) {
      rep.detail = "no sampled member has a determinate derivative order";
      return rep;
    }
    rep.recovered_threshold = *min_seen;
    if (*min_seen != v1) {
      rep.detail = "recovered lattice threshold " + std::to_string(*min_seen) +
                   " differs from v1 = " + std::to_string(v1);
      return rep;
    }
    // round trip: the recovered lattice induces the same verdicts
    for (const auto& f : fam) {
      if (membership_at(f, *min_seen).yes() != membership_at(f, v1).yes()) {
        rep.detail = "round trip flipped a verdict on " + f.str();
        return rep;
      }
    }
    rep.pass = true;
    rep.detail = "T = S ∩ D^{-1}(L) recovers the lattice and its members";
    return rep;
  }

  /// Minimal S-generator count of K/aK at truncation (Nakayama).
  KqReport kq_generators(const LocalFraction& a) const {
    if (a.is_zero()) throw std::invalid_argument("kq_generators: a must be nonzero");
    Laurent e = embed_full(a);
    Valuation v = e.valuation();
    if (!v.exact) throw std::domain_error("kq_generators: valuation of a indeterminate at precision");
    if (v.value < 0) throw std::invalid_argument("kq_generators: a must lie in A (order >= 0)");
    KqReport rep;
    rep.a_valuation = v.value;
    std::size_t m = static_cast<std::size_t>(v.value);
    rep.quotient_dim = m;
    if (m == 0) {
      rep.generator_count = 0;  // a is a unit: K = aK
      return rep;
    }
    // K/aK has k-basis x^v0..x^(v0+m-1); the maximal ideal of S acts through
    // multiplication by x, y(x), z(x), all of positive order
    RowSpan mk(cfg_.field, m);
    std::vector<Laurent> mgens{
        Laurent::monomial(cfg_.field, FieldElem::one(cfg_.field), 1, static_cast<long>(cfg_.precision)),
        Laurent::from_series(y_series_), Laurent::from_series(z_series_)};
    for (const auto& g : mgens) {
      for (std::size_t r = 0; r < m; ++r) {
        Laurent img = g * Laurent::monomial(cfg_.field, FieldElem::one(cfg_.field),
                                            cfg_.lattice_threshold + static_cast<long>(r),
                                            static_cast<long>(cfg_.precision) + cfg_.lattice_threshold);
        Vec coords(m, FieldElem::zero(cfg_.field));
        for (std::size_t s = 0; s < m; ++s) {
          long order = cfg_.lattice_threshold + static_cast<long>(s);
          if (order < img.bound()) coords[s] = img.coeff(order);
        }
        mk.insert(std::move(coords));
      }
    }
    rep.generator_count = m - mk.dim();
    return rep;
  }

  /**
   * Witness search for the associated-prime statement: an s ∈ S with
   * D(s) ∈ x^{-1}K \ K, hence s ∉ R while s·(x, y, Z-member) ⊆ R.
   */
  AssocPrimeReport associated_prime_witness() const {
    AssocPrimeReport rep;
    if (!cfg_.lattice_proper)
      throw std::invalid_argument("associated_prime_witness: K = K_C has no proper lattice cut");
    // maximal-ideal generators as members
    std::vector<LocalFraction> mgens{frac(var(cfg_.x_name)), frac(var(cfg_.y_name))};
    long ze = std::max<long>(0, cfg_.lattice_threshold);
    mgens.push_back(frac(var(cfg_.z_name)) * x_power(ze));
    for (const auto& g : mgens)
      if (!membership(g).yes()) {
        rep.detail = "maximal-ideal generator " + g.str() + " is not a member";
        return rep;
      }
    for (std::size_t t = 0; t < cfg_.precision / 2; ++t) {
      LocalFraction s =
          LocalFraction(var(cfg_.z_name) - z_truncation(t)) * x_power(cfg_.lattice_threshold - 1);
      if (!in_big_ring(s)) continue;
      LocalFraction ds = derivative_of(s);
      Laurent e = embed_full(ds);
      Valuation v = e.valuation();
      if (!v.exact || v.value != cfg_.lattice_threshold - 1) continue;
      if (membership(s).yes()) continue;
      bool all_in = true;
      for (const auto& g : mgens) {
        if (!membership(s * g).yes()) { all_in = false; break; }
      }
      if (!all_in) continue;
      rep.found = true;
      rep.witness = s.str();
      rep.detail = "s ∉ R, ord D(s) = " + v.str() + ", and s·(maximal ideal samples) ⊆ R";
      return rep;
    }
    rep.detail = "no witness found in the candidate family (Z - p_t) x^(v0-1)";
    return rep;
  }

  /// The A ⊆ S extension instance at full precision (built on first use).
  const ExtensionInstance& extension_instance() const {
    if (!ext_) {
      long n = static_cast<long>(cfg_.precision);
      std::size_t d = cfg_.ydeg;
      YLaurent x = YLaurent::from_laurent(
          d, Laurent::monomial(cfg_.field, FieldElem::one(cfg_.field), 1, n));
      YLaurent y = YLaurent::y_symbol(cfg_.field, d, n);
      YLaurent z = YLaurent::from_laurent(d, Laurent::from_series(z_series_));
      ext_.emplace(cfg_.field, cfg_.precision, d, std::vector<YLaurent>{x, y},
                   std::vector<YLaurent>{z}, x, cfg_.max_exponent);
    }
    return *ext_;
  }

  /// Quadratic check over the member family, in the full embedding.
  QuadraticReport quadratic_check(const std::vector<std::pair<LocalFraction, LocalFraction>>& pairs,
                                  std::mt19937_64& rng) const {
    // member basis: curated family plus random members, fully embedded
    std::vector<LocalFraction> fam = model_family(3);
    {
      std::vector<LocalFraction> extra = sample_members(6, rng);
      fam.insert(fam.end(), extra.begin(), extra.end());
    }
    std::vector<Laurent> basis_l;
    long window_hi = static_cast<long>(cfg_.precision);
    for (const auto& f : fam) {
      if (!membership(f).yes()) continue;
      Laurent e = embed_full(f);
      basis_l.push_back(e);
      window_hi = std::min(window_hi, e.bound());
    }
    std::vector<std::pair<Laurent, Laurent>> pair_l;
    for (const auto& [s, t] : pairs) {
      Laurent es = embed_full(s), et = embed_full(t);
      window_hi = std::min({window_hi, es.bound() + et.lo(), et.bound() + es.lo()});
      pair_l.emplace_back(es, et);
    }
    // coordinate window [lo, hi): all members have order >= 0, pairs may dip lower
    long window_lo = 0;
    for (const auto& [es, et] : pair_l) window_lo = std::min({window_lo, es.lo() + et.lo()});
    // conservative: products s * basis must stay within the window
    for (const auto& [es, et] : pair_l)
      for (const auto& b : basis_l)
        window_hi = std::min({window_hi, es.bound() + b.lo(), b.bound() + es.lo(),
                              et.bound() + b.lo(), b.bound() + et.lo()});
    if (window_hi <= window_lo + 2)
      throw std::domain_error("quadratic_check: precision exhausted (empty coordinate window)");

    auto coords = [&](const Laurent& a) {
      Vec v(static_cast<std::size_t>(window_hi - window_lo), FieldElem::zero(cfg_.field));
      for (long o = std::max(window_lo, a.lo()); o < window_hi; ++o)
        v[static_cast<std::size_t>(o - window_lo)] = a.coeff(o);
      return v;
    };
    std::vector<Vec> small_basis;
    for (const auto& b : basis_l) small_basis.push_back(coords(b.truncate_at(window_hi)));
    std::vector<std::pair<Vec, Vec>> sample_vecs;
    for (const auto& [es, et] : pair_l)
      sample_vecs.emplace_back(coords(es.truncate_at(window_hi)), coords(et.truncate_at(window_hi)));

    // multiplication on coordinates: back to Laurent, multiply, truncate
    auto mul = [&](const Vec& a, const Vec& b) {
      std::vector<FieldElem> ca(a.begin(), a.end()), cb(b.begin(), b.end());
      Laurent la(cfg_.field, window_lo, ca), lb(cfg_.field, window_lo, cb);
      Laurent prod = la * lb;
      return coords(prod.truncate_at(window_hi));
    };
    return ExtensionInstance::quadratic_over(mul, small_basis, sample_vecs, cfg_.field);
  }

 private:
  ScenarioConfig cfg_;
  std::vector<std::string> vars_;
  RingPresentation ring_;
  DerivationSpec ddz_;
  TruncatedSeries y_series_;
  TruncatedSeries z_series_;
  mutable std::optional<ExtensionInstance> ext_;
};

// -------------------------------------------------------------------------
// Finite global-stability instances over k[t]
// -------------------------------------------------------------------------

struct GlobalStablePrime {
  Polynomial generator;  // monic irreducible over k
  std::size_t rank;      // e_n
};

struct GlobalStableEntry {
  std::string prime;
  std::size_t rank = 0;
  std::size_t embedding_dimension = 0;
  bool pass = false;  // embedding_dimension == rank + 1
};

struct GlobalStableReport {
  bool pass = false;
  std::vector<GlobalStableEntry> entries;
};

/// A desk instance of the prescribed-generator-count construction:
/// base k[t], maximal ideals N_t, ranks e_t.
class GlobalStableSpec {
 public:
  GlobalStableSpec(Field f, std::vector<GlobalStablePrime> primes)
      : field_(f), primes_(std::move(primes)) {
    if (field_.kind() != FieldKind::PrimeField)
      throw std::invalid_argument("GlobalStableSpec: base field must be finite");
    if (primes_.size() > 8)
      throw std::invalid_argument("GlobalStableSpec: at most 8 primes at desk scale");
    for (const auto& p : primes_) validate_maximal(p.generator);
    for (std::size_t i = 0; i < primes_.size(); ++i)
      for (std::size_t j = i + 1; j < primes_.size(); ++j)
        if (primes_[i].generator == primes_[j].generator)
          throw std::invalid_argument("GlobalStableSpec: primes must be pairwise distinct");
  }

  /// Local embedding dimension at each prime: 1 + e_t, computed on the
  /// model S_N/N^2 * (free rank e_t mod N), over the residue field.
  GlobalStableReport local_embedding_dimensions() const {
    GlobalStableReport rep;
    rep.pass = true;
    for (const auto& p : primes_) {
      std::size_t delta = p.generator.total_deg();
      QuotientAlgebra base = quotient_by_square(p.generator);
      ModuleModel mod = residue_power_module(base, p.generator, p.rank);
      IdealizationModel model(base, mod);
      // the maximal ideal: (g)/(g^2) plus the whole module part
      RowSpan mspan(field_, model.dim());
      for (std::size_t i = 0; i < delta; ++i) {
        Polynomial rep_poly = p.generator;
        for (std::size_t e = 0; e < i; ++e)
          rep_poly *= Polynomial::variable(field_, {"t"}, "t");
        Vec v = reduce_coords(rep_poly, p.generator, 2 * delta);
        v.resize(model.dim(), FieldElem::zero(field_));
        mspan.insert(std::move(v));
      }
      for (std::size_t s = 0; s < mod.dim; ++s) {
        Vec v(model.dim(), FieldElem::zero(field_));
        v[base.dim() + s] = FieldElem::one(field_);
        mspan.insert(std::move(v));
      }
      RowSpan m2(field_, model.dim());
      const auto& rows = mspan.basis();
      for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = i; j < rows.size(); ++j)
          m2.insert(model.flatten(model.star_mul(model.unflatten(rows[i]), model.unflatten(rows[j]))));
      std::size_t dim_k = mspan.dim() - m2.dim();
      if (dim_k % delta != 0)
        throw std::logic_error("GlobalStableSpec: embedding dimension not divisible by residue degree");
      GlobalStableEntry entry;
      entry.prime = "(" + p.generator.str() + ")";
      entry.rank = p.rank;
      entry.embedding_dimension = dim_k / delta;
      entry.pass = entry.embedding_dimension == p.rank + 1;
      rep.pass = rep.pass && entry.pass;
      rep.entries.push_back(std::move(entry));
    }
    return rep;
  }

 private:
  void validate_maximal(const Polynomial& g) const {
    if (g.vars() != std::vector<std::string>{"t"})
      throw std::invalid_argument("GlobalStableSpec: primes are generated by polynomials in t");
    std::size_t d = g.total_deg();
    if (d == 0 || g.is_zero())
      throw std::invalid_argument("GlobalStableSpec: non-maximal listed ideal (" + g.str() + ")");
    if (!g.leading_term().second.is_one())
      throw std::invalid_argument("GlobalStableSpec: prime generators must be monic");
    // brute-force irreducibility over the finite field
    std::uint32_t p = field_.characteristic();
    std::vector<Polynomial> monics = monic_polys_up_to(d / 2);
    for (const auto& h : monics) {
      if (h.total_deg() == 0) continue;
      if (g.divmod(h).second.is_zero())
        throw std::invalid_argument("GlobalStableSpec: non-maximal listed ideal (" + g.str() +
                                    " is divisible by " + h.str() + ")");
    }
    (void)p;
  }

  std::vector<Polynomial> monic_polys_up_to(std::size_t dmax) const {
    std::vector<Polynomial> out;
    std::uint32_t p = field_.characteristic();
    for (std::size_t d = 1; d <= dmax; ++d) {
      std::size_t combos = 1;
      for (std::size_t i = 0; i < d; ++i) combos *= p;
      for (std::size_t code = 0; code < combos; ++code) {
        Polynomial h = Polynomial::term(field_, {"t"}, {static_cast<std::uint32_t>(d)},
                                        FieldElem::one(field_));
        std::size_t c = code;
        for (std::size_t i = 0; i < d; ++i) {
          h += Polynomial::term(field_, {"t"}, {static_cast<std::uint32_t>(i)},
                                FieldElem::from_int(field_, static_cast<long>(c % p)));
          c /= p;
        }
        out.push_back(std::move(h));
      }
    }
    return out;
  }

  /// coordinates of a polynomial modulo g^2, in the basis 1..t^(2 deg g - 1)
  Vec reduce_coords(const Polynomial& q, const Polynomial& g, std::size_t dim) const {
    Polynomial r = q.divmod(g * g).second;
    Vec v(dim, FieldElem::zero(field_));
    for (const auto& [m, c] : r.terms()) v.at(m[0]) = c;
    return v;
  }

  QuotientAlgebra quotient_by_square(const Polynomial& g) const {
    std::size_t delta = g.total_deg();
    std::size_t dim = 2 * delta;
    std::vector<std::string> labels;
    for (std::size_t i = 0; i < dim; ++i)
      labels.push_back(i == 0 ? "1" : "t^" + std::to_string(i));
    std::vector<std::vector<Vec>> table(dim, std::vector<Vec>(dim));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        Polynomial prod = Polynomial::term(field_, {"t"},
                                           {static_cast<std::uint32_t>(i + j)},
                                           FieldElem::one(field_));
        table[i][j] = reduce_coords(prod, g, dim);
      }
    Vec one(dim, FieldElem::zero(field_));
    one[0] = FieldElem::one(field_);
    return QuotientAlgebra::from_table(field_, std::move(labels), std::move(table), std::move(one));
  }

  /// K/NK = (k[t]/g)^rank with the k[t]/(g^2)-action through k[t]/(g).
  ModuleModel residue_power_module(const QuotientAlgebra& base, const Polynomial& g,
                                   std::size_t rank) const {
    std::size_t delta = g.total_deg();
    ModuleModel mod{field_, rank * delta, {}};
    mod.action.assign(base.dim(),
                      std::vector<Vec>(mod.dim, Vec(mod.dim, FieldElem::zero(field_))));
    for (std::size_t b = 0; b < base.dim(); ++b)
      for (std::size_t c = 0; c < rank; ++c)
        for (std::size_t i = 0; i < delta; ++i) {
          Polynomial prod = Polynomial::term(field_, {"t"},
                                             {static_cast<std::uint32_t>(b + i)},
                                             FieldElem::one(field_));
          Polynomial r = prod.divmod(g).second;
          for (const auto& [mo, cf] : r.terms())
            mod.action[b][c * delta + i][c * delta + mo[0]] = cf;
        }
    return mod;
  }

  Field field_;
  std::vector<GlobalStablePrime> primes_;
};

}  // namespace staralg
