#pragma once

/**
 * Truncated power series and Laurent windows.
 *
 * A TruncatedSeries holds the coefficients of orders 0..N-1 of a univariate
 * series; all arithmetic is mod x^N.  A Laurent value generalizes this to a
 * window [lo, hi) of known orders: orders below lo are known to be zero,
 * orders at hi and above are unknown.  Window bounds are propagated exactly
 * through every operation, so a valuation is either an exact integer or the
 * sentinel "at least hi" — never silently treated as infinite.
 */

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "field.hpp"

namespace staralg {

/// Exact valuation, or a lower bound when every known coefficient is zero.
struct Valuation {
  bool exact;
  long value;  // the valuation, or the bound "≥ value"

  static Valuation at(long v) { return {true, v}; }
  static Valuation at_least(long v) { return {false, v}; }

  bool known_at_least(long v) const { return exact ? value >= v : value >= v; }

  std::string str() const {
    return exact ? std::to_string(value) : ">=" + std::to_string(value);
  }

  bool operator==(const Valuation& o) const { return exact == o.exact && value == o.value; }
};

class TruncatedSeries {
 public:
  TruncatedSeries(Field f, std::string var, std::size_t precision)
      : field_(f), var_(std::move(var)), coeff_(precision, FieldElem::zero(f)) {
    if (precision == 0) throw std::invalid_argument("TruncatedSeries: precision must be positive");
  }

  static TruncatedSeries from_coeffs(Field f, std::string var, std::size_t precision,
                                     const std::vector<FieldElem>& cs) {
    TruncatedSeries s(f, std::move(var), precision);
    for (std::size_t i = 0; i < cs.size() && i < precision; ++i) s.coeff_[i] = cs[i];
    return s;
  }

  /// x^e mod x^N
  static TruncatedSeries power(Field f, std::string var, std::size_t precision, std::size_t e) {
    TruncatedSeries s(f, std::move(var), precision);
    if (e < precision) s.coeff_[e] = FieldElem::one(f);
    return s;
  }

  /// The lacunary series sum_{i>=1} x^((k*i)!) mod x^N.
  static TruncatedSeries liouville(Field f, std::string var, std::size_t precision, std::size_t k) {
    if (k == 0) throw std::invalid_argument("liouville: k must be positive");
    TruncatedSeries s(f, std::move(var), precision);
    unsigned long fact = 1;
    for (unsigned long n = 1, i = 1;; ++n) {
      fact *= n;
      if (fact >= precision) break;
      if (n == k * i) {
        s.coeff_[fact] = FieldElem::one(f);
        ++i;
      }
    }
    return s;
  }

  const Field& field() const { return field_; }
  const std::string& var() const { return var_; }
  std::size_t precision() const { return coeff_.size(); }
  const FieldElem& coeff(std::size_t i) const { return coeff_[i]; }
  void set_coeff(std::size_t i, const FieldElem& c) { coeff_.at(i) = c; }

  bool is_zero() const {
    for (const auto& c : coeff_)
      if (!c.is_zero()) return false;
    return true;
  }

  Valuation valuation() const {
    for (std::size_t i = 0; i < coeff_.size(); ++i)
      if (!coeff_[i].is_zero()) return Valuation::at(static_cast<long>(i));
    return Valuation::at_least(static_cast<long>(coeff_.size()));
  }

  TruncatedSeries operator+(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries r(*this);
    for (std::size_t i = 0; i < coeff_.size(); ++i) r.coeff_[i] += o.coeff_[i];
    return r;
  }

  TruncatedSeries operator-() const {
    TruncatedSeries r(*this);
    for (auto& c : r.coeff_) c = -c;
    return r;
  }

  TruncatedSeries operator-(const TruncatedSeries& o) const { return *this + (-o); }

  TruncatedSeries operator*(const TruncatedSeries& o) const {
    check(o);
    TruncatedSeries r(field_, var_, coeff_.size());
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
      if (coeff_[i].is_zero()) continue;
      for (std::size_t j = 0; i + j < coeff_.size(); ++j)
        r.coeff_[i + j] += coeff_[i] * o.coeff_[j];
    }
    return r;
  }

  TruncatedSeries scale(const FieldElem& c) const {
    TruncatedSeries r(*this);
    for (auto& a : r.coeff_) a = a * c;
    return r;
  }

  /// Multiplicative inverse mod x^N; requires valuation 0.
  TruncatedSeries invert() const {
    if (coeff_[0].is_zero())
      throw std::domain_error("TruncatedSeries::invert: positive valuation (leading coefficient is zero)");
    TruncatedSeries r(field_, var_, coeff_.size());
    FieldElem c0inv = coeff_[0].inverse();
    r.coeff_[0] = c0inv;
    for (std::size_t n = 1; n < coeff_.size(); ++n) {
      FieldElem s = FieldElem::zero(field_);
      for (std::size_t i = 1; i <= n; ++i) s += coeff_[i] * r.coeff_[n - i];
      r.coeff_[n] = -(c0inv * s);
    }
    return r;
  }

  bool operator==(const TruncatedSeries& o) const {
    check(o);
    return coeff_ == o.coeff_;
  }
  bool operator!=(const TruncatedSeries& o) const { return !(*this == o); }

  std::string str() const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
      if (coeff_[i].is_zero()) continue;
      if (!first) os << " + ";
      first = false;
      if (!coeff_[i].is_one() || i == 0) os << coeff_[i].str();
      if (i > 0) {
        if (!coeff_[i].is_one()) os << "*";
        os << var_;
        if (i > 1) os << "^" << i;
      }
    }
    if (first) os << "0";
    os << " + O(" << var_ << "^" << coeff_.size() << ")";
    return os.str();
  }

 private:
  void check(const TruncatedSeries& o) const {
    if (field_ != o.field_ || var_ != o.var_) throw std::invalid_argument("TruncatedSeries: mixed rings");
    if (coeff_.size() != o.coeff_.size())
      throw std::invalid_argument("TruncatedSeries: precision mismatch");
  }

  Field field_;
  std::string var_;
  std::vector<FieldElem> coeff_;
};

/**
 * A Laurent value: coefficients for the window of orders [lo, lo+size),
 * zero below lo, unknown from `bound` = lo+size on.  Windows shrink under
 * arithmetic exactly as information is lost.
 */
class Laurent {
 public:
  Laurent(Field f, long lo, std::vector<FieldElem> cs)
      : field_(f), lo_(lo), coeff_(std::move(cs)) {}

  static Laurent zero_window(Field f, long lo, long bound) {
    if (bound < lo) bound = lo;
    return Laurent(f, lo, std::vector<FieldElem>(static_cast<std::size_t>(bound - lo), FieldElem::zero(f)));
  }

  static Laurent from_series(const TruncatedSeries& s) {
    std::vector<FieldElem> cs;
    cs.reserve(s.precision());
    for (std::size_t i = 0; i < s.precision(); ++i) cs.push_back(s.coeff(i));
    return Laurent(s.field(), 0, std::move(cs));
  }

  /// c * x^e, known up to order `bound` (exclusive).
  static Laurent monomial(Field f, const FieldElem& c, long e, long bound) {
    Laurent r = zero_window(f, e, bound);
    if (e < r.bound()) r.coeff_[0] = c;
    return r;
  }

  const Field& field() const { return field_; }
  long lo() const { return lo_; }
  long bound() const { return lo_ + static_cast<long>(coeff_.size()); }

  FieldElem coeff(long order) const {
    if (order < lo_) return FieldElem::zero(field_);
    if (order >= bound()) throw std::out_of_range("Laurent: coefficient beyond window");
    return coeff_[static_cast<std::size_t>(order - lo_)];
  }

  bool known_zero_window() const {
    for (const auto& c : coeff_)
      if (!c.is_zero()) return false;
    return true;
  }

  Valuation valuation() const {
    for (std::size_t i = 0; i < coeff_.size(); ++i)
      if (!coeff_[i].is_zero()) return Valuation::at(lo_ + static_cast<long>(i));
    return Valuation::at_least(bound());
  }

  Laurent operator+(const Laurent& o) const {
    check(o);
    long lo = std::min(lo_, o.lo_);
    long hi = std::min(bound(), o.bound());
    Laurent r = zero_window(field_, lo, hi);
    for (long n = lo; n < hi; ++n)
      r.coeff_[static_cast<std::size_t>(n - lo)] = at_or_zero(n) + o.at_or_zero(n);
    return r.trim();
  }

  Laurent operator-() const {
    Laurent r(*this);
    for (auto& c : r.coeff_) c = -c;
    return r;
  }

  Laurent operator-(const Laurent& o) const { return *this + (-o); }

  Laurent operator*(const Laurent& o) const {
    check(o);
    long lo = lo_ + o.lo_;
    long hi = std::min(bound() + o.lo_, o.bound() + lo_);
    Laurent r = zero_window(field_, lo, hi);
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
      if (coeff_[i].is_zero()) continue;
      long oi = lo_ + static_cast<long>(i);
      for (std::size_t j = 0; j < o.coeff_.size(); ++j) {
        long n = oi + o.lo_ + static_cast<long>(j);
        if (n >= hi) break;
        if (n < lo) continue;
        r.coeff_[static_cast<std::size_t>(n - lo)] += coeff_[i] * o.coeff_[j];
      }
    }
    return r.trim();
  }

  Laurent scale(const FieldElem& c) const {
    Laurent r(*this);
    for (auto& a : r.coeff_) a = a * c;
    return r;
  }

  /// Inverse of a value with exact valuation v: window [-v, bound - 2v).
  Laurent invert() const {
    Valuation v = valuation();
    if (!v.exact)
      throw std::domain_error("Laurent::invert: valuation indeterminate (zero within window)");
    long n = bound() - v.value;  // known orders of the unit part
    std::vector<FieldElem> u(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) u[static_cast<std::size_t>(i)] = coeff(v.value + i);
    std::vector<FieldElem> w(static_cast<std::size_t>(n), FieldElem::zero(field_));
    FieldElem c0inv = u[0].inverse();
    w[0] = c0inv;
    for (long k = 1; k < n; ++k) {
      FieldElem s = FieldElem::zero(field_);
      for (long i = 1; i <= k; ++i) s += u[static_cast<std::size_t>(i)] * w[static_cast<std::size_t>(k - i)];
      w[static_cast<std::size_t>(k)] = -(c0inv * s);
    }
    return Laurent(field_, -v.value, std::move(w));
  }

  Laurent divide(const Laurent& o) const { return *this * o.invert(); }

  /// Forget everything at `order` and above.
  Laurent truncate_at(long order) const {
    long hi = std::min(bound(), order);
    long lo = std::min(lo_, hi);
    std::vector<FieldElem> cs;
    for (long n = lo; n < hi; ++n) cs.push_back(at_or_zero(n));
    return Laurent(field_, lo, std::move(cs));
  }

  /// Equal on the overlap of the two windows; both windows must reach `upto`.
  bool agree_mod(const Laurent& o, long upto) const {
    check(o);
    if (bound() < upto || o.bound() < upto)
      throw std::domain_error("Laurent::agree_mod: window does not reach requested order");
    for (long n = std::min(lo_, o.lo_); n < upto; ++n)
      if (at_or_zero(n) != o.at_or_zero(n)) return false;
    return true;
  }

  std::string str(const std::string& var = "x") const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeff_.size(); ++i) {
      if (coeff_[i].is_zero()) continue;
      long e = lo_ + static_cast<long>(i);
      if (!first) os << " + ";
      first = false;
      if (!coeff_[i].is_one() || e == 0) os << coeff_[i].str();
      if (e != 0) {
        if (!coeff_[i].is_one()) os << "*";
        os << var;
        if (e != 1) os << "^" << e;
      }
    }
    if (first) os << "0";
    os << " + O(" << var << "^" << bound() << ")";
    return os.str();
  }

 private:
  FieldElem at_or_zero(long n) const {
    if (n < lo_ || n >= bound()) return FieldElem::zero(field_);
    return coeff_[static_cast<std::size_t>(n - lo_)];
  }

  Laurent trim() const {
    // advance lo past known zeros; keeps windows small
    std::size_t k = 0;
    while (k < coeff_.size() && coeff_[k].is_zero() && k + 1 < coeff_.size()) ++k;
    if (k == 0) return *this;
    return Laurent(field_, lo_ + static_cast<long>(k),
                   std::vector<FieldElem>(coeff_.begin() + k, coeff_.end()));
  }

  void check(const Laurent& o) const {
    if (field_ != o.field_) throw std::invalid_argument("Laurent: mixed fields");
  }

  Field field_;
  long lo_;
  std::vector<FieldElem> coeff_;
};

/**
 * A polynomial in y of degree <= d whose coefficients are Laurent values in
 * x; the carrier for ring elements with the y variable kept symbolic.
 * Multiplication truncates above y^d (the ambient model is mod y^(d+1)).
 */
class YLaurent {
 public:
  YLaurent(Field f, std::size_t ydeg_bound, long bound)
      : field_(f), coeff_(ydeg_bound + 1, Laurent::zero_window(f, 0, bound)) {}

  static YLaurent from_laurent(std::size_t ydeg_bound, const Laurent& a) {
    YLaurent r(a.field(), ydeg_bound, a.bound());
    r.coeff_[0] = a;
    return r;
  }

  /// The symbol y itself.
  static YLaurent y_symbol(Field f, std::size_t ydeg_bound, long bound) {
    YLaurent r(f, ydeg_bound, bound);
    if (ydeg_bound < 1) throw std::invalid_argument("YLaurent: y-degree bound must be >= 1 for y");
    r.coeff_[1] = Laurent::monomial(f, FieldElem::one(f), 0, bound);
    return r;
  }

  const Field& field() const { return field_; }
  std::size_t ydeg_bound() const { return coeff_.size() - 1; }
  const Laurent& coeff(std::size_t j) const { return coeff_.at(j); }
  void set_coeff(std::size_t j, const Laurent& a) { coeff_.at(j) = a; }

  YLaurent operator+(const YLaurent& o) const {
    check(o);
    YLaurent r(*this);
    for (std::size_t j = 0; j < coeff_.size(); ++j) r.coeff_[j] = coeff_[j] + o.coeff_[j];
    return r;
  }

  YLaurent operator-() const {
    YLaurent r(*this);
    for (auto& c : r.coeff_) c = -c;
    return r;
  }

  YLaurent operator-(const YLaurent& o) const { return *this + (-o); }

  YLaurent operator*(const YLaurent& o) const {
    check(o);
    YLaurent r(field_, ydeg_bound(), coeff_[0].bound() + o.coeff_[0].lo());
    for (std::size_t j = 0; j <= ydeg_bound(); ++j) {
      // full window intersection per resulting y-degree
      bool set = false;
      Laurent acc = Laurent::zero_window(field_, 0, 0);
      for (std::size_t a = 0; a <= j; ++a) {
        Laurent t = coeff_[a] * o.coeff_[j - a];
        acc = set ? acc + t : t;
        set = true;
      }
      r.coeff_[j] = acc;
    }
    return r;
  }

  YLaurent scale(const FieldElem& c) const {
    YLaurent r(*this);
    for (auto& a : r.coeff_) a = a.scale(c);
    return r;
  }

  /// Invertible iff the y^0 part has an exact valuation (unit times x^v).
  YLaurent invert() const {
    Laurent a0inv = coeff_[0].invert();
    // (a0 + n)^(-1) = a0^(-1) * sum (-n a0^(-1))^i, n nilpotent mod y^(d+1)
    YLaurent n(*this);
    n.coeff_[0] = Laurent::zero_window(field_, 0, coeff_[0].bound());
    YLaurent r = YLaurent::from_laurent(ydeg_bound(), a0inv);
    YLaurent acc = r;
    YLaurent m = r;
    for (std::size_t i = 1; i <= ydeg_bound(); ++i) {
      m = m * (-n) * YLaurent::from_laurent(ydeg_bound(), a0inv);
      acc = acc + m;
    }
    return acc;
  }

  YLaurent divide(const YLaurent& o) const { return *this * o.invert(); }

  /// Substitute a series for y; the full embedding into univariate Laurent values.
  Laurent substitute_y(const Laurent& y_embed) const {
    Laurent acc = coeff_[0];
    Laurent p = Laurent::monomial(field_, FieldElem::one(field_), 0, y_embed.bound());
    for (std::size_t j = 1; j < coeff_.size(); ++j) {
      p = p * y_embed;
      acc = acc + coeff_[j] * p;
    }
    return acc;
  }

  /// Least x-order with a nonzero known coefficient across all y-degrees.
  Valuation min_x_valuation() const {
    long best = 0;
    bool exact = false, any = false;
    for (const auto& c : coeff_) {
      Valuation v = c.valuation();
      if (!any) { best = v.value; exact = v.exact; any = true; continue; }
      if (v.exact && (!exact || v.value < best)) { best = v.value; exact = true; }
      else if (!v.exact && !exact) best = std::min(best, v.value);
    }
    return exact ? Valuation::at(best) : Valuation::at_least(best);
  }

  std::string str(const std::string& xvar = "x", const std::string& yvar = "y") const {
    std::ostringstream os;
    bool first = true;
    for (std::size_t j = 0; j < coeff_.size(); ++j) {
      if (coeff_[j].known_zero_window()) continue;
      if (!first) os << " + ";
      first = false;
      os << "(" << coeff_[j].str(xvar) << ")";
      if (j > 0) {
        os << "*" << yvar;
        if (j > 1) os << "^" << j;
      }
    }
    if (first) os << "0";
    return os.str();
  }

 private:
  void check(const YLaurent& o) const {
    if (field_ != o.field_ || coeff_.size() != o.coeff_.size())
      throw std::invalid_argument("YLaurent: mixed carriers");
  }

  Field field_;
  std::vector<Laurent> coeff_;
};

}  // namespace staralg
