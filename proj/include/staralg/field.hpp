#pragma once

/**
 * Coefficient fields for exact computation: the rationals (arbitrary
 * precision, GMP-backed) and prime fields F_p.  Elements are immutable
 * values; all arithmetic is exact and total except division by zero.
 */

#include <cstdint>
#include <gmpxx.h>
#include <random>
#include <stdexcept>
#include <string>

namespace staralg {

enum class FieldKind { Rationals, PrimeField };

class Field {
 public:
  static Field rationals() { return Field(FieldKind::Rationals, 0); }

  static Field prime(std::uint32_t p) {
    if (!is_prime(p)) throw std::invalid_argument("Field::prime: " + std::to_string(p) + " is not prime");
    return Field(FieldKind::PrimeField, p);
  }

  FieldKind kind() const { return kind_; }
  std::uint32_t characteristic() const { return kind_ == FieldKind::PrimeField ? p_ : 0; }

  bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
  bool operator!=(const Field& o) const { return !(*this == o); }

  std::string name() const {
    return kind_ == FieldKind::Rationals ? "Q" : "F" + std::to_string(p_);
  }

  static bool is_prime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
      if (n % d == 0) return false;
    return true;
  }

 private:
  Field(FieldKind k, std::uint32_t p) : kind_(k), p_(p) {}
  FieldKind kind_;
  std::uint32_t p_;
};

/// An element of Q or of F_p.  Self-describing: carries its field so that
/// mixed-field arithmetic is rejected rather than silently miscomputed.
class FieldElem {
 public:
  FieldElem() : p_(0), r_(0), q_(0) {}  // zero of Q; reassigned on use

  static FieldElem zero(const Field& f) { return from_int(f, 0); }
  static FieldElem one(const Field& f) { return from_int(f, 1); }

  static FieldElem from_int(const Field& f, long n) {
    FieldElem e;
    if (f.kind() == FieldKind::PrimeField) {
      e.p_ = f.characteristic();
      e.r_ = norm_mod(n, e.p_);
    } else {
      e.p_ = 0;
      e.q_ = n;
    }
    return e;
  }

  static FieldElem rational(long num, long den) {
    if (den == 0) throw std::domain_error("FieldElem: zero denominator");
    FieldElem e;
    e.p_ = 0;
    e.q_ = mpq_class(num, den);
    e.q_.canonicalize();
    return e;
  }

  static FieldElem rational(const mpq_class& q) {
    FieldElem e;
    e.p_ = 0;
    e.q_ = q;
    e.q_.canonicalize();
    return e;
  }

  Field field() const { return p_ ? Field::prime(p_) : Field::rationals(); }
  bool is_zero() const { return p_ ? r_ == 0 : q_ == 0; }
  bool is_one() const { return p_ ? r_ == 1 : q_ == 1; }

  FieldElem operator-() const {
    FieldElem e(*this);
    if (p_) e.r_ = r_ ? p_ - r_ : 0;
    else e.q_ = -q_;
    return e;
  }

  FieldElem operator+(const FieldElem& o) const {
    check(o);
    FieldElem e(*this);
    if (p_) e.r_ = (r_ + o.r_) % p_;
    else e.q_ = q_ + o.q_;
    return e;
  }

  FieldElem operator-(const FieldElem& o) const { return *this + (-o); }

  FieldElem operator*(const FieldElem& o) const {
    check(o);
    FieldElem e(*this);
    if (p_) e.r_ = static_cast<std::uint64_t>(r_) * o.r_ % p_;
    else e.q_ = q_ * o.q_;
    return e;
  }

  FieldElem inverse() const {
    if (is_zero()) throw std::domain_error("FieldElem: division by zero");
    FieldElem e(*this);
    if (p_) e.r_ = inv_mod(r_, p_);
    else e.q_ = 1 / q_;
    return e;
  }

  FieldElem operator/(const FieldElem& o) const { return *this * o.inverse(); }

  FieldElem& operator+=(const FieldElem& o) { return *this = *this + o; }
  FieldElem& operator-=(const FieldElem& o) { return *this = *this - o; }
  FieldElem& operator*=(const FieldElem& o) { return *this = *this * o; }

  bool operator==(const FieldElem& o) const {
    check(o);
    return p_ ? r_ == o.r_ : q_ == o.q_;
  }
  bool operator!=(const FieldElem& o) const { return !(*this == o); }

  /// Total order used only for canonical printing / container keys.
  bool operator<(const FieldElem& o) const {
    check(o);
    return p_ ? r_ < o.r_ : q_ < o.q_;
  }

  std::string str() const {
    if (p_) return std::to_string(r_);
    return q_.get_str();
  }

  /// Uniform sample: residues for F_p, small num/den for Q.
  static FieldElem sample(const Field& f, std::mt19937_64& rng) {
    if (f.kind() == FieldKind::PrimeField) {
      std::uniform_int_distribution<std::uint32_t> d(0, f.characteristic() - 1);
      return from_int(f, static_cast<long>(d(rng)));
    }
    std::uniform_int_distribution<long> num(-6, 6), den(1, 4);
    return rational(num(rng), den(rng));
  }

 private:
  void check(const FieldElem& o) const {
    if (p_ != o.p_) throw std::invalid_argument("FieldElem: mixed-field arithmetic");
  }

  static std::uint32_t norm_mod(long n, std::uint32_t p) {
    long r = n % static_cast<long>(p);
    if (r < 0) r += p;
    return static_cast<std::uint32_t>(r);
  }

  static std::uint32_t inv_mod(std::uint32_t a, std::uint32_t p) {
    // extended Euclid on (a, p)
    long t = 0, new_t = 1;
    long r = p, new_r = a;
    while (new_r != 0) {
      long q = r / new_r;
      long tmp = t - q * new_t;
      t = new_t; new_t = tmp;
      tmp = r - q * new_r;
      r = new_r; new_r = tmp;
    }
    if (t < 0) t += p;
    return static_cast<std::uint32_t>(t);
  }

  std::uint32_t p_;  // 0 = rationals
  std::uint32_t r_;  // residue when p_ > 0
  mpq_class q_;      // value when p_ == 0
};

inline FieldElem operator*(long n, const FieldElem& e) {
  return FieldElem::from_int(e.field(), n) * e;
}

}  // namespace staralg
