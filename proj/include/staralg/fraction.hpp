#pragma once

/**
 * Fractions of multivariate polynomials, optionally tagged with the
 * monomial prime at which the ambient ring is localized.  Equality is
 * cross-multiplication equality.  Whether the denominator is a unit is a
 * property of the *context* the fraction is used in: fractions denoting
 * elements of a localized ring must pass `denominator_is_unit`, while
 * fractions fed to a series embedding only need an invertible image, which
 * the embedding itself checks.
 */

#include <string>
#include <vector>

#include "polynomial.hpp"

namespace staralg {

class LocalFraction {
 public:
  explicit LocalFraction(Polynomial num)
      : num_(std::move(num)), den_(Polynomial::one(num_.field(), num_.vars())) {}

  LocalFraction(Polynomial num, Polynomial den, std::vector<std::string> prime_vars = {})
      : num_(std::move(num)), den_(std::move(den)), prime_vars_(std::move(prime_vars)) {
    if (den_.is_zero()) throw std::domain_error("LocalFraction: zero denominator");
  }

  /// Element of the localization at the monomial prime (prime_vars): the
  /// denominator must survive evaluation at the prime's zero locus.
  static LocalFraction in_localization(Polynomial num, Polynomial den,
                                       std::vector<std::string> prime_vars) {
    LocalFraction f(std::move(num), std::move(den), std::move(prime_vars));
    if (!f.denominator_is_unit())
      throw std::invalid_argument("LocalFraction: denominator lies in the prime ideal (" +
                                  f.den_.str() + ")");
    return f;
  }

  const Polynomial& num() const { return num_; }
  const Polynomial& den() const { return den_; }
  const std::vector<std::string>& prime_vars() const { return prime_vars_; }
  const Field& field() const { return num_.field(); }
  const std::vector<std::string>& vars() const { return num_.vars(); }

  bool is_zero() const { return num_.is_zero(); }

  /// Reduction at the prime's zero locus: set the prime variables to zero
  /// and test the denominator nonzero.  Only monomial primes (generated by
  /// a subset of the variables) are supported.
  bool denominator_is_unit() const {
    if (prime_vars_.empty()) return true;
    std::vector<std::size_t> idx;
    for (const auto& v : prime_vars_) idx.push_back(num_.var_index(v));
    return !den_.kill_variables(idx).is_zero();
  }

  LocalFraction operator+(const LocalFraction& o) const {
    return LocalFraction(num_ * o.den_ + o.num_ * den_, den_ * o.den_, merged_prime(o));
  }

  LocalFraction operator-() const { return LocalFraction(-num_, den_, prime_vars_); }
  LocalFraction operator-(const LocalFraction& o) const { return *this + (-o); }

  LocalFraction operator*(const LocalFraction& o) const {
    return LocalFraction(num_ * o.num_, den_ * o.den_, merged_prime(o));
  }

  LocalFraction operator/(const LocalFraction& o) const {
    if (o.num_.is_zero()) throw std::domain_error("LocalFraction: division by zero");
    return LocalFraction(num_ * o.den_, den_ * o.num_, merged_prime(o));
  }

  bool operator==(const LocalFraction& o) const {
    return num_ * o.den_ == o.num_ * den_;
  }
  bool operator!=(const LocalFraction& o) const { return !(*this == o); }

  std::string str() const {
    if (den_ == Polynomial::one(num_.field(), num_.vars())) return num_.str();
    return "(" + num_.str() + ")/(" + den_.str() + ")";
  }

 private:
  std::vector<std::string> merged_prime(const LocalFraction& o) const {
    return prime_vars_.empty() ? o.prime_vars_ : prime_vars_;
  }

  Polynomial num_;
  Polynomial den_;
  std::vector<std::string> prime_vars_;
};

}  // namespace staralg
