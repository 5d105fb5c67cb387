#include <catch2/catch_amalgamated.hpp>

#include "staralg/series.hpp"

using namespace staralg;

namespace {
Field F5 = Field::prime(5);
Field Q = Field::rationals();

TruncatedSeries ts(Field f, std::size_t n, std::vector<long> coeffs) {
  std::vector<FieldElem> cs;
  for (long c : coeffs) cs.push_back(FieldElem::from_int(f, c));
  return TruncatedSeries::from_coeffs(f, "x", n, cs);
}
}  // namespace

TEST_CASE("valuation by leading term inspection") {
  TruncatedSeries s = ts(Q, 8, {0, 0, 0, 1, 0, 1});
  CHECK(s.valuation() == Valuation::at(3));
}

TEST_CASE("valuation of the zero truncation is the sentinel") {
  TruncatedSeries s(Q, "x", 8);
  Valuation v = s.valuation();
  CHECK_FALSE(v.exact);
  CHECK(v.value == 8);
  CHECK(v.str() == ">=8");
}

TEST_CASE("invert of 1-x mod x^4") {
  TruncatedSeries s = ts(Q, 4, {1, -1});
  TruncatedSeries inv = s.invert();
  CHECK(inv == ts(Q, 4, {1, 1, 1, 1}));
  // multiply back
  TruncatedSeries one = ts(Q, 4, {1});
  CHECK(s * inv == one);
}

TEST_CASE("invert a*a^-1 == 1 for random units") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 100; ++t) {
    TruncatedSeries s(F5, "x", 12);
    for (std::size_t i = 0; i < 12; ++i) s.set_coeff(i, FieldElem::sample(F5, rng));
    if (s.coeff(0).is_zero()) s.set_coeff(0, FieldElem::one(F5));
    TruncatedSeries one(F5, "x", 12);
    one.set_coeff(0, FieldElem::one(F5));
    REQUIRE(s * s.invert() == one);
  }
}

TEST_CASE("invert on positive valuation is rejected") {
  TruncatedSeries s = ts(Q, 4, {0, 1});
  CHECK_THROWS_AS(s.invert(), std::domain_error);
}

TEST_CASE("precision mismatch is rejected") {
  CHECK_THROWS_AS(ts(Q, 4, {1}) + ts(Q, 5, {1}), std::invalid_argument);
}

TEST_CASE("liouville series") {
  TruncatedSeries z = TruncatedSeries::liouville(F5, "x", 24, 1);
  // exponents i! below 24: 1, 2, 6
  CHECK(z.coeff(1).is_one());
  CHECK(z.coeff(2).is_one());
  CHECK(z.coeff(6).is_one());
  CHECK(z.coeff(3).is_zero());
  CHECK(z.coeff(23).is_zero());

  TruncatedSeries y24 = TruncatedSeries::liouville(F5, "x", 24, 2);
  CHECK(y24.coeff(2).is_one());
  for (std::size_t i = 3; i < 24; ++i) CHECK(y24.coeff(i).is_zero());
  TruncatedSeries y32 = TruncatedSeries::liouville(F5, "x", 32, 2);
  CHECK(y32.coeff(2).is_one());
  CHECK(y32.coeff(24).is_one());  // (2*2)! = 24
}

TEST_CASE("Laurent division tracks windows and negative valuations") {
  TruncatedSeries zt = TruncatedSeries::liouville(Q, "x", 24, 1);
  Laurent z = Laurent::from_series(zt);
  Laurent x = Laurent::monomial(Q, FieldElem::one(Q), 1, 24);

  Laurent z_over_x = z.divide(x);
  CHECK(z_over_x.valuation() == Valuation::at(0));
  CHECK(z_over_x.coeff(0).is_one());   // z/x = 1 + x + x^5 + ...
  CHECK(z_over_x.coeff(5).is_one());

  Laurent one_over_x = Laurent::monomial(Q, FieldElem::one(Q), 0, 24).divide(x);
  CHECK(one_over_x.valuation() == Valuation::at(-1));

  // window arithmetic: the inverse of x is known through order 21,
  // so the product's window ends at 22
  CHECK(z_over_x.bound() == 22);

  // (z - x) has valuation 2
  Laurent diff = z - x;
  CHECK(diff.valuation() == Valuation::at(2));
}

TEST_CASE("Laurent indeterminate valuation surfaces as a sentinel") {
  Laurent z = Laurent::from_series(TruncatedSeries::liouville(Q, "x", 8, 1));
  Laurent same = Laurent::from_series(TruncatedSeries::liouville(Q, "x", 8, 1));
  Laurent d = z - same;
  Valuation v = d.valuation();
  CHECK_FALSE(v.exact);
  CHECK(v.value >= 8);
  CHECK_THROWS_AS(d.invert(), std::domain_error);
}

TEST_CASE("YLaurent keeps y symbolic and substitutes on demand") {
  std::size_t d = 3;
  long bound = 16;
  YLaurent y = YLaurent::y_symbol(Q, d, bound);
  YLaurent x = YLaurent::from_laurent(d, Laurent::monomial(Q, FieldElem::one(Q), 1, bound));
  YLaurent p = x * y + y * y;  // x*y + y^2
  CHECK(p.coeff(0).known_zero_window());
  CHECK(p.coeff(1).valuation() == Valuation::at(1));
  CHECK(p.coeff(2).valuation() == Valuation::at(0));

  // substitute y -> x^2: x*y + y^2 = x^3 + x^4
  Laurent y_embed = Laurent::monomial(Q, FieldElem::one(Q), 2, bound);
  Laurent full = p.substitute_y(y_embed);
  CHECK(full.valuation() == Valuation::at(3));
  CHECK(full.coeff(4).is_one());

  // inversion needs a unit y^0 part
  CHECK_THROWS_AS(p.invert(), std::domain_error);
  YLaurent unit = YLaurent::from_laurent(d, Laurent::monomial(Q, FieldElem::one(Q), 0, bound)) + p;
  YLaurent inv = unit.invert();
  YLaurent prod = unit * inv;
  CHECK(prod.coeff(0).valuation() == Valuation::at(0));
  for (std::size_t j = 1; j <= d; ++j) {
    Valuation v = prod.coeff(j).valuation();
    CHECK_FALSE(v.exact);  // all known coefficients vanish
  }
}
