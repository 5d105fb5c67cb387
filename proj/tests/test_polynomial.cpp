#include <catch2/catch_amalgamated.hpp>

#include "staralg/polynomial.hpp"

using namespace staralg;

namespace {

Polynomial parse_uni(Field f, const std::vector<long>& coeffs_low_to_high) {
  // helper: build a univariate polynomial in x from low-order coefficients
  Polynomial p = Polynomial::zero(f, {"x"});
  for (std::size_t i = 0; i < coeffs_low_to_high.size(); ++i)
    p += Polynomial::term(f, {"x"}, {static_cast<std::uint32_t>(i)},
                          FieldElem::from_int(f, coeffs_low_to_high[i]));
  return p;
}

// independent univariate long division on coefficient vectors
std::pair<std::vector<FieldElem>, std::vector<FieldElem>> naive_divmod(
    Field f, std::vector<FieldElem> a, const std::vector<FieldElem>& b) {
  auto deg = [](const std::vector<FieldElem>& v) {
    for (std::size_t i = v.size(); i-- > 0;)
      if (!v[i].is_zero()) return static_cast<long>(i);
    return -1L;
  };
  long db = deg(b);
  REQUIRE(db >= 0);
  std::vector<FieldElem> q(a.size(), FieldElem::zero(f));
  while (deg(a) >= db) {
    long da = deg(a);
    FieldElem c = a[da] / b[db];
    q[da - db] = c;
    for (long i = 0; i <= db; ++i) a[da - db + i] -= c * b[i];
  }
  return {q, a};
}

std::vector<FieldElem> uni_coeffs(const Polynomial& p, std::size_t upto) {
  std::vector<FieldElem> v(upto, FieldElem::zero(p.field()));
  for (const auto& [m, c] : p.terms()) v.at(m[0]) = c;
  return v;
}

}  // namespace

TEST_CASE("difference of squares") {
  Field q = Field::rationals();
  std::vector<std::string> vars{"x", "y"};
  Polynomial x = Polynomial::variable(q, vars, "x");
  Polynomial y = Polynomial::variable(q, vars, "y");
  CHECK((x + y) * (x - y) == x * x - y * y);
}

TEST_CASE("additive identity") {
  Field f = Field::prime(5);
  std::mt19937_64 rng(1);
  Polynomial p = random_polynomial(f, {"x", "y"}, 4, 5, rng);
  CHECK(p + Polynomial::zero(f, {"x", "y"}) == p);
}

TEST_CASE("divmod of x^3+1 by x+1 over F5") {
  Field f = Field::prime(5);
  Polynomial a = parse_uni(f, {1, 0, 0, 1});
  Polynomial b = parse_uni(f, {1, 1});
  auto [q, r] = a.divmod(b);
  CHECK(q == parse_uni(f, {1, 4, 1}));  // x^2 + 4x + 1
  CHECK(r.is_zero());
  // cross-check against the independent long-division oracle
  auto [nq, nr] = naive_divmod(f, uni_coeffs(a, 6), uni_coeffs(b, 6));
  CHECK(uni_coeffs(q, 6) == nq);
  for (const auto& c : nr) CHECK(c.is_zero());
}

TEST_CASE("divmod reconstruction on random univariate pairs") {
  Field f = Field::rationals();
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Polynomial a = random_polynomial(f, {"x"}, 6, 4, rng);
    Polynomial b = random_polynomial(f, {"x"}, 3, 3, rng);
    if (b.is_zero()) continue;
    auto [q, r] = a.divmod(b);
    REQUIRE(q * b + r == a);
    if (!r.is_zero()) REQUIRE(r.total_deg() < b.total_deg());
  }
}

TEST_CASE("ring axioms on random triples") {
  Field f = Field::prime(5);
  std::mt19937_64 rng(11);
  std::vector<std::string> vars{"x", "y", "z"};
  for (int i = 0; i < 1000; ++i) {
    Polynomial a = random_polynomial(f, vars, 3, 3, rng);
    Polynomial b = random_polynomial(f, vars, 3, 3, rng);
    Polynomial c = random_polynomial(f, vars, 3, 3, rng);
    REQUIRE((a + b) + c == a + (b + c));
    REQUIRE((a * b) * c == a * (b * c));
    REQUIRE(a * (b + c) == a * b + a * c);
    REQUIRE(a * b == b * a);
  }
}

TEST_CASE("graded lex leading term") {
  Field q = Field::rationals();
  std::vector<std::string> vars{"x", "y"};
  Polynomial x = Polynomial::variable(q, vars, "x");
  Polynomial y = Polynomial::variable(q, vars, "y");
  Polynomial p = x * x + x * y + y * y * y;
  auto [m, c] = p.leading_term();
  CHECK(m == Monomial{0, 3});  // y^3 wins on total degree
  Polynomial p2 = x * x + x * y;
  CHECK(p2.leading_term().first == Monomial{2, 0});  // same degree: lex picks x^2
}

TEST_CASE("derivative and evaluation") {
  Field q = Field::rationals();
  std::vector<std::string> vars{"x", "y", "Z"};
  Polynomial z = Polynomial::variable(q, vars, "Z");
  CHECK((z * z).derivative("Z") == 2 * z);
  Polynomial c = Polynomial::constant(q, vars, FieldElem::from_int(q, 9));
  CHECK(c.derivative("Z").is_zero());
  FieldElem v = (z * z + z).eval_field(
      {FieldElem::from_int(q, 0), FieldElem::from_int(q, 0), FieldElem::from_int(q, 3)});
  CHECK(v == FieldElem::from_int(q, 12));
}

TEST_CASE("division by the zero polynomial is rejected") {
  Field q = Field::rationals();
  Polynomial x = Polynomial::variable(q, {"x"}, "x");
  CHECK_THROWS_AS(x.divmod(Polynomial::zero(q, {"x"})), std::domain_error);
}
