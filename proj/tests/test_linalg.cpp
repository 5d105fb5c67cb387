#include <catch2/catch_amalgamated.hpp>

#include "staralg/linalg.hpp"

using namespace staralg;

namespace {
Field Q = Field::rationals();

Matrix<FieldElem> mat(Field f, std::size_t r, std::size_t c, std::vector<long> entries) {
  Matrix<FieldElem> m(r, c, FieldElem::zero(f));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m.at(i, j) = FieldElem::from_int(f, entries[i * c + j]);
  return m;
}

Vec vec(Field f, std::vector<long> entries) {
  Vec v;
  for (long e : entries) v.push_back(FieldElem::from_int(f, e));
  return v;
}
}  // namespace

TEST_CASE("identity system") {
  auto m = mat(Q, 2, 2, {1, 0, 0, 1});
  auto res = linear_solve(m, vec(Q, {1, 0}));
  REQUIRE(res.solution.has_value());
  CHECK(*res.solution == vec(Q, {1, 0}));
  CHECK(res.kernel.empty());
}

TEST_CASE("rank-deficient consistent system") {
  auto m = mat(Q, 2, 2, {1, 1, 2, 2});
  auto res = linear_solve(m, vec(Q, {1, 2}));
  REQUIRE(res.solution.has_value());
  // verify M * solution = target
  const Vec& x = *res.solution;
  CHECK(m.at(0, 0) * x[0] + m.at(0, 1) * x[1] == FieldElem::from_int(Q, 1));
  CHECK(m.at(1, 0) * x[0] + m.at(1, 1) * x[1] == FieldElem::from_int(Q, 2));
  REQUIRE(res.kernel.size() == 1);
  // kernel spans (1, -1)
  const Vec& k = res.kernel[0];
  CHECK(k[0] + k[1] == FieldElem::zero(Q));
  CHECK_FALSE(k[0].is_zero());
}

TEST_CASE("inconsistent rows") {
  auto m = mat(Q, 2, 2, {1, 1, 2, 2});
  auto res = linear_solve(m, vec(Q, {1, 3}));
  CHECK_FALSE(res.solution.has_value());
}

TEST_CASE("dimension mismatch is rejected") {
  auto m = mat(Q, 2, 2, {1, 0, 0, 1});
  CHECK_THROWS_AS(linear_solve(m, vec(Q, {1, 0, 0})), std::invalid_argument);
}

TEST_CASE("solutions and kernels verify on random systems") {
  Field f = Field::prime(5);
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<std::size_t> dim(1, 5);
  for (int t = 0; t < 300; ++t) {
    std::size_t r = dim(rng), c = dim(rng);
    Matrix<FieldElem> m(r, c, FieldElem::zero(f));
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) m.at(i, j) = FieldElem::sample(f, rng);
    Vec b;
    for (std::size_t i = 0; i < r; ++i) b.push_back(FieldElem::sample(f, rng));
    auto res = linear_solve(m, b);
    if (res.solution) {
      for (std::size_t i = 0; i < r; ++i) {
        FieldElem s = FieldElem::zero(f);
        for (std::size_t j = 0; j < c; ++j) s += m.at(i, j) * (*res.solution)[j];
        REQUIRE(s == b[i]);
      }
    }
    for (const auto& k : res.kernel) {
      for (std::size_t i = 0; i < r; ++i) {
        FieldElem s = FieldElem::zero(f);
        for (std::size_t j = 0; j < c; ++j) s += m.at(i, j) * k[j];
        REQUIRE(s.is_zero());
      }
    }
    // rank-nullity
    std::size_t rank = c - res.kernel.size();
    RowSpan rows(f, c);
    for (std::size_t i = 0; i < r; ++i) {
      Vec row;
      for (std::size_t j = 0; j < c; ++j) row.push_back(m.at(i, j));
      rows.insert(row);
    }
    REQUIRE(rows.dim() == rank);
  }
}

TEST_CASE("row spans: membership, equality, intersection") {
  RowSpan a(Q, 3);
  a.insert(vec(Q, {1, 0, 1}));
  a.insert(vec(Q, {0, 1, 1}));
  CHECK(a.dim() == 2);
  CHECK(a.contains(vec(Q, {1, 1, 2})));
  CHECK_FALSE(a.contains(vec(Q, {1, 1, 0})));
  CHECK_FALSE(a.insert(vec(Q, {2, 2, 4})));

  RowSpan b(Q, 3);
  b.insert(vec(Q, {1, 0, 1}));
  b.insert(vec(Q, {0, 0, 1}));
  RowSpan i = a.intersect(b);
  CHECK(i.dim() == 1);
  CHECK(a.contains_span(i));
  CHECK(b.contains_span(i));
  CHECK(i.contains(vec(Q, {1, 0, 1})));
}
