#include <catch2/catch_amalgamated.hpp>

#include "staralg/twisted.hpp"

using namespace staralg;

namespace {
Scenario gl_scenario(std::size_t n = 24, std::size_t d = 6, long v0 = 0) {
  ScenarioConfig cfg;
  cfg.precision = n;
  cfg.ydeg = d;
  cfg.lattice_threshold = v0;
  return Scenario(cfg);
}
}  // namespace

TEST_CASE("membership verdicts on the canonical elements") {
  Scenario sc = gl_scenario();
  Polynomial x = sc.var("x"), y = sc.var("y"), z = sc.var("Z");

  SECTION("Z/x is not a member: D = 1/x has order -1") {
    MembershipVerdict v = sc.membership(LocalFraction(z, x));
    CHECK(v.in_R == MembershipVerdict::State::No);
    REQUIRE(v.evidence.has_value());
    CHECK(*v.evidence == Valuation::at(-1));
  }
  SECTION("elements of A are members with D = 0") {
    MembershipVerdict v = sc.membership(LocalFraction(x * x * x * y));
    CHECK(v.yes());
    CHECK(v.derivative_zero);
  }
  SECTION("Z^2/x is a member: ord(2z/x) = 0") {
    MembershipVerdict v = sc.membership(LocalFraction(z * z, x));
    CHECK(v.yes());
    REQUIRE(v.evidence.has_value());
    CHECK(*v.evidence == Valuation::at(0));
  }
  SECTION("Z itself is a member") {
    CHECK(sc.membership(LocalFraction(z)).yes());
  }
  SECTION("an element outside S is refused membership") {
    MembershipVerdict v = sc.membership(LocalFraction(y, x));  // y/x has a pole in its y-part
    CHECK(v.in_R == MembershipVerdict::State::No);
    CHECK(v.note.find("not in S") != std::string::npos);
  }
  SECTION("a denominator embedding to zero is an error") {
    Polynomial zero_den = z - sc.z_truncation(23);
    CHECK_THROWS_AS(sc.membership(LocalFraction(x, zero_den)), std::domain_error);
  }
}

TEST_CASE("membership is monotone in precision") {
  Scenario low = gl_scenario(24, 6), high = gl_scenario(32, 8);
  Polynomial x = low.var("x"), y = low.var("y"), z = low.var("Z");
  std::vector<LocalFraction> elems{
      LocalFraction(z, x), LocalFraction(z * z, x), LocalFraction(z),
      LocalFraction(x * y), LocalFraction(z * z * z, x * x),
      LocalFraction(z - low.z_truncation(2), x * x)};
  for (const auto& f : elems) {
    MembershipVerdict a = low.membership(f), b = high.membership(f);
    if (a.determinate()) {
      REQUIRE(b.determinate());
      REQUIRE(a.yes() == b.yes());
    }
  }
}

TEST_CASE("members are closed under sum and product") {
  Scenario sc = gl_scenario();
  Polynomial x = sc.var("x"), z = sc.var("Z");

  SECTION("hand-picked members") {
    LocalFraction f(z * z, x), g(x);
    ClosureReport r = sc.closure_check({{f, g}, {f, f}});
    CHECK(r.pass);
    CHECK(r.checked == 2);
  }
  SECTION("pairs with a non-member are skipped, not failed") {
    LocalFraction f(z, x), g(x);
    ClosureReport r = sc.closure_check({{f, g}});
    CHECK(r.pass);
    CHECK(r.skipped == 1);
    CHECK(r.checked == 0);
  }
  SECTION("random member pairs") {
    std::mt19937_64 rng(117);
    std::vector<LocalFraction> pool = sc.sample_members(30, rng);
    std::vector<std::pair<LocalFraction, LocalFraction>> pairs;
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    for (int i = 0; i < 50; ++i) pairs.emplace_back(pool[pick(rng)], pool[pick(rng)]);
    ClosureReport r = sc.closure_check(pairs);
    CHECK(r.pass);
    CHECK(r.checked == 50);
  }
}

TEST_CASE("alpha: every coset layer is hit from S") {
  Scenario sc = gl_scenario();
  std::mt19937_64 rng(5);
  AlphaIsoReport r = sc.alpha_iso_check(6, rng);
  REQUIRE(r.pass);
  CHECK(r.witnesses.size() == 6);
  CHECK_THROWS_AS(sc.alpha_iso_check(24, rng), std::domain_error);
}

TEST_CASE("f_map sends the canonical elements to the expected pairs") {
  Scenario sc = gl_scenario();
  std::size_t m = 1;
  IdealizationModel model = sc.idealization_model(m);
  Polynomial x = sc.var("x"), y = sc.var("y"), z = sc.var("Z");

  // f(Z) = (0, 1): z has order 1, D(Z) = 1 has order 0
  IdealizationElement fz = sc.f_map(model, m, LocalFraction(z));
  for (const auto& c : fz.ring_part) CHECK(c.is_zero());
  CHECK(fz.module_part[0].is_one());

  // f(y) = (y, 0)
  IdealizationElement fy = sc.f_map(model, m, LocalFraction(y));
  CHECK(fy.ring_part == model.base().project(Polynomial::variable(
                            sc.field(), {"x", "y"}, "y")));
  for (const auto& c : fy.module_part) CHECK(c.is_zero());

  // f(x) = (0, 0)
  IdealizationElement fx = sc.f_map(model, m, LocalFraction(x));
  CHECK(fx == model.zero());

  // f(1) = (1, 0)
  IdealizationElement f1 = sc.f_map(model, m, LocalFraction(Polynomial::one(sc.field(), sc.vars())));
  CHECK(f1 == model.one());

  // non-members are rejected
  CHECK_THROWS_AS(sc.f_map(model, m, LocalFraction(z, x)), std::invalid_argument);

  // f(Z) * f(Z) = (0,0) = f(Z^2) in the mod-x model
  IdealizationElement sq = model.star_mul(fz, fz);
  CHECK(sq == model.zero());
  CHECK(sc.f_map(model, m, LocalFraction(z * z)) == sq);
}

TEST_CASE("analytic isomorphism at c and c^2") {
  Scenario sc = gl_scenario();
  std::mt19937_64 rng(7);
  for (std::size_t m : {1u, 2u}) {
    AnalyticIsoReport r = sc.analytic_iso_check(m, rng);
    REQUIRE(r.pass);
    CHECK(r.image_dim == r.ring_dim + r.module_dim);
    CHECK(r.ring_dim == m * (sc.config().ydeg + 1));
    CHECK(r.module_dim == m);
  }
}

TEST_CASE("one-case ideal comparison") {
  Scenario sc = gl_scenario();
  std::mt19937_64 rng(11);
  Polynomial x = sc.var("x"), z = sc.var("Z");

  SECTION("I = (x, Z) at m = 2") {
    OneCaseReport r = sc.one_case_check({LocalFraction(x), LocalFraction(z)}, 2, rng);
    REQUIRE(r.pass);
    CHECK(r.lhs_dim == r.rhs_dim);
  }
  SECTION("the unit ideal gives everything on both sides") {
    OneCaseReport r =
        sc.one_case_check({LocalFraction(Polynomial::one(sc.field(), sc.vars()))}, 1, rng);
    REQUIRE(r.pass);
    CHECK(r.lhs_dim == sc.idealization_model(1).dim());
  }
  SECTION("a generator outside R is rejected") {
    CHECK_THROWS_AS(sc.one_case_check({LocalFraction(z, x)}, 1, rng), std::invalid_argument);
  }
}

TEST_CASE("intermediate rings correspond to lattice thresholds") {
  Scenario sc = gl_scenario();
  std::mt19937_64 rng(13);

  SECTION("L = K is the fixed point") {
    CorrespondenceReport r = sc.intermediate_correspondence(0, rng);
    REQUIRE(r.pass);
    CHECK(r.recovered_threshold == 0);
  }
  SECTION("v1 = -1 admits Z/x and recovers the enlarged lattice") {
    Polynomial x = sc.var("x"), z = sc.var("Z");
    CHECK(sc.membership_at(LocalFraction(z, x), -1).yes());
    CorrespondenceReport r = sc.intermediate_correspondence(-1, rng);
    REQUIRE(r.pass);
    CHECK(r.recovered_threshold == -1);
  }
  SECTION("thresholds order the membership sets") {
    Polynomial x = sc.var("x"), z = sc.var("Z");
    std::vector<LocalFraction> fam{LocalFraction(z, x), LocalFraction(z * z, x), LocalFraction(z)};
    for (const auto& f : fam)
      if (sc.membership_at(f, 0).yes()) CHECK(sc.membership_at(f, -2).yes());
  }
  SECTION("v1 above v0 is rejected") {
    CHECK_THROWS_AS(sc.intermediate_correspondence(1, rng), std::invalid_argument);
  }
}

TEST_CASE("K/aK generator counts") {
  Scenario sc = gl_scenario();
  Polynomial x = sc.var("x"), y = sc.var("y");

  SECTION("a = x: one-dimensional quotient, one generator") {
    KqReport r = sc.kq_generators(LocalFraction(x));
    CHECK(r.quotient_dim == 1);
    CHECK(r.generator_count == 1);
  }
  SECTION("a unit gives the zero quotient") {
    KqReport r = sc.kq_generators(LocalFraction(Polynomial::one(sc.field(), sc.vars()) + x));
    CHECK(r.quotient_dim == 0);
    CHECK(r.generator_count == 0);
  }
  SECTION("a = x^2: two-dimensional quotient, still one generator") {
    KqReport r = sc.kq_generators(LocalFraction(x * x));
    CHECK(r.quotient_dim == 2);
    CHECK(r.generator_count == 1);
  }
  SECTION("the count depends only on ord(a)") {
    KqReport r1 = sc.kq_generators(LocalFraction(x * x));
    KqReport r2 = sc.kq_generators(LocalFraction(x * x + x * x * x));
    KqReport r3 = sc.kq_generators(LocalFraction(y));  // ord(y(x)) = 2
    CHECK(r1.quotient_dim == r2.quotient_dim);
    CHECK(r1.generator_count == r2.generator_count);
    CHECK(r3.quotient_dim == r1.quotient_dim);
    CHECK(r3.generator_count == r1.generator_count);
  }
  SECTION("zero input is rejected") {
    CHECK_THROWS_AS(sc.kq_generators(LocalFraction(Polynomial::zero(sc.field(), sc.vars()))),
                    std::invalid_argument);
  }
}

TEST_CASE("associated prime witness search") {
  SECTION("the default lattice admits a witness") {
    Scenario sc = gl_scenario();
    AssocPrimeReport r = sc.associated_prime_witness();
    REQUIRE(r.found);
    CHECK_FALSE(r.witness.empty());
  }
  SECTION("a shifted lattice also admits a witness") {
    Scenario sc = gl_scenario(24, 6, 2);
    AssocPrimeReport r = sc.associated_prime_witness();
    CHECK(r.found);
  }
  SECTION("K = K_C is rejected") {
    ScenarioConfig cfg;
    cfg.lattice_proper = false;
    Scenario sc(cfg);
    CHECK_THROWS_AS(sc.associated_prime_witness(), std::invalid_argument);
  }
}

TEST_CASE("the scenario extension instance supports the A-side checks") {
  Scenario sc = gl_scenario(16, 4);
  const ExtensionInstance& ext = sc.extension_instance();
  CHECK(ext.is_c_analytic(1).pass);
  Vec x = ext.to_model(sc.embed_y(LocalFraction(sc.var("x"))));
  GeneratorBoundReport r = ext.generator_bound({x}, true);
  CHECK(r.pass);
  CHECK(r.count <= 1);
}

TEST_CASE("quadratic samples over the member family") {
  Scenario sc = gl_scenario();
  std::mt19937_64 rng(23);
  Polynomial x = sc.var("x"), z = sc.var("Z");
  LocalFraction zx(z, x);
  QuadraticReport r = sc.quadratic_check({{zx, zx}}, rng);
  CHECK(r.pass);
}

TEST_CASE("alpha-compatibility: verdicts match the coset of the derivative") {
  Scenario sc = gl_scenario();
  std::mt19937_64 rng(29);
  std::vector<LocalFraction> fam = sc.sample_members(15, rng);
  Polynomial x = sc.var("x"), z = sc.var("Z");
  fam.push_back(LocalFraction(z, x));
  fam.push_back(LocalFraction(z * z, x * x));
  for (const auto& f : fam) {
    MembershipVerdict v = sc.membership(f);
    if (!v.determinate()) continue;
    if (v.derivative_zero) {
      CHECK(v.yes());
      continue;
    }
    REQUIRE(v.evidence.has_value());
    bool zero_coset = v.evidence->exact && v.evidence->value >= sc.threshold();
    CHECK(v.yes() == zero_coset);
  }
}

TEST_CASE("global stability desk instances") {
  Field F5 = Field::prime(5);
  auto t = Polynomial::variable(F5, {"t"}, "t");
  auto c = [&](long n) { return Polynomial::constant(F5, {"t"}, FieldElem::from_int(F5, n)); };

  SECTION("primes (t), (t-1) with ranks 1, 2 give embedding dimensions 2, 3") {
    GlobalStableSpec spec(F5, {{t, 1}, {t - c(1), 2}});
    GlobalStableReport r = spec.local_embedding_dimensions();
    REQUIRE(r.pass);
    REQUIRE(r.entries.size() == 2);
    CHECK(r.entries[0].embedding_dimension == 2);
    CHECK(r.entries[1].embedding_dimension == 3);
  }
  SECTION("rank 0 gives a DVR: embedding dimension 1") {
    GlobalStableSpec spec(F5, {{t, 0}});
    GlobalStableReport r = spec.local_embedding_dimensions();
    REQUIRE(r.pass);
    CHECK(r.entries[0].embedding_dimension == 1);
  }
  SECTION("a single prime of rank 3 gives 4") {
    GlobalStableSpec spec(F5, {{t - c(2), 3}});
    GlobalStableReport r = spec.local_embedding_dimensions();
    REQUIRE(r.pass);
    CHECK(r.entries[0].embedding_dimension == 4);
  }
  SECTION("a quadratic irreducible prime works through its residue field") {
    // t^2 + 2 has no root mod 5 (squares are 0,1,4), so it is irreducible
    GlobalStableSpec spec(F5, {{t * t + c(2), 2}});
    GlobalStableReport r = spec.local_embedding_dimensions();
    REQUIRE(r.pass);
    CHECK(r.entries[0].embedding_dimension == 3);
  }
  SECTION("reducible generators are rejected") {
    CHECK_THROWS_AS(GlobalStableSpec(F5, {{t * t - c(1), 1}}), std::invalid_argument);
  }
  SECTION("duplicate primes are rejected") {
    CHECK_THROWS_AS(GlobalStableSpec(F5, {{t, 1}, {t, 2}}), std::invalid_argument);
  }
}
