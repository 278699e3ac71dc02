#include <catch2/catch_amalgamated.hpp>

#include "diffchow/quasigeneric.hpp"
#include "helpers.hpp"

using namespace diffchow;

namespace {

Ctx ctx2() { return make_context(2, {"y1", "y2"}); }

DiffVar dv(std::uint32_t indet, std::vector<std::uint32_t> exps) {
  return DiffVar(indet, DerOp(std::move(exps)));
}

DiffMonomial mono1(const DiffVar& v, std::uint32_t e = 1) {
  return DiffMonomial::var(v, e);
}

}  // namespace

TEST_CASE("support validation") {
  Ctx c = ctx2();
  SECTION("a mixed monomial of too-high order is rejected") {
    QuasiGenericSpec spec{1,
                          {DiffMonomial::one(),
                           mono1(dv(0, {1, 0})).times(mono1(dv(0, {0, 1})))}};
    SupportValidation v = validate_support(c, spec);
    CHECK_FALSE(v.valid);
  }
  SECTION("a generic hyperplane is valid and fully generic") {
    Ctx c1 = make_context(2, {"y1"});
    QuasiGenericSpec spec{0, {DiffMonomial::one(), mono1(dv(0, {0, 0}))}};
    SupportValidation v = validate_support(c1, spec);
    CHECK(v.valid);
    CHECK(v.fully_generic);
    CHECK(v.generic_degree == 1);
  }
  SECTION("a support without 1 is rejected") {
    QuasiGenericSpec spec{1, {mono1(dv(0, {0, 0})), mono1(dv(0, {1, 0})),
                              mono1(dv(1, {1, 0}))}};
    SupportValidation v = validate_support(c, spec);
    CHECK_FALSE(v.valid);
  }
  SECTION("a proper quasi-generic support is valid but not fully generic") {
    QuasiGenericSpec spec{1, {DiffMonomial::one(), mono1(dv(0, {1, 0})),
                              mono1(dv(1, {1, 0}))}};
    SupportValidation v = validate_support(c, spec);
    CHECK(v.valid);
    CHECK_FALSE(v.fully_generic);
  }
}

TEST_CASE("intersection with the full affine plane") {
  Ctx c = ctx2();
  Ranking r = Ranking::orderly(c);
  AutoreducedSet empty = AutoreducedSet::make({}, r);
  QuasiGenericSpec spec{0, {DiffMonomial::one(), mono1(dv(0, {0, 0})),
                            mono1(dv(1, {0, 0}))}};
  IntersectionExperiment ex =
      run_intersection_experiment(empty, r, c, spec, 2);
  CHECK(ex.t_min == 0);
  REQUIRE(ex.measured.size() == 3);
  CHECK(ex.matches);
  CHECK_FALSE(ex.empty_at);
  // omega = 2 C(t+2,2), drop = C(t+2,2): 1, 3, 6
  CHECK(ex.predicted[0] == 1);
  CHECK(ex.predicted[1] == 3);
  CHECK(ex.predicted[2] == 6);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(ex.measured[i]);
    CHECK(Q(*ex.measured[i]) == ex.predicted[i]);
  }
}

TEST_CASE("intersection with a rank-one charset") {
  Ctx c = ctx2();
  Ranking r = Ranking::orderly(c);
  AutoreducedSet a = AutoreducedSet::make(
      {DiffPoly::var(c, dv(1, {0, 0})) -
       DiffPoly::var(c, dv(0, {0, 0})).pow(2)},
      r);
  QuasiGenericSpec spec{1, {DiffMonomial::one(), mono1(dv(0, {1, 0})),
                            mono1(dv(1, {1, 0}))}};
  IntersectionExperiment ex = run_intersection_experiment(a, r, c, spec, 2);
  CHECK(ex.matches);
  REQUIRE(ex.measured.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    REQUIRE(ex.measured[i]);
    CHECK(Q(*ex.measured[i]) == ex.predicted[i]);
    CHECK(ex.predicted[i] == Q(static_cast<long>(i + 1)));  // t + 1
  }
}

TEST_CASE("a zero-dimensional variety misses a generic hyperplane") {
  Ctx c1 = make_context(2, {"y"});
  Ranking r = Ranking::orderly(c1);
  AutoreducedSet a = AutoreducedSet::make(
      {DiffPoly::var(c1, dv(0, {1, 0})), DiffPoly::var(c1, dv(0, {0, 1}))}, r);
  QuasiGenericSpec spec{0, {DiffMonomial::one(), mono1(dv(0, {0, 0}))}};
  IntersectionExperiment ex = run_intersection_experiment(a, r, c1, spec, 1);
  CHECK(ex.variety_delta_dim == 0);
  REQUIRE(ex.empty_at);
  CHECK(*ex.empty_at <= 1);
  CHECK(ex.matches);
}

TEST_CASE("Remark-style variant: one parametric pure monomial suffices") {
  Ctx c = ctx2();
  Ranking r = Ranking::orderly(c);
  AutoreducedSet a = AutoreducedSet::make(
      {DiffPoly::var(c, dv(1, {0, 0})) -
       DiffPoly::var(c, dv(0, {0, 0})).pow(2)},
      r);
  // support {1, d1(y1)} only: not quasi-generic, but y1 is parametric
  QuasiGenericSpec spec{1, {DiffMonomial::one(), mono1(dv(0, {1, 0}))}};
  CHECK_FALSE(validate_support(c, spec).valid);
  IntersectionExperiment ex = run_intersection_experiment(a, r, c, spec, 2);
  CHECK(ex.matches);
}

TEST_CASE("experiment preconditions") {
  Ctx c = ctx2();
  Ranking r = Ranking::orderly(c);
  AutoreducedSet empty = AutoreducedSet::make({}, r);
  QuasiGenericSpec spec{2, {DiffMonomial::one()}};
  CHECK_THROWS_AS(run_intersection_experiment(empty, r, c, spec, 1),
                  math_error);
}

TEST_CASE("multi-intersection prediction") {
  SECTION("single order-one polynomial in one variable") {
    MultiIntersectPrediction p = multi_intersection_predict({1}, 1, 2);
    for (long t = 0; t < 5; ++t) CHECK(p.omega.eval(t) == t + 1);
    CHECK(p.delta_dimension == 0);
    CHECK(p.differential_type == 1);
    CHECK(p.typical_dimension == 1);
  }
  SECTION("all orders zero cancel exactly") {
    MultiIntersectPrediction p = multi_intersection_predict({0, 0}, 2, 2);
    CHECK(p.omega.is_zero());
    CHECK(p.delta_dimension == 0);
  }
  SECTION("ordinary case sums the orders") {
    MultiIntersectPrediction p = multi_intersection_predict({1, 2}, 2, 1);
    CHECK(p.omega.degree() == 0);
    CHECK(p.omega.eval(7) == 3);
    CHECK(p.typical_dimension == 3);
    CHECK(p.differential_type == 0);
  }
  SECTION("too many polynomials is an error") {
    CHECK_THROWS_AS(multi_intersection_predict({1, 1}, 1, 2), math_error);
  }
}
