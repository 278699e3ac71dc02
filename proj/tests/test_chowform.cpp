#include <catch2/catch_amalgamated.hpp>

#include "diffchow/chowform.hpp"
#include "diffchow/io.hpp"
#include "helpers.hpp"

using namespace diffchow;
using testutil::Dual;
using testutil::make_rng;

namespace {

Ctx ctx2() { return make_context(2, {"y1", "y2"}); }

DiffPoly v(const Ctx& c, std::uint32_t indet, std::vector<std::uint32_t> exps) {
  return DiffPoly::var(c, DiffVar(indet, DerOp(std::move(exps))));
}

struct Ex48 {
  Ctx yctx;
  Ranking ranking;
  AutoreducedSet charset;
  ChowFormResult chow;
};

Ex48 compute_ex48() {
  Ctx c = ctx2();
  Ranking r = Ranking::orderly(c);
  AutoreducedSet a = AutoreducedSet::make(
      {v(c, 0, {1, 0}), v(c, 1, {0, 0}) - v(c, 0, {0, 0}) * v(c, 0, {0, 0})},
      r);
  ChowFormResult chow = compute_chow_form(a, r, c);
  return {c, r, a, chow};
}

// the independent resultant oracle in the chow result's context
DiffPoly ex48_resultant(const ChowFormResult& chow) {
  const Ctx& c = chow.ctx;
  auto uv = [&](std::size_t j, std::vector<std::uint32_t> exps) {
    return DiffPoly::var(
        c, DiffVar(static_cast<std::uint32_t>(chow.planes[0].coeff_indets[j]),
                   DerOp(std::move(exps))));
  };
  // Res_x(u02 x^2 + u01 x + u00, d1u02 x^2 + d1u01 x + d1u00)
  return testutil::resultant_of_quadratics(
      uv(2, {0, 0}), uv(1, {0, 0}), uv(0, {0, 0}), uv(2, {1, 0}),
      uv(1, {1, 0}), uv(0, {1, 0}));
}

}  // namespace

TEST_CASE("generic hyperplane construction") {
  Ctx c = ctx2();
  SECTION("one hyperplane over two variables") {
    HyperplaneSystem sys = build_hyperplanes(c, 0);
    REQUIRE(sys.planes.size() == 1);
    CHECK(sys.ctx->size() == 5);
    CHECK(print_poly(sys.planes[0].poly) ==
          "u0_1*y1 + u0_2*y2 + u0_0");
  }
  SECTION("two hyperplanes carry six fresh symbols") {
    HyperplaneSystem sys = build_hyperplanes(c, 1);
    CHECK(sys.planes.size() == 2);
    CHECK(sys.ctx->size() == 2 + 6);
  }
  SECTION("one variable") {
    Ctx c1 = make_context(2, {"y1"});
    HyperplaneSystem sys = build_hyperplanes(c1, 0);
    CHECK(print_poly(sys.planes[0].poly) == "u0_1*y1 + u0_0");
  }
}

TEST_CASE("chow form of the order-one example equals the resultant") {
  Ex48 ex = compute_ex48();
  CHECK(ex.chow.s == 1);
  CHECK(ex.chow.d == 0);
  CHECK(ex.chow.r == 4);
  CHECK(jet_name(*ex.chow.ctx, ex.chow.leader) == "d1(u0_0)");
  CHECK(ex.chow.g == 2);

  DiffPoly res = normalize_primitive(ex48_resultant(ex.chow),
                                     ex.chow.export_ranking);
  CHECK(ex.chow.form == res);
  CHECK(ex.chow.form.order() == 1);
  for (const DiffVar& w : ex.chow.form.vars()) CHECK(w.indet >= 2);
}

TEST_CASE("chow form of a constant variety") {
  Ctx c1 = make_context(2, {"y1"});
  Ranking r = Ranking::orderly(c1);
  AutoreducedSet a = AutoreducedSet::make(
      {v(c1, 0, {0, 0}) - DiffPoly::constant(c1, Q(2))}, r);
  ChowFormResult chow = compute_chow_form(a, r, c1);
  CHECK(chow.s == 0);
  CHECK(chow.d == 0);
  CHECK(chow.r == 1);
  CHECK(print_poly(chow.form) == "2*u0_1 + u0_0");
}

TEST_CASE("the inadmissible system is rejected") {
  Ctx c1 = make_context(2, {"y"});
  Ranking r = Ranking::orderly(c1);
  AutoreducedSet a = AutoreducedSet::make(
      {v(c1, 0, {1, 0}), v(c1, 0, {0, 1})}, r);
  CHECK_THROWS_AS(compute_chow_form(a, r, c1), shape_error);
}

TEST_CASE("scalar invariance of the normalized form") {
  Ctx c = ctx2();
  Ranking r = Ranking::orderly(c);
  DiffPoly d1y1 = v(c, 0, {1, 0});
  DiffPoly parab = v(c, 1, {0, 0}) - v(c, 0, {0, 0}) * v(c, 0, {0, 0});
  ChowFormResult base = compute_chow_form(
      AutoreducedSet::make({d1y1, parab}, r), r, c);
  ChowFormResult scaled = compute_chow_form(
      AutoreducedSet::make({Q(3, 5) * d1y1, Q(-7, 2) * parab}, r), r, c);
  CHECK(base.form == scaled.form);
  CHECK(base.chow_coords == scaled.chow_coords);
}

TEST_CASE("block swap symmetry for a positive-dimensional variety") {
  Ctx c = ctx2();
  Ranking r = Ranking::orderly(c);
  AutoreducedSet a =
      AutoreducedSet::make({v(c, 1, {0, 0}) - v(c, 0, {0, 0})}, r);
  ChowFormResult chow = compute_chow_form(a, r, c);
  CHECK(chow.d == 1);
  CHECK(chow.s == 0);
  CHECK(chow.r == 1);

  // the hand-eliminated determinant u00 (u11 + u12) - u10 (u01 + u02)
  auto uv = [&](std::size_t block, std::size_t j) {
    return DiffPoly::var(
        chow.ctx,
        DiffVar(static_cast<std::uint32_t>(chow.planes[block].coeff_indets[j]),
                DerOp::identity(2)));
  };
  DiffPoly det = uv(0, 0) * (uv(1, 1) + uv(1, 2)) -
                 uv(1, 0) * (uv(0, 1) + uv(0, 2));
  DiffPoly expect = normalize_primitive(det, chow.export_ranking);
  CHECK(chow.form == expect);

  // swapping the u-blocks flips at most the sign
  std::map<std::uint32_t, std::uint32_t> swap_map;
  for (std::size_t j = 0; j <= 2; ++j) {
    swap_map[static_cast<std::uint32_t>(chow.planes[0].coeff_indets[j])] =
        static_cast<std::uint32_t>(chow.planes[1].coeff_indets[j]);
    swap_map[static_cast<std::uint32_t>(chow.planes[1].coeff_indets[j])] =
        static_cast<std::uint32_t>(chow.planes[0].coeff_indets[j]);
  }
  DiffPoly swapped = DiffPoly::zero(chow.ctx);
  for (const auto& [mono, coeff] : chow.form.terms()) {
    DiffMonomial m2;
    for (const auto& [w, e] : mono.factors) {
      auto it = swap_map.find(w.indet);
      std::uint32_t target = it == swap_map.end() ? w.indet : it->second;
      m2 = m2.times(DiffMonomial::var(DiffVar(target, w.op), e));
    }
    swapped += DiffPoly::monomial(chow.ctx, m2, coeff);
  }
  CHECK((swapped == chow.form || swapped == -chow.form));

  // same delta-degree in each block
  for (const auto& hp : chow.planes) {
    DeltaDegreeResult dd = delta_degree(chow.form, hp.coeff_indets);
    CHECK(dd.homogeneous);
    CHECK(dd.r == chow.r);
  }
}

TEST_CASE("delta degree on small forms") {
  Ctx c = make_context(2, {"u0_0", "u0_1"});
  std::vector<std::size_t> block{0, 1};
  SECTION("a linear form has degree 1") {
    DeltaDegreeResult dd = delta_degree(v(c, 0, {0, 0}), {0});
    CHECK(dd.homogeneous);
    CHECK(dd.r == 1);
  }
  SECTION("mixed orders break homogeneity") {
    DiffPoly f = v(c, 0, {1, 0}) + v(c, 0, {0, 0});
    DeltaDegreeResult dd = delta_degree(f, {0});
    CHECK_FALSE(dd.homogeneous);
  }
  SECTION("the zero polynomial is rejected") {
    CHECK_THROWS_AS(delta_degree(DiffPoly::zero(c), block), math_error);
  }
}

TEST_CASE("homogeneity of the computed form, symbolic and first order") {
  Ex48 ex = compute_ex48();
  const DiffPoly& f = ex.chow.form;
  const auto& block = ex.chow.planes[0].coeff_indets;

  DeltaDegreeResult dd = delta_degree(f, block);
  REQUIRE(dd.homogeneous);
  CHECK(dd.r == 4);

  // first-order perturbation: substitute tau(lambda * u) with lambda = 1 + h e
  auto rng = make_rng(0x5eed050);
  std::vector<DerOp> ops = derops_up_to(2, f.order());
  for (int point = 0; point < 10; ++point) {
    // random rational values for every jet of the block up to ord(f)
    std::map<DiffVar, Q> base;
    for (std::size_t idx : block)
      for (const DerOp& op : ops)
        base[DiffVar(static_cast<std::uint32_t>(idx), op)] =
            testutil::rand_q_nonzero(rng);
    std::map<DerOp, Q> eps;
    for (const DerOp& op : ops) eps[op] = testutil::rand_q(rng);

    std::map<DiffVar, Dual> perturbed;
    for (const auto& [w, val] : base) {
      Q first(0);
      for (const DerOp& sigma : derop_divisors(w.op)) {
        DiffVar rest(w.indet, *w.op.divide_by(sigma));
        first += Q(derop_binom(w.op, sigma)) * eps[sigma] * base[rest];
      }
      perturbed[w] = Dual(val, first);
    }
    Dual lhs = testutil::eval_dual(f, perturbed);
    Q f0 = testutil::eval_at(f, base);
    Dual rhs(f0, Q(dd.r) * eps[DerOp::identity(2)] * f0);
    REQUIRE(lhs == rhs);
  }
}

TEST_CASE("characteristic-set representation membership") {
  Ex48 ex = compute_ex48();
  CharsetRepReport rep =
      verify_charset_representation(ex.chow, ex.charset, ex.ranking);
  REQUIRE(rep.member.size() == 2);
  CHECK(rep.member[0]);
  CHECK(rep.member[1]);

  // perturbing a single coefficient must break at least one membership
  DiffPoly bad = ex.chow.form;
  const auto& [mono, c] = *bad.terms().begin();
  bad += DiffPoly::monomial(bad.ctx(), mono, Q(1));
  CharsetRepReport broken =
      verify_charset_representation(ex.chow, ex.charset, ex.ranking, bad);
  CHECK_FALSE(broken.all);
}

TEST_CASE("constant variety representation") {
  Ctx c1 = make_context(2, {"y1"});
  Ranking r = Ranking::orderly(c1);
  AutoreducedSet a = AutoreducedSet::make(
      {v(c1, 0, {0, 0}) - DiffPoly::constant(c1, Q(2))}, r);
  ChowFormResult chow = compute_chow_form(a, r, c1);
  CharsetRepReport rep = verify_charset_representation(chow, a, r);
  REQUIRE(rep.member.size() == 1);
  CHECK(rep.member[0]);
}

TEST_CASE("degree bounds") {
  DegreeBounds db = degree_bounds(2, 0, 1, 4, 2);
  CHECK(db.lower == Q(4, 3));
  CHECK(db.upper == pow_z(Z(8), 13));

  SECTION("s = 0 lower bound is r itself") {
    DegreeBounds b = degree_bounds(3, 2, 0, 5, 2);
    CHECK(b.lower == Q(5));
  }
  SECTION("the all-ones corner") {
    DegreeBounds b = degree_bounds(1, 0, 0, 1, 1);
    CHECK(b.lower == Q(1));
    CHECK(b.upper == 1);
  }
  SECTION("upper bound is monotone in each argument") {
    Z base = degree_bounds(2, 0, 1, 4, 2).upper;
    CHECK(degree_bounds(3, 0, 1, 4, 2).upper >= base);
    CHECK(degree_bounds(2, 1, 1, 4, 2).upper >= base);
    CHECK(degree_bounds(2, 0, 2, 4, 2).upper >= base);
    CHECK(degree_bounds(2, 0, 1, 5, 2).upper >= base);
    CHECK(degree_bounds(2, 0, 1, 4, 3).upper >= base);
  }
  SECTION("r = 0 violates the precondition") {
    CHECK_THROWS_AS(degree_bounds(1, 0, 0, 0, 1), math_error);
  }
}
