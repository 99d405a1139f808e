#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "hyperindex/lp.hpp"

using namespace hyperindex;

namespace {

Rational q(long p, long d = 1) { return make_rational(p, d); }

}  // namespace

TEST_CASE("rational parsing and printing") {
  CHECK(parse_rational("3/6").value() == q(1, 2));
  CHECK(parse_rational("-4/6")->get_str() == "-2/3");
  CHECK(parse_rational("7").value() == 7);
  CHECK_FALSE(parse_rational("1/0").has_value());
  CHECK_FALSE(parse_rational("1.5").has_value());
  CHECK_FALSE(parse_rational("").has_value());
  CHECK(to_string(q(9, 10)) == "9/10");
}

TEST_CASE("determinant and rank") {
  Mat m{{q(2), q(1)}, {q(1), q(3)}};
  CHECK(determinant(m) == 5);
  CHECK(rank(Mat{{q(1), q(2)}, {q(2), q(4)}}) == 1);
  auto x = solve(m, Vec{q(3), q(4)});
  REQUIRE(x);
  CHECK((*x)[0] == 1);
  CHECK((*x)[1] == 1);
}

TEST_CASE("lp_solve: single variable box") {
  LinearProgram lp(1);
  lp.objective = {q(1)};
  lp.add({q(1)}, Sense::kLe, 1);
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == 1);
  CHECK(r.point == Vec{q(1)});
}

TEST_CASE("lp_solve: simplex face") {
  LinearProgram lp(2);
  lp.objective = {q(1), q(1)};
  lp.add({q(1), q(1)}, Sense::kLe, 1);
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == 1);
  CHECK(sum(r.point) == 1);
  CHECK((r.point[0] == 0 || r.point[1] == 0));
}

TEST_CASE("lp_solve: indifference bound") {
  LinearProgram lp(1);
  lp.objective = {q(3)};
  lp.upper[0] = q(1);
  lp.add({q(3)}, Sense::kLe, 2);
  LpResult r = lp_solve(lp);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == 2);
  CHECK(r.point == Vec{q(2, 3)});
}

TEST_CASE("lp_solve: infeasible, unbounded, free variables, equalities") {
  LinearProgram bad(1);
  bad.add({q(1)}, Sense::kGe, 2);
  bad.add({q(1)}, Sense::kLe, 1);
  CHECK(lp_solve(bad).status == LpStatus::kInfeasible);

  LinearProgram open(2);
  open.objective = {q(1), q(0)};
  open.add({q(1), q(-1)}, Sense::kLe, 1);
  CHECK(lp_solve(open).status == LpStatus::kUnbounded);

  LinearProgram free(1);
  free.lower[0] = std::nullopt;
  free.objective = {q(-1)};
  free.add({q(2)}, Sense::kGe, -5);
  LpResult r = lp_solve(free);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.point[0] == q(-5, 2));

  LinearProgram eq(3);
  eq.objective = {q(1), q(2), q(3)};
  eq.add({q(1), q(1), q(1)}, Sense::kEq, 1);
  eq.add({q(1), q(-1), q(0)}, Sense::kEq, 0);
  eq.add({q(1), q(1), q(1)}, Sense::kEq, 1);
  r = lp_solve(eq);
  REQUIRE(r.status == LpStatus::kOptimal);
  CHECK(r.value == 3);
}

TEST_CASE("lp_solve: random programs are feasible and deterministic") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-5, 9);
  for (int trial = 0; trial < 60; ++trial) {
    LinearProgram lp(4);
    for (auto& c : lp.objective) c = coef(rng);
    for (int r = 0; r < 5; ++r) {
      Vec row(4);
      for (auto& x : row) x = make_rational(coef(rng), 1 + trial % 3);
      int kind = r % 3;
      lp.add(row, kind == 0 ? Sense::kLe : kind == 1 ? Sense::kGe : Sense::kLe,
             make_rational(coef(rng) + 5, 2));
    }
    lp.upper[1] = q(3);
    lp.lower[2] = q(-2);
    LpResult a = lp_solve(lp), b = lp_solve(lp);
    CHECK(a.status == b.status);
    if (a.status == LpStatus::kOptimal) {
      CHECK(lp_feasible_point(lp, a.point));
      CHECK(a.point == b.point);
      CHECK(a.value == dot(lp.objective, a.point));
      LinearProgram probe = lp;
      probe.add(lp.objective, Sense::kGe, a.value + q(1, 1000));
      CHECK(lp_solve(probe).status == LpStatus::kInfeasible);
    }
  }
}

TEST_CASE("in_convex_hull") {
  Mat gens{{q(1), q(0)}, {q(0), q(1)}};
  auto r = in_convex_hull({q(1), q(0)}, gens);
  REQUIRE(r.inside);
  CHECK(r.weights == Vec{q(1), q(0)});
  r = in_convex_hull({q(1, 2), q(1, 2)}, gens);
  REQUIRE(r.inside);
  CHECK(r.weights == Vec{q(1, 2), q(1, 2)});
  CHECK_FALSE(in_convex_hull({q(1), q(1)}, gens).inside);
  CHECK_THROWS_AS(in_convex_hull({q(1)}, gens), std::invalid_argument);

  // Payoff-pair rows (player 1 vs l, r; player 2 vs l, r).
  Vec out{q(2), q(2), q(2), q(2)}, in_l{q(3), q(0), q(1), q(0)};
  Vec x{q(9, 4), q(3, 2), q(7, 4), q(3, 2)};
  r = in_convex_hull(x, {out, in_l});
  REQUIRE(r.inside);
  CHECK(r.weights == Vec{q(3, 4), q(1, 4)});
  CHECK_FALSE(in_convex_hull({q(9, 4), q(3, 2), q(7, 4), q(7, 4)}, {out, in_l})
                  .inside);
}

TEST_CASE("polytope_dimension") {
  InequalityPolytope simplex{3, {}};
  auto d = polytope_dimension(simplex);
  CHECK(d.kind == DimensionResult::kFullDimensional);
  CHECK(simplex.contains(d.interior_point));

  InequalityPolytope k{2, {{{q(3), q(0)}, q(2), StrictSense::kLe}}};
  d = polytope_dimension(k);
  REQUIRE(d.kind == DimensionResult::kFullDimensional);
  // Any point with 0 < beta_l < 2/3 certifies full dimension.
  CHECK(d.interior_point[0] > 0);
  CHECK(3 * d.interior_point[0] < 2);
  CHECK(d.interior_point[1] > 0);

  InequalityPolytope point{2,
                           {{{q(1), q(0)}, q(0), StrictSense::kLe},
                            {{q(-1), q(0)}, q(0), StrictSense::kLe}}};
  d = polytope_dimension(point);
  CHECK(d.kind == DimensionResult::kDimension);
  CHECK(d.dimension == 0);

  InequalityPolytope empty{2, {{{q(1), q(1)}, q(1, 2), StrictSense::kLe}}};
  CHECK(polytope_dimension(empty).kind == DimensionResult::kEmpty);

  InequalityPolytope strict_empty{2, {{{q(1), q(0)}, q(0), StrictSense::kLt}}};
  CHECK(polytope_dimension(strict_empty).kind == DimensionResult::kEmpty);

  InequalityPolytope edge{3, {{{q(0), q(0), q(1)}, q(0), StrictSense::kLe}}};
  d = polytope_dimension(edge);
  CHECK(d.kind == DimensionResult::kDimension);
  CHECK(d.dimension == 1);
}

TEST_CASE("hull distance") {
  Mat a{{q(0), q(0)}}, b{{q(1), q(3)}, {q(3), q(1)}};
  CHECK(hull_distance_linf(a, b) == 2);
  CHECK(hull_distance_linf(b, b) == 0);
}
