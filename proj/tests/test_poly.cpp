#include "doctest.h"

#include "jacobi/poly.hpp"

using namespace jacobi;

namespace {
Expr sym(const char* s) { return Expr::symbol(s); }
}

TEST_CASE("solve_determined: quadratic with a side condition") {
  Expr x = sym("x"), y = sym("y");
  SolveResult r = solve_determined({x * x - Expr::integer(1), y - x}, {"x", "y"},
                                   {x + Expr::integer(1)});
  REQUIRE(r.solutions.size() == 1);
  CHECK(r.complete);
  CHECK(r.solutions[0].values.at("x") == AlgValue(Rational(1)));
  CHECK(r.solutions[0].values.at("y") == AlgValue(Rational(1)));
}

TEST_CASE("solve_determined: inconsistent system is empty") {
  Expr x = sym("x");
  SolveResult r = solve_determined({x - Expr::integer(1), x - Expr::integer(2)}, {"x"});
  CHECK(r.solutions.empty());
  CHECK(r.complete);
}

TEST_CASE("solve_determined: positive-dimensional ideal reports its free variables") {
  Expr x = sym("x"), y = sym("y");
  try {
    solve_determined({x * y - Expr::integer(1)}, {"x", "y"});
    FAIL("expected PositiveDimensional");
  } catch (const PositiveDimensional& e) {
    CHECK(!e.unpinned.empty());
  }
}

TEST_CASE("solve_determined: quadratic extension roots re-substitute to zero") {
  Expr x = sym("x"), y = sym("y");
  SolveResult r = solve_determined({x * x - Expr::integer(2), y - x - Expr::integer(1)},
                                   {"x", "y"});
  REQUIRE(r.solutions.size() == 2);
  for (const Solution& s : r.solutions) {
    const AlgValue& xv = s.values.at("x");
    CHECK(xv.d == 2);
    // x^2 - 2 = 0 exactly in Q(sqrt(2))
    AlgValue res = xv * xv - AlgValue(Rational(2));
    CHECK(res.is_zero());
    CHECK(s.values.at("y") == xv + AlgValue(Rational(1)));
  }
}

TEST_CASE("solve_determined: negative discriminant yields no real roots") {
  Expr x = sym("x");
  SolveResult r = solve_determined({x * x + Expr::integer(1)}, {"x"});
  CHECK(r.solutions.empty());
}

TEST_CASE("solve_determined: rejects non-polynomial input") {
  CHECK_THROWS_AS(solve_determined({Expr::apply(Func1::Exp, sym("x"))}, {"x"}), NotPolynomial);
  CHECK_THROWS_AS(solve_determined({Expr::pow(sym("x"), -1)}, {"x"}), NotPolynomial);
  CHECK_THROWS_AS(solve_determined({sym("x") + sym("z")}, {"x"}), NotPolynomial);
}

TEST_CASE("solutions are ordered deterministically, rationals first") {
  Expr x = sym("x");
  // roots 1, -1, sqrt(3), -sqrt(3)
  Expr p = (x * x - Expr::integer(1)) * (x * x - Expr::integer(3));
  SolveResult r = solve_determined({p}, {"x"});
  REQUIRE(r.solutions.size() == 4);
  CHECK(r.solutions[0].values.at("x").is_rational());
  CHECK(r.solutions[1].values.at("x").is_rational());
  CHECK_FALSE(r.solutions[2].values.at("x").is_rational());
}

TEST_CASE("groebner basis membership by normal form") {
  std::vector<std::string> vars{"x", "y"};
  Expr x = sym("x"), y = sym("y");
  std::vector<MPoly> gens{MPoly::from_expr(x * x + y * y - Expr::integer(1), vars),
                          MPoly::from_expr(x - y, vars)};
  auto gb = groebner(gens);
  CHECK(zero_dimensional(gb, 2));
}

TEST_CASE("linear solve over Q") {
  LinearSolution s = solve_linear({{Rational(1), Rational(1)}, {Rational(1), Rational(-1)}},
                                  {Rational(3), Rational(1)});
  REQUIRE(s.consistent);
  CHECK(s.particular[0] == 2);
  CHECK(s.particular[1] == 1);
  CHECK(s.nullspace.empty());

  LinearSolution t = solve_linear({{Rational(1), Rational(2)}}, {Rational(1)});
  REQUIRE(t.consistent);
  CHECK(t.nullspace.size() == 1);

  LinearSolution u = solve_linear({{Rational(0)}, {Rational(0)}}, {Rational(1), Rational(0)});
  CHECK_FALSE(u.consistent);
}

TEST_CASE("algebraic value arithmetic") {
  AlgValue a(Rational(1), Rational(2), Integer(5));  // 1 + 2 sqrt 5
  AlgValue b(Rational(3), Rational(-1), Integer(5));
  AlgValue p = a * b;  // 3 - sqrt5 + 6 sqrt5 - 2*5 = -7 + 5 sqrt5
  CHECK(p.a == -7);
  CHECK(p.b == 5);
  AlgValue q = alg_div(p, b);
  CHECK(q == a);
}
