#include "doctest.h"

#include "jacobi/hamsys.hpp"

using namespace jacobi;

namespace {

Expr sym(const char* s) { return Expr::symbol(s); }

GroupJacobiStructure structure_of(int n) {
  const ExampleSpec& spec = example_catalog(n);
  return lift_to_group(find_class(spec.group, spec.rowid), vielbein_catalog(spec.group));
}

RatExpr random_poly2(Rng& rng, int dim) {
  const char* xs[] = {"x1", "x2", "x3"};
  std::vector<Expr> terms{Expr::rational(rng.rational_point(3, 2))};
  for (int i = 0; i < 2; ++i) {
    Expr t = Expr::rational(rng.nonzero_rational(3, 2)) * sym(xs[rng.uniform(0, dim - 1)]);
    if (rng.uniform(0, 1)) t = t * sym(xs[rng.uniform(0, dim - 1)]);
    terms.push_back(t);
  }
  return RatExpr::make(normalize(Expr::sum(terms)));
}

}  // namespace

TEST_CASE("hamiltonian_vf: A2 structure reproduces the printed field") {
  GroupJacobiStructure jg = structure_of(1);
  VectorField x = hamiltonian_vf(jg, RatExpr::make(sym("x2")));
  Expr expected = normalize((sym("x2") - sym("l12")) * Expr::apply(Func1::Exp, sym("x2")));
  CHECK(ratexpr_equal(x.comp[0], RatExpr::make(expected)).zero);
  CHECK(x.comp[1].zero());
}

TEST_CASE("hamiltonian_vf: zero Hamiltonian gives the zero field") {
  GroupJacobiStructure jg = structure_of(3);
  VectorField x = hamiltonian_vf(jg, RatExpr::make(Expr::integer(0)));
  for (const RatExpr& c : x.comp) CHECK(c.zero());
}

TEST_CASE("hamiltonian_vf: constant Hamiltonian on III gives the Reeb flow") {
  GroupJacobiStructure jg = structure_of(3);
  VectorField x = hamiltonian_vf(jg, RatExpr::make(Expr::integer(1)));
  CHECK(x.comp[0].zero());
  CHECK(ratexpr_equal(x.comp[1], RatExpr::make(Expr::integer(-1))).zero);
  CHECK(ratexpr_equal(x.comp[2], RatExpr::make(Expr::integer(1))).zero);
}

TEST_CASE("jacobi_bracket: the III relations") {
  GroupJacobiStructure jg = structure_of(3);
  RatExpr f2 = RatExpr::make(sym("x1"));
  RatExpr f3 = RatExpr::make(sym("x1") + sym("x2") + sym("x3"));
  RatExpr b = jacobi_bracket(jg, f2, f3);
  CHECK(ratexpr_equal(b, RatExpr::make(Expr::integer(1))).zero);
}

TEST_CASE("jacobi_bracket is antisymmetric, {f,f} = 0") {
  Rng rng(9);
  GroupJacobiStructure jg = structure_of(3);
  for (int k = 0; k < 10; ++k) {
    RatExpr f = random_poly2(rng, 3), g = random_poly2(rng, 3);
    RatExpr fg = jacobi_bracket(jg, f, g);
    RatExpr gf = jacobi_bracket(jg, g, f);
    CHECK((fg + gf).zero());
    CHECK(jacobi_bracket(jg, f, f).zero());
  }
}

TEST_CASE("conformal Leibniz identity holds exactly") {
  Rng rng(19);
  GroupJacobiStructure jg = structure_of(4);
  for (int k = 0; k < 8; ++k) {
    RatExpr f = random_poly2(rng, 3), g = random_poly2(rng, 3), h = random_poly2(rng, 3);
    RatExpr lhs = jacobi_bracket(jg, f, g * h) - g * jacobi_bracket(jg, f, h) -
                  h * jacobi_bracket(jg, f, g) + g * h * jacobi_bracket(jg, f, RatExpr::make(Expr::integer(1)));
    CHECK(lhs.zero());
  }
}

TEST_CASE("{f,1} is minus the Reeb derivative") {
  Rng rng(21);
  GroupJacobiStructure jg = structure_of(3);
  for (int k = 0; k < 5; ++k) {
    RatExpr f = random_poly2(rng, 3);
    RatExpr lhs = jacobi_bracket(jg, f, RatExpr::make(Expr::integer(1)));
    RatExpr rhs;
    const char* xs[] = {"x1", "x2", "x3"};
    for (int mu = 0; mu < 3; ++mu)
      rhs = rhs + RatExpr::make(jg.reeb[mu]) * rat_diff(f, xs[mu]);
    CHECK((lhs + rhs).zero());
  }
}

TEST_CASE("commutator: coordinate fields") {
  VectorField a = VectorField::make(3);
  a.comp[0] = RatExpr::make(Expr::integer(1));  // d/dx1
  VectorField b = VectorField::make(3);
  b.comp[1] = RatExpr::make(sym("x1"));  // x1 d/dx2
  VectorField c = commutator(a, b);
  CHECK(c.comp[0].zero());
  CHECK(ratexpr_equal(c.comp[1], RatExpr::make(Expr::integer(1))).zero);
  CHECK(c.comp[2].zero());
}

TEST_CASE("commutator: worked example fields") {
  const ExampleSpec& e3 = example_catalog(3);
  GroupJacobiStructure jg = structure_of(3);
  std::vector<VectorField> x;
  for (const RatExpr& f : e3.hams) x.push_back(hamiltonian_vf(jg, f));
  VectorField c23 = commutator(x[1], x[2]);
  for (int mu = 0; mu < 3; ++mu) CHECK(ratexpr_equal(c23.comp[mu], x[0].comp[mu]).zero);

  const ExampleSpec& e4 = example_catalog(4);
  GroupJacobiStructure jg4 = structure_of(4);
  std::vector<VectorField> y;
  for (const RatExpr& f : e4.hams) y.push_back(hamiltonian_vf(jg4, f));
  VectorField c12 = commutator(y[0], y[1]);
  for (int mu = 0; mu < 3; ++mu) {
    RatExpr want = RatExpr::make(Expr::integer(-1)) * y[1].comp[mu] + y[2].comp[mu];
    CHECK(ratexpr_equal(c12.comp[mu], want).zero);
  }
}

TEST_CASE("closure_check: A2 example closes with the A2 constants") {
  Rng rng(33);
  GroupJacobiStructure jg = structure_of(1);
  const ExampleSpec& spec = example_catalog(1);
  std::vector<VectorField> x;
  for (const RatExpr& f : spec.hams) x.push_back(hamiltonian_vf(jg, f));
  LieSystemReport rep = closure_check(x, rng);
  REQUIRE(rep.closed);
  CHECK(rep.matched_algebra == "A2");
  REQUIRE(rep.table.size() == 1);
  CHECK(rep.table[0].coeffs == std::vector<Rational>{Rational(1), Rational(0)});
}

TEST_CASE("closure_check: rejects a non-closing pair") {
  Rng rng(35);
  VectorField a = VectorField::make(1);
  a.comp[0] = RatExpr::make(Expr::integer(1));
  VectorField b = VectorField::make(1);
  b.comp[0] = RatExpr::make(sym("x1") * sym("x1"));
  LieSystemReport rep = closure_check({a, b}, rng);
  CHECK_FALSE(rep.closed);
}

TEST_CASE("closure_check: dependent generators are detected and certified") {
  Rng rng(37);
  VectorField a = VectorField::make(2);
  a.comp[0] = RatExpr::make(sym("x1"));
  a.comp[1] = RatExpr::make(Expr::integer(1));
  VectorField b = VectorField::make(2);
  b.comp[0] = RatExpr::make(Expr::integer(-2) * sym("x1"));
  b.comp[1] = RatExpr::make(Expr::integer(-2));
  CHECK_THROWS_AS(closure_check({a, b}, rng), DependentGenerators);
}

TEST_CASE("hamiltonian_of finds the matching candidate") {
  GroupJacobiStructure jg = structure_of(2);
  const ExampleSpec& spec = example_catalog(2);
  VectorField x2 = hamiltonian_vf(jg, spec.hams[1]);
  auto f = hamiltonian_of(jg, x2, {RatExpr::make(sym("x1")), spec.hams[1]});
  REQUIRE(f.has_value());
  CHECK(ratexpr_equal(*f, spec.hams[1]).zero);

  VectorField zero = VectorField::make(3);
  auto z = hamiltonian_of(jg, zero, {RatExpr::make(Expr::integer(0))});
  REQUIRE(z.has_value());
  CHECK(z->zero());

  GroupJacobiStructure jg5 = structure_of(5);
  const ExampleSpec& s5 = example_catalog(5);
  VectorField x3 = hamiltonian_vf(jg5, s5.hams[2]);
  auto f3 = hamiltonian_of(jg5, x3, {s5.hams[2]});
  CHECK(f3.has_value());
}

TEST_CASE("morphism property on the A2 structure") {
  Rng rng(41);
  GroupJacobiStructure jg = structure_of(1);
  ZeroOptions opt;
  Evaluator ev(256);
  Rational tol(Integer(1), Integer(1000000000));
  for (int k = 0; k < 3; ++k) {
    RatExpr f = random_poly2(rng, 2), g = random_poly2(rng, 2);
    VectorField lhs = commutator(hamiltonian_vf(jg, f), hamiltonian_vf(jg, g));
    VectorField rhs = hamiltonian_vf(jg, jacobi_bracket(jg, f, g));
    std::vector<VectorField> both{lhs, rhs};
    for (int p = 0; p < 10; ++p) {
      Assignment a;
      for (const char* s : {"x1", "x2", "l12"}) a.emplace(s, rng.rational_point(5, 5));
      try {
        for (int mu = 0; mu < 2; ++mu) {
          Interval ln = ev.eval(lhs.comp[mu].num, a), ld = ev.eval(lhs.comp[mu].den, a);
          Interval rn = ev.eval(rhs.comp[mu].num, a), rd = ev.eval(rhs.comp[mu].den, a);
          if (ld.contains_zero() || rd.contains_zero()) throw EvalDomainError("pole");
          Rational lv = ln.mid() / ld.mid(), rv = rn.mid() / rd.mid();
          Rational scale = std::max(Rational(1), std::max(rat_abs(lv), rat_abs(rv)));
          CHECK(rat_abs(lv - rv) / scale < tol);
        }
      } catch (const EvalDomainError&) {
        continue;
      }
    }
  }
}

TEST_CASE("morphism property holds exactly on a polynomial structure") {
  Rng rng(43);
  GroupJacobiStructure jg = structure_of(3);  // polynomial entries only
  for (int k = 0; k < 5; ++k) {
    RatExpr f = random_poly2(rng, 3), g = random_poly2(rng, 3);
    VectorField lhs = commutator(hamiltonian_vf(jg, f), hamiltonian_vf(jg, g));
    VectorField rhs = hamiltonian_vf(jg, jacobi_bracket(jg, f, g));
    for (int mu = 0; mu < 3; ++mu) {
      ZeroResult z = ratexpr_equal(lhs.comp[mu], rhs.comp[mu]);
      CHECK(z.zero);
      CHECK(z.tier == ZeroTier::Exact);
    }
  }
}

TEST_CASE("verify_example: full reports for the worked systems") {
  Rng rng(0);
  Report r3 = verify_example(3, rng);
  CHECK(r3.ok());
  bool dependent_checked = false;
  for (const Check& c : r3.checks)
    if (c.name.find("cannot form a basis") != std::string::npos) {
      dependent_checked = true;
      CHECK(c.verdict == Verdict::Pass);
    }
  CHECK(dependent_checked);

  Report r1 = verify_example(1, rng);
  CHECK(r1.ok());
  CHECK(r1.count(Verdict::Discrepancy) == 0);
}

TEST_CASE("RatExpr parsing and printing") {
  RatExpr f = RatExpr::parse("x1*x2/(exp(x2)*(x2-l12))");
  CHECK(ratexpr_equal(f, example_catalog(1).hams[1]).zero);
  RatExpr back = RatExpr::parse(f.str());
  CHECK(ratexpr_equal(back, f).zero);
  CHECK_THROWS_AS(RatExpr::parse("1/0"), std::domain_error);
}

TEST_CASE("examples are numbered 1..6") {
  CHECK_THROWS_AS(example_catalog(0), std::out_of_range);
  CHECK_THROWS_AS(example_catalog(7), std::out_of_range);
  for (int n = 1; n <= 6; ++n) CHECK(example_catalog(n).n == n);
}
