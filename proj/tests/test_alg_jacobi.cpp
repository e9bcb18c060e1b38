#include "doctest.h"

#include "jacobi/alg_jacobi.hpp"

using namespace jacobi;

namespace {

Expr sym(const char* s) { return Expr::symbol(s); }

bool all_zero(const std::vector<ExprMat>& cube) {
  for (const auto& m : cube)
    for (const auto& row : m)
      for (const Expr& e : row)
        if (!normalize(e).is_literal_zero()) return false;
  return true;
}

bool all_zero(const ExprMat& m) {
  for (const auto& row : m)
    for (const Expr& e : row)
      if (!normalize(e).is_literal_zero()) return false;
  return true;
}

AlgJacobiStructure iii_worked_family() {
  // the symbolic solution family on III used by the worked classification
  AlgJacobiStructure j = AlgJacobiStructure::make(3);
  j.set_lambda(0, 1, sym("l12"));
  j.set_lambda(0, 2, sym("l13"));
  j.set_lambda(1, 2, sym("l23"));
  j.reeb[1] = normalize(sym("l12") - sym("l13"));
  j.reeb[2] = normalize(sym("l13") - sym("l12"));
  return j;
}

}  // namespace

TEST_CASE("table catalog has the published row counts") {
  const std::map<std::string, int> expected{{"A1", 1}, {"A2", 2}, {"I", 3},   {"II", 2},
                                            {"III", 3}, {"IV", 4}, {"V", 3},  {"VI0", 4},
                                            {"VIa", 5}, {"VII0", 3}, {"VIIa", 2}};
  std::map<std::string, int> got;
  int extra_classes = 0;
  for (const FamilyRecord& fr : jacobi_table()) {
    ++got[fr.algebra];
    REQUIRE(!fr.classes.empty());
    extra_classes += static_cast<int>(fr.classes.size()) - 1;
  }
  CHECK(got == expected);
  CHECK(extra_classes == 3);  // III.2b, III.3b, IV.2b
}

TEST_CASE("residuals vanish on the III solution family") {
  const LieAlgebra& l = find_algebra("III");
  AlgJacobiStructure j = iii_worked_family();
  CHECK(all_zero(residual_bivector(l, j)));
  CHECK(all_zero(residual_reeb(l, j)));
}

TEST_CASE("abelian algebra: any constant structure with E = 0 is a solution") {
  const LieAlgebra& l = find_algebra("I");
  AlgJacobiStructure j = AlgJacobiStructure::make(3);
  j.set_lambda(0, 1, Expr::integer(7));
  j.set_lambda(0, 2, Expr::rational(rat(-3, 2)));
  j.set_lambda(1, 2, Expr::integer(1));
  CHECK(all_zero(residual_bivector(l, j)));
  CHECK(all_zero(residual_reeb(l, j)));
}

TEST_CASE("II: the L23/E1 pencil is a solution") {
  const LieAlgebra& l = find_algebra("II");
  AlgJacobiStructure j = AlgJacobiStructure::make(3);
  j.set_lambda(1, 2, sym("l23"));
  j.reeb[0] = sym("l23");
  CHECK(all_zero(residual_bivector(l, j)));
  CHECK(all_zero(residual_reeb(l, j)));
}

TEST_CASE("reeb residual flags a corrupted Reeb vector") {
  const LieAlgebra& l = find_algebra("III");
  AlgJacobiStructure j = iii_worked_family();
  j.reeb[0] = Expr::integer(1);  // inject E^1 = 1
  ExprMat r = residual_reeb(l, j);
  bool nonzero = false;
  for (const auto& row : r)
    for (const Expr& e : row)
      if (!is_zero(e).zero) nonzero = true;
  CHECK(nonzero);
}

TEST_CASE("residual scaling: quadratic in the pair (Lambda, E)") {
  const LieAlgebra& l = find_algebra("III");
  AlgJacobiStructure j = iii_worked_family();
  Rational s = rat(3, 2);
  AlgJacobiStructure js = AlgJacobiStructure::make(3);
  for (int i = 0; i < 3; ++i)
    for (int k = i + 1; k < 3; ++k) js.set_lambda(i, k, s * j.lambda[i][k]);
  for (int i = 0; i < 3; ++i) js.reeb[i] = normalize(s * j.reeb[i]);
  auto r1 = residual_bivector(l, j);
  auto rs = residual_bivector(l, js);
  Rational s2 = s * s;
  for (int f = 0; f < 3; ++f)
    for (int h = 0; h < 3; ++h)
      for (int e = 0; e < 3; ++e)
        CHECK(normalize(rs[f][h][e] - s2 * r1[f][h][e]).is_literal_zero());
}

TEST_CASE("residual scaling: E-linearity on an abelian algebra") {
  const LieAlgebra& l = find_algebra("I");
  AlgJacobiStructure j = AlgJacobiStructure::make(3);
  j.set_lambda(0, 1, sym("l12"));
  j.reeb[2] = sym("e3");
  AlgJacobiStructure js = j;
  js.reeb[2] = normalize(Expr::integer(5) * sym("e3"));
  auto r1 = residual_bivector(l, j);
  auto r5 = residual_bivector(l, js);
  for (int f = 0; f < 3; ++f)
    for (int h = 0; h < 3; ++h)
      for (int e = 0; e < 3; ++e)
        CHECK(normalize(r5[f][h][e] - Expr::integer(5) * r1[f][h][e]).is_literal_zero());
}

TEST_CASE("verify_family covers every published row exactly") {
  for (const FamilyRecord& fr : jacobi_table()) {
    CAPTURE(fr.label());
    const LieAlgebra& l = find_algebra(fr.algebra);
    VerifyReport rep = verify_family(l, fr.family);
    CHECK(rep.ok);
    CHECK(rep.worst_tier == ZeroTier::Exact);
    for (const ClassRep& c : fr.classes) {
      VerifyReport crep = verify_family(l, c.rep);
      CAPTURE(c.id);
      CHECK(crep.ok);
      CHECK(crep.worst_tier == ZeroTier::Exact);
    }
  }
}

TEST_CASE("transform by the identity is the identity") {
  AlgJacobiStructure j = iii_worked_family();
  AlgJacobiStructure t = transform(j, mat_identity(3));
  CHECK(mat_equal(t.lambda, j.lambda).zero);
  for (int i = 0; i < 3; ++i) CHECK(is_zero(t.reeb[i] - j.reeb[i]).zero);
}

TEST_CASE("transform rejects singular matrices") {
  AlgJacobiStructure j = iii_worked_family();
  CHECK_THROWS_AS(transform(j, mat_zero(3)), SingularMatrix);
}

TEST_CASE("transform respects composition and inversion") {
  Rng rng(101);
  const LieAlgebra& l = find_algebra("III");
  AutomorphismFamily fam = automorphism_family(l);
  AlgJacobiStructure j = find_class("III", "2a");
  for (int k = 0; k < 5; ++k) {
    ExprMat a = fam.random_instance(rng, 0);
    ExprMat b = fam.random_instance(rng, 0);
    AlgJacobiStructure lhs = transform(j, mat_mul(a, b));
    AlgJacobiStructure rhs = transform(transform(j, a), b);
    CHECK(mat_equal(lhs.lambda, rhs.lambda).zero);
    for (int i = 0; i < 3; ++i) CHECK(is_zero(lhs.reeb[i] - rhs.reeb[i]).zero);
    AlgJacobiStructure back = transform(transform(j, a), mat_inverse(a));
    CHECK(mat_equal(back.lambda, j.lambda).zero);
    for (int i = 0; i < 3; ++i) CHECK(is_zero(back.reeb[i] - j.reeb[i]).zero);
  }
}

TEST_CASE("solutions stay solutions under automorphism transport") {
  Rng rng(55);
  const LieAlgebra& l = find_algebra("III");
  AutomorphismFamily fam = automorphism_family(l);
  for (int k = 0; k < 5; ++k) {
    std::map<std::string, Rational> vals{{"l12", rng.rational_point(4, 3)},
                                         {"l13", rng.rational_point(4, 3)},
                                         {"l23", rng.rational_point(4, 3)}};
    AlgJacobiStructure j = iii_worked_family().substituted(vals);
    AlgJacobiStructure t = transform(j, fam.random_instance(rng, 0));
    CHECK(verify_family(l, t).ok);
  }
}

TEST_CASE("equivalence: identical structures give the identity witness") {
  Rng rng(1);
  AlgJacobiStructure j = find_class("III", "2a");
  EquivalenceResult r = are_equivalent(find_algebra("III"), j, j, rng);
  REQUIRE(r.witness.has_value());
  CHECK(mat_equal(*r.witness, mat_identity(3)).zero);
}

TEST_CASE("equivalence: concrete III family instance reaches the canonical class") {
  Rng rng(2);
  std::map<std::string, Rational> vals{
      {"l12", Rational(0)}, {"l13", Rational(2)}, {"l23", Rational(5)}};
  AlgJacobiStructure j1 = iii_worked_family().substituted(vals);
  AlgJacobiStructure j2 = find_class("III", "2a");
  EquivalenceResult r = are_equivalent(find_algebra("III"), j1, j2, rng);
  REQUIRE(r.witness.has_value());
  AlgJacobiStructure t = transform(j2, *r.witness);
  CHECK(mat_equal(t.lambda, j1.lambda).zero);
  for (int i = 0; i < 3; ++i) CHECK(is_zero(t.reeb[i] - j1.reeb[i]).zero);
}

TEST_CASE("equivalence: the two III classes are certified distinct") {
  Rng rng(3);
  AlgJacobiStructure j1 = find_class("III", "2a");
  AlgJacobiStructure j2 = find_class("III", "2b");
  EquivalenceResult r = are_equivalent(find_algebra("III"), j1, j2, rng);
  CHECK_FALSE(r.witness.has_value());
  CHECK(r.exhaustive);
}

TEST_CASE("equivalence requires concrete structures") {
  Rng rng(4);
  AlgJacobiStructure j = iii_worked_family();
  CHECK_THROWS_AS(are_equivalent(find_algebra("III"), j, j, rng), std::invalid_argument);
}

TEST_CASE("solver recovers the concrete III instances once enough is bound") {
  const LieAlgebra& l = find_algebra("III");
  AlgJacobiStructure j = AlgJacobiStructure::make(3);
  j.set_lambda(0, 1, Expr::integer(0));
  j.set_lambda(0, 2, sym("l13"));
  j.set_lambda(1, 2, Expr::integer(0));
  j.reeb[1] = Expr::integer(-1);
  j.reeb[2] = Expr::integer(1);
  std::vector<Expr> eqs;
  for (const ExprMat& m : residual_bivector(l, j))
    for (const auto& row : m)
      for (const Expr& e : row)
        if (!e.is_literal_zero()) eqs.push_back(e);
  for (const auto& row : residual_reeb(l, j))
    for (const Expr& e : row)
      if (!e.is_literal_zero()) eqs.push_back(e);
  SolveResult r = solve_determined(eqs, {"l13"});
  REQUIRE(r.solutions.size() == 2);
  CHECK(r.solutions[0].values.at("l13") == AlgValue(Rational(0)));
  CHECK(r.solutions[1].values.at("l13") == AlgValue(Rational(1)));
  // every root re-substitutes to an exactly solving structure
  for (const Solution& s : r.solutions) {
    AlgJacobiStructure inst =
        j.substituted(std::map<std::string, Rational>{{"l13", s.values.at("l13").a}});
    CHECK(verify_family(l, inst).ok);
  }
}

TEST_CASE("III row 1: the stored Reeb reading solves, the misprinted one does not") {
  const LieAlgebra& l = find_algebra("III");
  const FamilyRecord& row1 = find_family("III", 1);
  CHECK(verify_family(l, row1.family).ok);
  // moving the e3 term onto the x1 component (as the source table prints it)
  // breaks both residual systems
  AlgJacobiStructure misprint = row1.family;
  misprint.reeb[0] = normalize(misprint.reeb[0] - sym("e3"));
  misprint.reeb[2] = Expr::integer(0);
  CHECK_FALSE(verify_family(l, misprint).ok);
}

TEST_CASE("III family degenerates to a Poisson structure on l12 = l13") {
  AlgJacobiStructure j =
      iii_worked_family().substituted(std::map<std::string, Expr>{{"l12", sym("l13")}});
  for (const Expr& e : j.reeb) CHECK(normalize(e).is_literal_zero());
  CHECK(verify_family(find_algebra("III"), j).ok);
}

TEST_CASE("distinct class representatives are certified non-equivalent") {
  Rng rng(8);
  EquivalenceResult r34 = are_equivalent(find_algebra("III"), find_class("III", "3a"),
                                         find_class("III", "3b"), rng);
  CHECK_FALSE(r34.witness.has_value());
  CHECK(r34.exhaustive);
  EquivalenceResult riv = are_equivalent(find_algebra("IV"), find_class("IV", "2a"),
                                         find_class("IV", "2b"), rng);
  CHECK_FALSE(riv.witness.has_value());
  CHECK(riv.exhaustive);
}

TEST_CASE("equivalence on constraint-only groups: identity works, search is inexhaustive") {
  Rng rng(5);
  const LieAlgebra& viii = find_algebra("VIII");
  AlgJacobiStructure j = AlgJacobiStructure::make(3);  // the zero structure solves trivially
  EquivalenceResult same = are_equivalent(viii, j, j, rng);
  REQUIRE(same.witness.has_value());

  AlgJacobiStructure k = AlgJacobiStructure::make(3);
  k.reeb[0] = Expr::integer(1);  // not reachable from zero by any transform
  EquivalenceResult diff = are_equivalent(viii, k, j, rng);
  CHECK_FALSE(diff.witness.has_value());
  CHECK_FALSE(diff.exhaustive);
  CHECK(diff.note.find("SL(2,R)") != std::string::npos);
}

TEST_CASE("tables omit VIII and IX: their row lists are empty, unknown names throw") {
  CHECK(jacobi_table_for("VIII").empty());
  CHECK(jacobi_table_for("IX").empty());
  CHECK_THROWS_AS(jacobi_table_for("Nope"), UnknownAlgebra);
}

TEST_CASE("grid enumeration matches the published families") {
  std::vector<Rational> grid{Rational(-1), Rational(0), Rational(1)};
  GridReport a2 = grid_enumerate(find_algebra("A2"), grid);
  CHECK(a2.candidates == 27);
  CHECK(a2.all_matched());
  GridReport i = grid_enumerate(find_algebra("I"), {Rational(0), Rational(1)});
  CHECK(i.all_matched());
  CHECK_THROWS_AS(grid_enumerate(find_algebra("VIa"), grid), UnsupportedAlgebra);
}
