#include "doctest.h"

#include "jacobi/lie_algebra.hpp"

using namespace jacobi;

namespace {

Rational fval(const LieAlgebra& l, int a, int b, int c) {
  Expr e = normalize(l.f(a - 1, b - 1, c - 1));
  REQUIRE(e.is_rational());
  return e.value();
}

}  // namespace

TEST_CASE("catalog holds the thirteen algebras") {
  const auto& cat = algebra_catalog();
  REQUIRE(cat.size() == 13);
  CHECK(cat.front().name() == "A1");
  CHECK(cat.back().name() == "IX");
}

TEST_CASE("catalog constants: III") {
  const LieAlgebra& l = find_algebra("III");
  CHECK(fval(l, 1, 2, 2) == -1);
  CHECK(fval(l, 1, 2, 3) == -1);
  CHECK(fval(l, 1, 3, 2) == -1);
  CHECK(fval(l, 1, 3, 3) == -1);
  CHECK(fval(l, 2, 3, 1) == 0);
}

TEST_CASE("catalog constants: A1 abelian, IX rotation algebra") {
  const LieAlgebra& a1 = find_algebra("A1");
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) CHECK(normalize(a1.f(a, b, c)).is_literal_zero());
  const LieAlgebra& ix = find_algebra("IX");
  CHECK(fval(ix, 2, 3, 1) == 1);
  CHECK(fval(ix, 1, 3, 2) == -1);
  CHECK(fval(ix, 1, 2, 3) == 1);
}

TEST_CASE("unknown algebra throws") { CHECK_THROWS_AS(find_algebra("X"), UnknownAlgebra); }

TEST_CASE("check_structure passes the whole catalog") {
  for (const LieAlgebra& l : algebra_catalog()) {
    CAPTURE(l.name());
    CHECK(check_structure(l).ok);
  }
}

TEST_CASE("check_structure flags a corrupted algebra") {
  // II with an extra f13^1 entry breaks the Jacobi identity oracle expansion
  std::vector<Expr> f(27, Expr::integer(0));
  auto set = [&](int a, int b, int c, long v) {
    f[((a - 1) * 3 + (b - 1)) * 3 + (c - 1)] = Expr::integer(v);
    f[((b - 1) * 3 + (a - 1)) * 3 + (c - 1)] = Expr::integer(-v);
  };
  set(2, 3, 1, 1);
  set(1, 3, 1, 1);
  set(1, 2, 2, 1);  // makes [X1,[X2,X3]] cycles inconsistent
  LieAlgebra bad("II-corrupted", 3, std::nullopt, std::move(f));
  StructureReport rep = check_structure(bad);
  CHECK_FALSE(rep.ok);
  bool has_jacobi_failure = false;
  for (const auto& fail : rep.failures)
    if (fail.what == "jacobi") has_jacobi_failure = true;
  CHECK(has_jacobi_failure);
}

TEST_CASE("adjoint matrices for III match the worked classification") {
  AdjointRep ad = adjoint(find_algebra("III"));
  ExprMat chi1{{Expr::integer(0), Expr::integer(0), Expr::integer(0)},
               {Expr::integer(0), Expr::integer(1), Expr::integer(1)},
               {Expr::integer(0), Expr::integer(1), Expr::integer(1)}};
  ExprMat chi2{{Expr::integer(0), Expr::integer(-1), Expr::integer(-1)},
               {Expr::integer(0), Expr::integer(0), Expr::integer(0)},
               {Expr::integer(0), Expr::integer(0), Expr::integer(0)}};
  CHECK(mat_equal(ad.chi[0], chi1).zero);
  CHECK(mat_equal(ad.chi[1], chi2).zero);
  CHECK(mat_equal(ad.chi[2], chi2).zero);
  ExprMat y2{{Expr::integer(0), Expr::integer(1), Expr::integer(1)},
             {Expr::integer(-1), Expr::integer(0), Expr::integer(0)},
             {Expr::integer(-1), Expr::integer(0), Expr::integer(0)}};
  for (const auto& row : ad.y[0])
    for (const Expr& e : row) CHECK(normalize(e).is_literal_zero());
  CHECK(mat_equal(ad.y[1], y2).zero);
  CHECK(mat_equal(ad.y[2], y2).zero);
}

TEST_CASE("adjoint: chi and Y store the same constants") {
  for (const LieAlgebra& l : algebra_catalog()) {
    AdjointRep ad = adjoint(l);
    for (int a = 0; a < l.dim(); ++a)
      for (int b = 0; b < l.dim(); ++b)
        for (int c = 0; c < l.dim(); ++c)
          CHECK(is_zero(ad.chi[a][b][c] - ad.y[c][a][b]).zero);
  }
}

TEST_CASE("identity is an automorphism of every algebra") {
  for (const LieAlgebra& l : algebra_catalog())
    CHECK(is_automorphism(l, mat_identity(l.dim())));
}

TEST_CASE("tabulated branch instance for III is an automorphism") {
  const LieAlgebra& l = find_algebra("III");
  AutomorphismFamily fam = automorphism_family(l);
  REQUIRE_FALSE(fam.constraint_only);
  std::map<std::string, Rational> vals{
      {"a12", Rational(0)}, {"a13", Rational(0)}, {"a22", Rational(2)}, {"a23", Rational(1)}};
  ExprMat a = mat_substitute(fam.branches[0].matrix, vals);
  CHECK(is_automorphism(l, a));
  CHECK(matrix_identities_check(l, a).ok);
}

TEST_CASE("a basis swap is not an automorphism of III") {
  ExprMat swap = mat_zero(3);
  swap[0][1] = Expr::integer(1);
  swap[1][0] = Expr::integer(1);
  swap[2][2] = Expr::integer(1);
  CHECK_FALSE(is_automorphism(find_algebra("III"), swap));
  MatrixIdentityReport rep = matrix_identities_check(find_algebra("III"), swap);
  CHECK_FALSE(rep.ok);
}

TEST_CASE("matrix identities hold for the identity on II") {
  CHECK(matrix_identities_check(find_algebra("II"), mat_identity(3)).ok);
}

TEST_CASE("random family instances satisfy the bracket-preservation identities") {
  Rng rng(17);
  for (const LieAlgebra& l : algebra_catalog()) {
    AutomorphismFamily fam = automorphism_family(l);
    if (fam.constraint_only) continue;
    LieAlgebra alg = l.has_free_param() ? l.instantiate(Rational(2)) : l;
    for (std::size_t br = 0; br < fam.branches.size(); ++br) {
      for (int k = 0; k < 50; ++k) {
        ExprMat a = fam.random_instance(rng, br);
        CAPTURE(l.name());
        CAPTURE(br);
        CAPTURE(k);
        REQUIRE(is_automorphism(alg, a));
        REQUIRE(matrix_identities_check(alg, a).ok);
      }
    }
  }
}

TEST_CASE("composition of family instances stays in the automorphism group") {
  Rng rng(29);
  for (const char* name : {"A2", "II", "III", "IV", "V", "VI0", "VII0"}) {
    const LieAlgebra& l = find_algebra(name);
    AutomorphismFamily fam = automorphism_family(l);
    ExprMat a = fam.random_instance(rng, 0);
    ExprMat b = fam.random_instance(rng, 0);
    CHECK(is_automorphism(l, mat_mul(a, b)));
  }
}

TEST_CASE("constraint-only groups refuse parametric instantiation") {
  Rng rng(1);
  AutomorphismFamily f8 = automorphism_family(find_algebra("VIII"));
  CHECK(f8.constraint_only);
  CHECK(f8.label == "SL(2,R)");
  CHECK_THROWS_AS(f8.random_instance(rng, 0), UnsupportedAlgebra);
  AutomorphismFamily f9 = automorphism_family(find_algebra("IX"));
  CHECK(f9.constraint_only);
}

TEST_CASE("Bianchi parameter instantiation guards its domain") {
  const LieAlgebra& via = find_algebra("VIa");
  CHECK(via.has_free_param());
  CHECK_THROWS_AS(via.instantiate(Rational(1)), std::domain_error);
  CHECK_THROWS_AS(via.instantiate(Rational(-2)), std::domain_error);
  LieAlgebra v2 = via.instantiate(Rational(2));
  CHECK_FALSE(v2.has_free_param());
  CHECK(check_structure(v2).ok);
}
