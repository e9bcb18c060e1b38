#include <benchmark/benchmark.h>

#include "jacobi/alg_jacobi.hpp"
#include "jacobi/group_geom.hpp"
#include "jacobi/hamsys.hpp"

using namespace jacobi;

namespace {

Expr sym(const char* s) { return Expr::symbol(s); }

AlgJacobiStructure iii_family() {
  AlgJacobiStructure j = AlgJacobiStructure::make(3);
  j.set_lambda(0, 1, sym("l12"));
  j.set_lambda(0, 2, sym("l13"));
  j.set_lambda(1, 2, sym("l23"));
  j.reeb[1] = normalize(sym("l12") - sym("l13"));
  j.reeb[2] = normalize(sym("l13") - sym("l12"));
  return j;
}

void BM_NormalizeResidualComponent(benchmark::State& state) {
  const LieAlgebra& l = find_algebra("III");
  AlgJacobiStructure j = iii_family();
  for (auto _ : state) {
    benchmark::DoNotOptimize(residual_bivector(l, j));
  }
}
BENCHMARK(BM_NormalizeResidualComponent);

void BM_VerifyFamilyIII(benchmark::State& state) {
  const LieAlgebra& l = find_algebra("III");
  AlgJacobiStructure j = iii_family();
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_family(l, j));
  }
}
BENCHMARK(BM_VerifyFamilyIII);

void BM_IsZeroNumericTier(benchmark::State& state) {
  Expr ch = Expr::apply(Func1::Cosh, sym("x3"));
  Expr sh = Expr::apply(Func1::Sinh, sym("x3"));
  Expr id = ch * ch - sh * sh - Expr::integer(1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_zero(id));
  }
}
BENCHMARK(BM_IsZeroNumericTier);

void BM_LiftAndManifoldCheck(benchmark::State& state) {
  const AlgJacobiStructure& row = find_class("VI0", "2a");
  const Vielbein& v = vielbein_catalog("VI0");
  for (auto _ : state) {
    GroupJacobiStructure g = lift_to_group(row, v);
    benchmark::DoNotOptimize(is_jacobi_manifold(g));
  }
}
BENCHMARK(BM_LiftAndManifoldCheck);

void BM_JacobiBracket(benchmark::State& state) {
  GroupJacobiStructure g =
      lift_to_group(find_class("II", "2a"), vielbein_catalog("II"));
  RatExpr f = RatExpr::parse("x2");
  RatExpr h = RatExpr::parse("(x2*x3+x1)/(2*x2^2)");
  for (auto _ : state) {
    benchmark::DoNotOptimize(jacobi_bracket(g, f, h));
  }
}
BENCHMARK(BM_JacobiBracket);

void BM_GroebnerWitnessSearch(benchmark::State& state) {
  const LieAlgebra& l = find_algebra("III");
  AlgJacobiStructure j1 = iii_family().substituted(std::map<std::string, Rational>{
      {"l12", Rational(0)}, {"l13", Rational(2)}, {"l23", Rational(5)}});
  const AlgJacobiStructure& j2 = find_class("III", "2a");
  for (auto _ : state) {
    Rng rng(7);
    benchmark::DoNotOptimize(are_equivalent(l, j1, j2, rng));
  }
}
BENCHMARK(BM_GroebnerWitnessSearch);

void BM_GridEnumerateII(benchmark::State& state) {
  const LieAlgebra& l = find_algebra("II");
  std::vector<Rational> grid{Rational(-1), Rational(0), Rational(1)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(grid_enumerate(l, grid));
  }
}
BENCHMARK(BM_GridEnumerateII);

}  // namespace

BENCHMARK_MAIN();
