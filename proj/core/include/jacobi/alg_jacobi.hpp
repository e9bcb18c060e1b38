#ifndef JACOBI_ALG_JACOBI_HPP
#define JACOBI_ALG_JACOBI_HPP

#include <optional>
#include <string>
#include <vector>

#include "jacobi/lie_algebra.hpp"
#include "jacobi/poly.hpp"

namespace jacobi {

struct SideCondition {
  enum class Rel { NonZero, Zero };
  Expr expr;
  Rel rel = Rel::NonZero;
  bool inferred = false;  // denominator-derived rather than printed in the table
};

/// Constant Jacobi structure on a Lie algebra: antisymmetric bivector
/// Lambda^{ab} and Reeb components E^a, entries symbolic over the family
/// parameters l12, l13, l23, e1, e2, e3 (and the Bianchi parameter).
struct AlgJacobiStructure {
  int dim = 3;
  ExprMat lambda;  // full antisymmetric matrix
  ExprVec reeb;
  std::vector<SideCondition> conditions;

  static AlgJacobiStructure make(int dim);
  void set_lambda(int i, int j, const Expr& v);  // keeps antisymmetry
  AlgJacobiStructure substituted(const std::map<std::string, Rational>& b) const;
  AlgJacobiStructure substituted(const std::map<std::string, Expr>& b) const;
  std::set<std::string> parameters() const;
};

/// One row of the solution tables: the symbolic family plus its equivalence
/// class representatives.
struct ClassRep {
  std::string id;  // "a", "b"
  AlgJacobiStructure rep;
};

struct FamilyRecord {
  std::string algebra;
  int row = 0;
  AlgJacobiStructure family;
  std::vector<ClassRep> classes;
  std::string label() const { return algebra + "." + std::to_string(row); }
};

const std::vector<FamilyRecord>& jacobi_table();
std::vector<FamilyRecord> jacobi_table_for(const std::string& algebra);
const FamilyRecord& find_family(const std::string& algebra, int row);
const AlgJacobiStructure& find_class(const std::string& algebra, const std::string& rowid);

/// Left side of the algebraic Jacobi equation that is quadratic in Lambda,
/// indexed [f][h][e].
std::vector<ExprMat> residual_bivector(const LieAlgebra& l, const AlgJacobiStructure& j);

/// Left side of the algebraic compatibility equation between E and Lambda,
/// indexed [d][e].
ExprMat residual_reeb(const LieAlgebra& l, const AlgJacobiStructure& j);

struct VerifyReport {
  bool ok = true;
  ZeroTier worst_tier = ZeroTier::Exact;
  std::vector<std::string> nonzero_components;  // rendered residuals
};

/// Both residual families vanish identically in the free parameters.
VerifyReport verify_family(const LieAlgebra& l, const AlgJacobiStructure& j);

/// (Lambda, E) -> (A^t Lambda A, E A): maps a structure along an
/// automorphism; takes solutions to solutions. Throws SingularMatrix when
/// det(A) is identically zero.
AlgJacobiStructure transform(const AlgJacobiStructure& j, const ExprMat& a);

struct EquivalenceResult {
  std::optional<ExprMat> witness;
  /// True when the absence of a witness is certified by solver infeasibility
  /// over the whole branch parametrization, not just a bounded search.
  bool exhaustive = true;
  std::string note;
};

/// Searches the automorphism family of `l` for A with j1 = transform(j2, A).
/// Both structures must be parameter-concrete. A returned witness is
/// re-verified through `transform`.
EquivalenceResult are_equivalent(const LieAlgebra& l, const AlgJacobiStructure& j1,
                                 const AlgJacobiStructure& j2, Rng& rng);

struct GridSolution {
  AlgJacobiStructure structure;
  std::vector<std::string> matched_rows;  // empty = outside the published families
};

struct GridReport {
  long candidates = 0;
  long solutions = 0;
  std::vector<GridSolution> unmatched;
  bool all_matched() const { return unmatched.empty(); }
};

/// Enumerates every constant structure with entries in `grid`, keeps the
/// residual-zero ones and matches them against the published families.
GridReport grid_enumerate(const LieAlgebra& l, const std::vector<Rational>& grid);

/// Membership of a concrete structure in a family row, by solving the
/// denominator-cleared matching system for the row parameters (printed side
/// conditions enforced, inferred ones not).
bool matches_family(const LieAlgebra& l, const FamilyRecord& fam,
                    const AlgJacobiStructure& concrete);

}  // namespace jacobi

#endif
