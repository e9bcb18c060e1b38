#ifndef JACOBI_LIE_ALGEBRA_HPP
#define JACOBI_LIE_ALGEBRA_HPP

#include <optional>
#include <string>
#include <vector>

#include "jacobi/matrix.hpp"
#include "jacobi/numeric.hpp"

namespace jacobi {

struct UnknownAlgebra : std::runtime_error {
  explicit UnknownAlgebra(const std::string& name)
      : std::runtime_error("unknown Lie algebra " + name) {}
};

struct UnsupportedAlgebra : std::runtime_error {
  explicit UnsupportedAlgebra(const std::string& what) : std::runtime_error(what) {}
};

/// A catalog Lie algebra: structure constants f_ab^c over an optional
/// symbolic parameter (the Bianchi parameter of VIa / VIIa).
class LieAlgebra {
 public:
  LieAlgebra(std::string name, int dim, std::optional<std::string> param,
             std::vector<Expr> f);

  const std::string& name() const { return name_; }
  int dim() const { return dim_; }
  const std::optional<std::string>& param() const { return param_; }

  /// f_ab^c with zero-based indices.
  const Expr& f(int a, int b, int c) const { return f_[(a * dim_ + b) * dim_ + c]; }

  /// Concrete copy with the Bianchi parameter bound to `value`.
  /// VIa requires value > 0 and value != 1; VIIa requires value > 0.
  LieAlgebra instantiate(const Rational& value) const;

  bool has_free_param() const;

 private:
  std::string name_;
  int dim_;
  std::optional<std::string> param_;
  std::vector<Expr> f_;
};

/// All thirteen catalog entries: A1, A2, I ... IX.
const std::vector<LieAlgebra>& algebra_catalog();
const LieAlgebra& find_algebra(const std::string& name);

struct StructureIssue {
  std::string what;  // "antisymmetry" or "jacobi"
  int a, b, c, e;
};

struct StructureReport {
  bool ok = true;
  std::vector<StructureIssue> failures;
};

/// Checks antisymmetry of f and the Jacobi identity, exact tier.
StructureReport check_structure(const LieAlgebra& l);

/// chi[a](b,c) = -f_ab^c and y[c](a,b) = -f_ab^c.
struct AdjointRep {
  std::vector<ExprMat> chi;
  std::vector<ExprMat> y;
};
AdjointRep adjoint(const LieAlgebra& l);

struct AutomorphismBranch {
  ExprMat matrix;                 // entries over the branch parameters
  std::vector<std::string> params;
  std::vector<Expr> nonvanishing; // each must be nonzero at an instance
};

struct AutomorphismFamily {
  std::string algebra;
  bool constraint_only = false;   // VIII, IX: membership test only
  std::string label;              // e.g. "SL(2,R)" for constraint-only rows
  std::vector<AutomorphismBranch> branches;

  /// Random instantiation of some branch satisfying the nonvanishing
  /// conditions. Throws UnsupportedAlgebra for constraint-only families.
  ExprMat random_instance(Rng& rng, std::size_t branch) const;
};

AutomorphismFamily automorphism_family(const LieAlgebra& l);

/// Bracket preservation A_a^k f_kl^m A_b^l = f_ab^c A_c^m plus a
/// not-identically-zero determinant.
bool is_automorphism(const LieAlgebra& l, const ExprMat& a, const ZeroOptions& opt = {});

struct MatrixIdentityReport {
  bool ok = true;
  std::vector<std::string> failures;
};

/// The matrix transcriptions of bracket preservation through the adjoint
/// representations: A Y^m A^t = Y^c A_c^m and A chi_l A_b^l = chi_b A.
MatrixIdentityReport matrix_identities_check(const LieAlgebra& l, const ExprMat& a,
                                             const ZeroOptions& opt = {});

}  // namespace jacobi

#endif
