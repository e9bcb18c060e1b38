#ifndef JACOBI_HAMSYS_HPP
#define JACOBI_HAMSYS_HPP

#include <optional>
#include <string>
#include <vector>

#include "jacobi/group_geom.hpp"
#include "jacobi/report.hpp"

namespace jacobi {

/// Rational function as an exact numerator/denominator pair of polynomial
/// canonical forms. The expression kernel has no quotient node; this is the
/// layer where Hamiltonians like x1*x2/(exp(x2)*(x2-l12)) live.
struct RatExpr {
  Expr num = Expr::integer(0);
  Expr den = Expr::integer(1);

  static RatExpr make(const Expr& n) { return make(n, Expr::integer(1)); }
  static RatExpr make(const Expr& n, const Expr& d);
  static RatExpr parse(const std::string& text);  // '/' allowed

  bool zero() const { return num.is_literal_zero(); }
  bool is_one() const;
  std::string str() const;
};

RatExpr operator+(const RatExpr& a, const RatExpr& b);
RatExpr operator-(const RatExpr& a, const RatExpr& b);
RatExpr operator*(const RatExpr& a, const RatExpr& b);
RatExpr operator-(const RatExpr& a);

RatExpr rat_diff(const RatExpr& f, const std::string& var);

/// Cross-multiplied equality a.num*b.den == b.num*a.den.
ZeroResult ratexpr_equal(const RatExpr& a, const RatExpr& b, const ZeroOptions& opt = {});

struct VectorField {
  int dim = 3;
  std::vector<RatExpr> comp;

  static VectorField make(int dim);
};

/// X_f with components X^mu = Lambda^{nu mu} d_nu f + f E^mu; the index
/// side of the musical map is fixed by the worked examples.
VectorField hamiltonian_vf(const GroupJacobiStructure& jg, const RatExpr& f);

/// {f,g} = Lambda^{mu nu} d_mu f d_nu g + f E^mu d_mu g - g E^mu d_mu f.
RatExpr jacobi_bracket(const GroupJacobiStructure& jg, const RatExpr& f, const RatExpr& g);

/// Lie bracket of vector fields.
VectorField commutator(const VectorField& x, const VectorField& y);

struct DependentGenerators : std::runtime_error {
  explicit DependentGenerators(const std::string& what) : std::runtime_error(what) {}
  std::vector<Rational> combination;  // verified vanishing combination
};

struct CommutatorEntry {
  int i = 0, j = 0;                // zero-based pair, i < j
  std::vector<Rational> coeffs;    // [X_i,X_j] = sum_k coeffs[k] X_k
  ZeroTier tier = ZeroTier::Exact;
};

struct LieSystemReport {
  bool closed = false;
  std::vector<CommutatorEntry> table;
  std::string matched_algebra;  // catalog algebra with the same constants
  ZeroTier worst_tier = ZeroTier::Exact;
  std::string failure;          // set when not closed
};

/// Computes all pairwise commutators and expresses each as an exact
/// constant-coefficient combination of the generators (coefficients are
/// recovered from exact samples and certified symbolically). Throws
/// DependentGenerators when the generators admit a verified vanishing
/// combination.
LieSystemReport closure_check(const std::vector<VectorField>& gens, Rng& rng,
                              const ZeroOptions& opt = {});

/// Verified vanishing constant combination of the fields, if one exists.
std::optional<std::vector<Rational>> dependency_of(const std::vector<VectorField>& gens,
                                                   Rng& rng, const ZeroOptions& opt = {});

/// First candidate whose Hamiltonian vector field equals x.
std::optional<RatExpr> hamiltonian_of(const GroupJacobiStructure& jg, const VectorField& x,
                                      const std::vector<RatExpr>& candidates,
                                      const ZeroOptions& opt = {});

/// One worked Jacobi-Lie Hamiltonian system from the bundled catalog.
struct ExampleSpec {
  int n = 0;
  std::string group;
  std::string rowid;
  std::optional<std::string> second_rowid;
  bool second_dependent = false;
  GroupJacobiStructure printed_lift;
  std::optional<GroupJacobiStructure> printed_lift_b;
  std::vector<RatExpr> hams;
  std::vector<std::vector<RatExpr>> printed_fields;
  struct Rel {
    int i = 0, j = 0;
    std::vector<Rational> coeffs;
  };
  std::vector<Rel> commutators;
  std::vector<Rel> brackets;
  std::vector<std::string> notes;
};

const ExampleSpec& example_catalog(int n);

/// End-to-end reproduction of example n: lift, manifold predicates, printed
/// fields (differences reported as discrepancies, never failures), closure,
/// commutator table, bracket relations, and the degenerate second class.
Report verify_example(int n, Rng& rng, const ZeroOptions& opt = {});

}  // namespace jacobi

#endif
