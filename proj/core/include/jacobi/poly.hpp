#ifndef JACOBI_POLY_HPP
#define JACOBI_POLY_HPP

#include <map>
#include <string>
#include <vector>

#include "jacobi/expr.hpp"
#include "jacobi/rational.hpp"

namespace jacobi {

struct NotPolynomial : std::runtime_error {
  explicit NotPolynomial(const std::string& what) : std::runtime_error(what) {}
};

struct PositiveDimensional : std::runtime_error {
  explicit PositiveDimensional(const std::string& what) : std::runtime_error(what) {}
  /// Variables with no pure-power leading term in the basis; binding one of
  /// these is how callers cut the solution set down to dimension zero.
  std::vector<std::string> unpinned;
};

/// Multivariate polynomial over Q in a fixed ordered variable list,
/// monomials compared in lex order (vars[0] largest).
class MPoly {
 public:
  using Mono = std::vector<unsigned>;

  struct LexGreater {
    bool operator()(const Mono& a, const Mono& b) const {
      for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) return a[i] > b[i];
      }
      return false;
    }
  };

  using Terms = std::map<Mono, Rational, LexGreater>;

  MPoly() = default;
  explicit MPoly(std::size_t nvars) : nvars_(nvars) {}

  /// Conversion from a canonical expression; every free symbol must be one
  /// of `vars`, with nonnegative powers and no transcendental functions.
  static MPoly from_expr(const Expr& e, const std::vector<std::string>& vars);

  static MPoly constant(std::size_t nvars, const Rational& c);
  static MPoly variable(std::size_t nvars, std::size_t index);

  std::size_t nvars() const { return nvars_; }
  bool zero() const { return terms_.empty(); }
  const Terms& terms() const { return terms_; }
  void add_term(const Mono& m, const Rational& c);

  const Mono& leading_mono() const { return terms_.begin()->first; }
  const Rational& leading_coeff() const { return terms_.begin()->second; }
  long degree() const;  // total degree, -1 for zero
  long degree_in(std::size_t var) const;
  bool univariate_in(std::size_t& var) const;  // at most one variable occurs

  MPoly operator+(const MPoly& o) const;
  MPoly operator-(const MPoly& o) const;
  MPoly operator*(const MPoly& o) const;
  MPoly scaled(const Rational& c) const;
  MPoly monic() const;

  Expr to_expr(const std::vector<std::string>& vars) const;

 private:
  std::size_t nvars_ = 0;
  Terms terms_;
};

/// Buchberger's algorithm; returns the reduced, monic lex Groebner basis.
std::vector<MPoly> groebner(std::vector<MPoly> gens);

/// Every variable has a pure-power leading monomial in the basis.
bool zero_dimensional(const std::vector<MPoly>& gb, std::size_t nvars);

/// Element of Q(sqrt(d)): a + b*sqrt(d); d == 0 encodes a plain rational.
struct AlgValue {
  Rational a, b;
  Integer d;

  AlgValue() : a(0), b(0), d(0) {}
  AlgValue(Rational r) : a(std::move(r)), b(0), d(0) {}  // NOLINT(google-explicit-constructor)
  AlgValue(Rational x, Rational y, Integer dd) : a(std::move(x)), b(std::move(y)), d(std::move(dd)) {
    if (b == 0) d = 0;
  }

  bool is_rational() const { return d == 0; }
  bool is_zero() const { return a == 0 && b == 0; }
  std::string str() const;
};

AlgValue operator+(const AlgValue& x, const AlgValue& y);
AlgValue operator-(const AlgValue& x, const AlgValue& y);
AlgValue operator*(const AlgValue& x, const AlgValue& y);
AlgValue alg_div(const AlgValue& x, const AlgValue& y);
AlgValue alg_pow(const AlgValue& x, unsigned e);
bool operator==(const AlgValue& x, const AlgValue& y);

struct Solution {
  std::map<std::string, AlgValue> values;
};

struct SolveResult {
  std::vector<Solution> solutions;
  /// False when a univariate eliminant could not be fully factored over
  /// rationals plus one quadratic extension.
  bool complete = true;
};

/// Exact solver for zero-dimensional polynomial systems over Q (lex
/// Groebner basis plus back-substitution through rational and quadratic
/// roots). Solutions violating a `nonzero` side condition are dropped.
/// Throws NotPolynomial / PositiveDimensional.
SolveResult solve_determined(const std::vector<Expr>& polys,
                             const std::vector<std::string>& unknowns,
                             const std::vector<Expr>& nonzero = {});

/// Exact dense linear solve M c = rhs over Q.
struct LinearSolution {
  bool consistent = false;
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> nullspace;
};
LinearSolution solve_linear(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs);

}  // namespace jacobi

#endif
