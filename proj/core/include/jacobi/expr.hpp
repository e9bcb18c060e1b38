#ifndef JACOBI_EXPR_HPP
#define JACOBI_EXPR_HPP

#include <cstdint>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "jacobi/rational.hpp"

namespace jacobi {

enum class Kind : std::uint8_t { Rational, Symbol, Func, IntPower, Product, Sum };

enum class Func1 : std::uint8_t { Exp, Ln, Sin, Cos, Sinh, Cosh };

const char* func_name(Func1 f);

struct ExprNode;

/// Immutable symbolic scalar over exact rationals.
///
/// Node kinds: rational constants, named symbols, sums, products, integer
/// powers (the exponent may be negative, which is how quotients are
/// represented) and the six transcendental functions exp/ln/sin/cos/sinh/cosh.
/// Values are cheap shared handles; every operation is pure.
class Expr {
 public:
  Expr();  // the constant 0

  static Expr rational(Rational q);
  static Expr integer(long n) { return rational(Rational(n)); }
  static Expr symbol(std::string name);
  static Expr sum(std::vector<Expr> terms);
  static Expr product(std::vector<Expr> factors);
  static Expr pow(Expr base, long exponent);
  static Expr apply(Func1 f, Expr arg);

  Kind kind() const;
  const Rational& value() const;        // Kind::Rational
  const std::string& name() const;      // Kind::Symbol
  Func1 func() const;                   // Kind::Func
  long exponent() const;                // Kind::IntPower
  const std::vector<Expr>& children() const;
  const Expr& child(std::size_t i) const { return children()[i]; }

  bool is_rational() const { return kind() == Kind::Rational; }
  bool is_literal_zero() const;
  bool is_literal_one() const;
  bool is_canonical() const;

  /// Structural equality (same tree), independent of canonicalization.
  bool identical(const Expr& other) const;
  std::size_t hash() const;

  const ExprNode* node() const { return n_.get(); }

 private:
  explicit Expr(std::shared_ptr<const ExprNode> n) : n_(std::move(n)) {}
  std::shared_ptr<const ExprNode> n_;
  friend struct ExprFactory;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
inline Expr operator+(const Expr& a, long b) { return a + Expr::integer(b); }
inline Expr operator-(const Expr& a, long b) { return a - Expr::integer(b); }
inline Expr operator*(long a, const Expr& b) { return Expr::integer(a) * b; }
inline Expr operator*(const Rational& a, const Expr& b) { return Expr::rational(a) * b; }

/// Total structural order used for canonical sorting: (kind rank, payload,
/// children), with kind ranks Rational < Symbol < Func < IntPower < Product < Sum.
int expr_cmp(const Expr& a, const Expr& b);

/// Canonical form. Sums and products are flattened and sorted, rational
/// constants folded, like terms collected, products expanded over sums,
/// and quotients brought over a single factored denominator. Idempotent.
/// Throws std::domain_error on division by a literal zero.
Expr normalize(const Expr& e);

/// Splits normalize(e) as numerator/denominator, both canonical polynomials
/// (no negative powers); the denominator has positive leading coefficient.
std::pair<Expr, Expr> as_fraction(const Expr& e);

/// Exact partial derivative with respect to the symbol `var`; any other
/// symbol is treated as a constant. Result is canonical.
Expr differentiate(const Expr& e, const std::string& var);

/// Simultaneous substitution followed by normalize.
Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings);
Expr substitute(const Expr& e, const std::map<std::string, Rational>& bindings);

void collect_symbols(const Expr& e, std::set<std::string>& out);
std::set<std::string> free_symbols(const Expr& e);
bool contains_func(const Expr& e);

/// Serialization. `to_string` emits parenthesized infix that `parse_expr`
/// reads back; parse o print is the identity on canonical forms.
std::string to_string(const Expr& e);
Expr parse_expr(const std::string& text);

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace jacobi

#endif
