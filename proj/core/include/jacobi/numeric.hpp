#ifndef JACOBI_NUMERIC_HPP
#define JACOBI_NUMERIC_HPP

#include <map>
#include <optional>
#include <stdexcept>
#include <string>

#include "jacobi/expr.hpp"
#include "jacobi/rational.hpp"
#include "jacobi/rng.hpp"

namespace jacobi {

/// Map from symbol name to exact rational value.
using Assignment = std::map<std::string, Rational>;

struct MissingBinding : std::runtime_error {
  explicit MissingBinding(const std::string& sym)
      : std::runtime_error("no binding for symbol " + sym), symbol(sym) {}
  std::string symbol;
};

struct EvalDomainError : std::runtime_error {
  explicit EvalDomainError(const std::string& what) : std::runtime_error(what) {}
};

/// Closed interval with exact rational endpoints. Transcendental values are
/// represented by enclosures whose width is driven well below 2^-precision,
/// so the "floating tier" is really certified rational arithmetic.
struct Interval {
  Rational lo, hi;
  Interval() : lo(0), hi(0) {}
  Interval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h)) {}
  static Interval point(const Rational& q) { return Interval(q, q); }
  Rational mid() const { return (lo + hi) / 2; }
  Rational width() const { return hi - lo; }
  bool contains_zero() const { return lo <= 0 && hi >= 0; }
  Rational abs_upper() const;
  Rational abs_lower() const;
};

Interval iadd(const Interval& a, const Interval& b);
Interval isub(const Interval& a, const Interval& b);
Interval imul(const Interval& a, const Interval& b);
Interval ipow(const Interval& a, long k);  // throws EvalDomainError on 1/0

/// Evaluates an expression at exact rational points, tracking certified
/// enclosures. `precision_bits` bounds the relative width of every
/// transcendental enclosure introduced.
class Evaluator {
 public:
  explicit Evaluator(long precision_bits = 192) : prec_(precision_bits) {}

  Interval eval(const Expr& e, const Assignment& a) const;

  /// Enclosure of f(x) for exact rational x.
  Interval enclose(Func1 f, const Rational& x) const;

  long precision() const { return prec_; }

 private:
  Interval eval_node(const Expr& e, const Assignment& a) const;
  Interval func_interval(Func1 f, const Interval& x) const;
  long prec_;
};

struct EvalResult {
  bool exact = false;
  Rational value;     // set when exact
  Interval approx;    // always set
  std::string str() const;
};

/// `exact` when the expression is transcendental-free; the enclosure
/// otherwise. Throws MissingBinding / EvalDomainError.
EvalResult eval(const Expr& e, const Assignment& a);

enum class ZeroTier { NotZero, Exact, Numeric };

struct ZeroResult {
  bool zero = false;
  ZeroTier tier = ZeroTier::NotZero;
  operator bool() const { return zero; }
};

struct ZeroOptions {
  std::uint64_t seed = 0;
  int points = 20;
  long precision_bits = 512;
  long max_precision_bits = 8192;
  /// |value| must stay below this at every sample point (default 1e-30).
  Rational threshold = Rational(Integer(1), Integer("1000000000000000000000000000000"));
};

/// Two-tier zero test. The exact tier canonicalizes (rational functions
/// included); if that leaves a transcendental-free nonzero form the answer
/// is a definite "no". Otherwise the expression is sampled at random
/// rational points drawn from {p/q : |p|<=50, 1<=q<=50} and certified
/// against the threshold with interval arithmetic.
ZeroResult is_zero(const Expr& e, const ZeroOptions& opt = {});

/// Samples an assignment for every free symbol of `e`, rejecting points
/// outside the expression's domain (log of a nonpositive value, poles).
Assignment sample_point(const Expr& e, Rng& rng, const Evaluator& ev, int max_tries = 500);

}  // namespace jacobi

#endif
