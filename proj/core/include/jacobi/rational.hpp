#ifndef JACOBI_RATIONAL_HPP
#define JACOBI_RATIONAL_HPP

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace jacobi {

/// Exact rational scalar. All symbolic coefficients in the library are
/// of this type; no floating point enters an expression tree.
using Rational = mpq_class;
using Integer = mpz_class;

inline Rational rat(long num, long den = 1) {
  if (den == 0) throw std::domain_error("rational with zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline Rational rat_pow(const Rational& base, long e) {
  if (e == 0) return Rational(1);
  Rational b = base;
  bool neg = e < 0;
  unsigned long k = neg ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  Rational out(1);
  while (k) {
    if (k & 1) out *= b;
    b *= b;
    k >>= 1;
  }
  if (neg) {
    if (out == 0) throw std::domain_error("zero raised to a negative power");
    out = Rational(1) / out;
  }
  return out;
}

inline std::string rat_to_string(const Rational& q) { return q.get_str(); }

/// Parses "p" or "p/q" with an optional leading minus.
inline Rational rat_from_string(const std::string& s) {
  Rational q;
  if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + s);
  q.canonicalize();
  return q;
}

inline Rational rat_abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline int rat_sign(const Rational& q) { return sgn(q); }

}  // namespace jacobi

#endif
