#include "jacobi/numeric.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace jacobi {

Rational Interval::abs_upper() const { return std::max(rat_abs(lo), rat_abs(hi)); }

Rational Interval::abs_lower() const {
  if (contains_zero()) return Rational(0);
  return std::min(rat_abs(lo), rat_abs(hi));
}

Interval iadd(const Interval& a, const Interval& b) {
  return Interval(a.lo + b.lo, a.hi + b.hi);
}

Interval isub(const Interval& a, const Interval& b) {
  return Interval(a.lo - b.hi, a.hi - b.lo);
}

Interval imul(const Interval& a, const Interval& b) {
  Rational p1 = a.lo * b.lo, p2 = a.lo * b.hi, p3 = a.hi * b.lo, p4 = a.hi * b.hi;
  return Interval(std::min(std::min(p1, p2), std::min(p3, p4)),
                  std::max(std::max(p1, p2), std::max(p3, p4)));
}

namespace {

Interval irecip(const Interval& a) {
  if (a.contains_zero()) throw EvalDomainError("pole: interval reciprocal across zero");
  return Interval(Rational(1) / a.hi, Rational(1) / a.lo);
}

Rational dyadic_down(const Rational& q, long bits) {
  Integer t;
  mpz_mul_2exp(t.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(bits));
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), t.get_mpz_t(), q.get_den().get_mpz_t());
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  Rational out(r, scale);
  out.canonicalize();
  return out;
}

Rational dyadic_up(const Rational& q, long bits) {
  Integer t;
  mpz_mul_2exp(t.get_mpz_t(), q.get_num().get_mpz_t(), static_cast<unsigned long>(bits));
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), t.get_mpz_t(), q.get_den().get_mpz_t());
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, static_cast<unsigned long>(bits));
  Rational out(r, scale);
  out.canonicalize();
  return out;
}

Interval round_out(const Interval& a, long bits) {
  return Interval(dyadic_down(a.lo, bits), dyadic_up(a.hi, bits));
}

Rational pow2(long e) {
  Integer s;
  mpz_ui_pow_ui(s.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
  if (e >= 0) return Rational(s);
  Rational q(Integer(1), s);
  q.canonicalize();
  return q;
}

const Rational kFuncArgCap(4096);

// --- point series -----------------------------------------------------------

// exp at an exact rational, by halving into |t| <= 1/4 and squaring back.
Interval exp_point(const Rational& x, long prec) {
  if (x == 0) return Interval::point(Rational(1));
  long halvings = 0;
  Rational t = x;
  while (rat_abs(t) > rat(1, 4)) {
    t /= 2;
    ++halvings;
    if (halvings > 64) throw EvalDomainError("exp argument too large");
  }
  long guard = prec + 2 * halvings + 32;
  Rational tol = pow2(-guard);
  Rational sum(1), term(1);
  for (long n = 1;; ++n) {
    term *= t;
    term /= n;
    sum += term;
    if (rat_abs(term) < tol) break;
    if (n > 10000) throw EvalDomainError("exp series did not converge");
  }
  // ratio of consecutive terms is below 1/2, so the tail is below 2|term|
  Rational rem = rat_abs(term) * 2;
  Interval out(sum - rem, sum + rem);
  for (long i = 0; i < halvings; ++i) out = round_out(imul(out, out), guard);
  return round_out(out, prec + 16);
}

// atanh-style odd series sum_{n} sign^n z^(2n+1)/(2n+1); sign=+1 gives atanh,
// sign=-1 gives atan. Requires |z| <= 1/3.
Interval odd_series(const Rational& z, int sign, long prec) {
  Rational z2 = z * z;
  Rational tol = pow2(-(prec + 16));
  Rational sum = z, p = z;
  for (long n = 1;; ++n) {
    p *= z2;
    if (sign < 0 && (n & 1)) {
      sum -= p / (2 * n + 1);
    } else {
      sum += p / (2 * n + 1);
    }
    if (rat_abs(p) < tol) {
      Rational rem = rat_abs(p) * 2;
      return Interval(sum - rem, sum + rem);
    }
    if (n > 20000) throw EvalDomainError("series did not converge");
  }
}

Interval cached(const char* key, long prec, Interval (*make)(long)) {
  struct Entry {
    long prec = -1;
    Interval iv;
  };
  thread_local std::unordered_map<std::string, Entry> cache;
  Entry& e = cache[key];
  if (e.prec < prec) {
    e.iv = make(prec);
    e.prec = prec;
  }
  return e.iv;
}

Interval make_ln2(long prec) {
  Interval a = odd_series(rat(1, 3), +1, prec + 8);
  return round_out(imul(Interval::point(Rational(2)), a), prec + 8);
}

Interval ln2_enclosure(long prec) { return cached("ln2", prec, make_ln2); }

Interval make_pi(long prec) {
  // Machin: pi = 16 atan(1/5) - 4 atan(1/239)
  Interval a5 = odd_series(rat(1, 5), -1, prec + 12);
  Interval a239 = odd_series(rat(1, 239), -1, prec + 12);
  Interval out = isub(imul(Interval::point(Rational(16)), a5),
                      imul(Interval::point(Rational(4)), a239));
  return round_out(out, prec + 8);
}

Interval pi_enclosure(long prec) { return cached("pi", prec, make_pi); }

Interval ln_point(const Rational& x, long prec) {
  if (x <= 0) throw EvalDomainError("ln of a nonpositive value");
  long j = 0;
  Rational m = x;
  while (m > rat(4, 3)) {
    m /= 2;
    ++j;
    if (j > (1 << 22)) throw EvalDomainError("ln argument out of range");
  }
  while (m < rat(2, 3)) {
    m *= 2;
    --j;
    if (j < -(1 << 22)) throw EvalDomainError("ln argument out of range");
  }
  Rational z = (m - 1) / (m + 1);
  Interval lm = imul(Interval::point(Rational(2)), odd_series(z, +1, prec + 16));
  if (j != 0) {
    Interval jln2 = imul(Interval::point(Rational(j)), ln2_enclosure(prec + 16));
    lm = iadd(lm, jln2);
  }
  return round_out(lm, prec + 8);
}

// sin/cos series on |x| <= 1 with alternating-tail bound.
Interval sin_small(const Rational& x, long prec) {
  Rational x2 = x * x;
  Rational tol = pow2(-(prec + 16));
  Rational sum = x, term = x;
  for (long n = 1;; ++n) {
    term *= x2;
    term /= (2 * n) * (2 * n + 1);
    if (n & 1)
      sum -= term;
    else
      sum += term;
    Rational mag = rat_abs(term);
    if (mag < tol) return Interval(sum - 2 * mag, sum + 2 * mag);
    if (n > 20000) throw EvalDomainError("sin series did not converge");
  }
}

Interval cos_small(const Rational& x, long prec) {
  Rational x2 = x * x;
  Rational tol = pow2(-(prec + 16));
  Rational sum(1), term(1);
  for (long n = 1;; ++n) {
    term *= x2;
    term /= (2 * n - 1) * (2 * n);
    if (n & 1)
      sum -= term;
    else
      sum += term;
    Rational mag = rat_abs(term);
    if (mag < tol) return Interval(sum - 2 * mag, sum + 2 * mag);
    if (n > 20000) throw EvalDomainError("cos series did not converge");
  }
}

// Interval sin/cos via the small-argument series around the midpoint with a
// unit Lipschitz widening; |mid| must already be <= 1.
Interval sin_near(const Interval& x, long prec) {
  Rational mid = x.mid();
  Interval s = sin_small(mid, prec);
  Rational hw = x.width() / 2;
  return Interval(s.lo - hw, s.hi + hw);
}

Interval cos_near(const Interval& x, long prec) {
  Rational mid = x.mid();
  Interval c = cos_small(mid, prec);
  Rational hw = x.width() / 2;
  return Interval(c.lo - hw, c.hi + hw);
}

// Reduces x by multiples of pi/2 and dispatches on the quadrant.
Interval sincos_point(bool want_sin, const Rational& x, long prec) {
  if (rat_abs(x) > kFuncArgCap) throw EvalDomainError("trigonometric argument too large");
  Interval half_pi = imul(Interval::point(rat(1, 2)), pi_enclosure(prec + 48));
  // nearest integer to x / (pi/2), from the midpoint approximation
  Rational ratio = x / half_pi.mid();
  Integer n;
  Rational shifted = ratio + rat(1, 2);
  mpz_fdiv_q(n.get_mpz_t(), shifted.get_num().get_mpz_t(), shifted.get_den().get_mpz_t());
  Interval r = isub(Interval::point(x), imul(Interval::point(Rational(n)), half_pi));
  // |r| <= pi/4 + slack < 1
  unsigned long quadrant = mpz_fdiv_ui(n.get_mpz_t(), 4);
  bool sinish = want_sin ? (quadrant % 2 == 0) : (quadrant % 2 == 1);
  int sign;
  if (want_sin)
    sign = (quadrant == 0 || quadrant == 1) ? +1 : -1;
  else
    sign = (quadrant == 0 || quadrant == 3) ? +1 : -1;
  Interval base = sinish ? sin_near(r, prec) : cos_near(r, prec);
  if (sign < 0) base = imul(Interval::point(Rational(-1)), base);
  return round_out(base, prec + 8);
}

Interval sinhcosh_point(bool want_sinh, const Rational& x, long prec) {
  if (rat_abs(x) > kFuncArgCap) throw EvalDomainError("hyperbolic argument too large");
  Interval ep = exp_point(x, prec + 16);
  Interval em = exp_point(Rational(-x), prec + 16);
  Interval out = want_sinh ? isub(ep, em) : iadd(ep, em);
  out = imul(out, Interval::point(rat(1, 2)));
  return round_out(out, prec + 8);
}

}  // namespace

Interval ipow(const Interval& a, long k) {
  if (k == 0) return Interval::point(Rational(1));
  bool neg = k < 0;
  long e = neg ? -k : k;
  Interval out = Interval::point(Rational(1));
  Interval base = a;
  while (e) {
    if (e & 1) out = imul(out, base);
    e >>= 1;
    if (e) base = imul(base, base);
  }
  if (neg) out = irecip(out);
  return out;
}

Interval Evaluator::enclose(Func1 f, const Rational& x) const {
  struct Key {
    int fn;
    std::string q;
    bool operator==(const Key& o) const { return fn == o.fn && q == o.q; }
  };
  struct KeyHash {
    std::size_t operator()(const Key& k) const {
      return std::hash<std::string>{}(k.q) * 31 + static_cast<std::size_t>(k.fn);
    }
  };
  struct Entry {
    long prec = -1;
    Interval iv;
  };
  thread_local std::unordered_map<Key, Entry, KeyHash> cache;
  if (cache.size() > 20000) cache.clear();
  Key key{static_cast<int>(f), x.get_str()};
  Entry& e = cache[key];
  if (e.prec >= prec_) return e.iv;
  Interval iv;
  switch (f) {
    case Func1::Exp:
      if (rat_abs(x) > kFuncArgCap) throw EvalDomainError("exp argument too large");
      iv = exp_point(x, prec_);
      break;
    case Func1::Ln: iv = ln_point(x, prec_); break;
    case Func1::Sin: iv = sincos_point(true, x, prec_); break;
    case Func1::Cos: iv = sincos_point(false, x, prec_); break;
    case Func1::Sinh: iv = sinhcosh_point(true, x, prec_); break;
    case Func1::Cosh: iv = sinhcosh_point(false, x, prec_); break;
  }
  e.prec = prec_;
  e.iv = iv;
  return iv;
}

Interval Evaluator::func_interval(Func1 f, const Interval& x) const {
  if (f == Func1::Ln && x.lo <= 0) throw EvalDomainError("ln of a nonpositive value");
  if (x.lo == x.hi) return enclose(f, x.lo);
  Rational mid = x.mid();
  Interval at_mid = enclose(f, mid);
  Rational hw = x.width() / 2;
  Rational lip;
  switch (f) {
    case Func1::Sin:
    case Func1::Cos: lip = Rational(1); break;
    case Func1::Ln: lip = Rational(1) / x.lo; break;
    case Func1::Exp:
    case Func1::Sinh:
    case Func1::Cosh: {
      Evaluator crude(32);
      lip = crude.enclose(Func1::Exp, dyadic_up(x.abs_upper(), 8)).hi;
      break;
    }
  }
  Rational pad = lip * hw;
  return Interval(at_mid.lo - pad, at_mid.hi + pad);
}

Interval Evaluator::eval_node(const Expr& e, const Assignment& a) const {
  switch (e.kind()) {
    case Kind::Rational: return Interval::point(e.value());
    case Kind::Symbol: {
      auto it = a.find(e.name());
      if (it == a.end()) throw MissingBinding(e.name());
      return Interval::point(it->second);
    }
    case Kind::Sum: {
      Interval acc = Interval::point(Rational(0));
      for (const Expr& k : e.children()) acc = iadd(acc, eval_node(k, a));
      return acc;
    }
    case Kind::Product: {
      Interval acc = Interval::point(Rational(1));
      for (const Expr& k : e.children()) acc = imul(acc, eval_node(k, a));
      return acc;
    }
    case Kind::IntPower: return ipow(eval_node(e.child(0), a), e.exponent());
    case Kind::Func: return func_interval(e.func(), eval_node(e.child(0), a));
  }
  return Interval::point(Rational(0));
}

Interval Evaluator::eval(const Expr& e, const Assignment& a) const {
  return eval_node(e, a);
}

namespace {

Rational exact_eval(const Expr& e, const Assignment& a) {
  switch (e.kind()) {
    case Kind::Rational: return e.value();
    case Kind::Symbol: {
      auto it = a.find(e.name());
      if (it == a.end()) throw MissingBinding(e.name());
      return it->second;
    }
    case Kind::Sum: {
      Rational acc(0);
      for (const Expr& k : e.children()) acc += exact_eval(k, a);
      return acc;
    }
    case Kind::Product: {
      Rational acc(1);
      for (const Expr& k : e.children()) acc *= exact_eval(k, a);
      return acc;
    }
    case Kind::IntPower: {
      Rational b = exact_eval(e.child(0), a);
      if (b == 0 && e.exponent() < 0) throw EvalDomainError("pole: zero raised to negative power");
      return rat_pow(b, e.exponent());
    }
    case Kind::Func: throw EvalDomainError("exact evaluation of a transcendental function");
  }
  return Rational(0);
}

std::string decimal_string(const Rational& q, int digits) {
  if (q == 0) return "0";
  Rational a = rat_abs(q);
  Integer scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  // a * 10^digits rounded to nearest
  Rational scaled = a * Rational(scale);
  Integer ip;
  Rational half = scaled + rat(1, 2);
  mpz_fdiv_q(ip.get_mpz_t(), half.get_num().get_mpz_t(), half.get_den().get_mpz_t());
  std::string s = ip.get_str();
  std::string intpart, fracpart;
  if (s.size() <= static_cast<std::size_t>(digits)) {
    intpart = "0";
    fracpart = std::string(digits - s.size(), '0') + s;
  } else {
    intpart = s.substr(0, s.size() - digits);
    fracpart = s.substr(s.size() - digits);
  }
  while (!fracpart.empty() && fracpart.back() == '0') fracpart.pop_back();
  std::string out = (q < 0 ? "-" : "") + intpart;
  if (!fracpart.empty()) out += "." + fracpart;
  return out;
}

}  // namespace

std::string EvalResult::str() const {
  if (exact) return rat_to_string(value);
  return decimal_string(approx.mid(), 30);
}

EvalResult eval(const Expr& e, const Assignment& a) {
  // Substituting first lets constant folding fire (exp(0), ln(1), ...), so
  // plugging rationals into a transcendental expression can still be exact.
  Expr n;
  try {
    n = substitute(normalize(e), a);
  } catch (const std::domain_error& err) {
    throw EvalDomainError(err.what());  // a pole at the evaluation point
  }
  EvalResult out;
  if (!contains_func(n)) {
    out.exact = true;
    out.value = exact_eval(n, a);
    out.approx = Interval::point(out.value);
    return out;
  }
  Evaluator ev(192);
  out.exact = false;
  out.approx = ev.eval(n, a);
  return out;
}

Assignment sample_point(const Expr& e, Rng& rng, const Evaluator& ev, int max_tries) {
  std::set<std::string> syms = free_symbols(e);
  for (int attempt = 0; attempt < max_tries; ++attempt) {
    Assignment a;
    for (const std::string& s : syms) a.emplace(s, rng.rational_point());
    try {
      ev.eval(e, a);
      return a;
    } catch (const EvalDomainError&) {
      continue;
    }
  }
  throw EvalDomainError("no admissible sample point found");
}

ZeroResult is_zero(const Expr& e, const ZeroOptions& opt) {
  Expr n = normalize(e);
  if (n.is_literal_zero()) return {true, ZeroTier::Exact};
  if (n.is_rational()) return {false, ZeroTier::NotZero};
  if (!contains_func(n)) {
    // Canonicalization is a decision procedure for rational functions of
    // independent symbols: a nonzero canonical numerator is a nonzero function.
    return {false, ZeroTier::NotZero};
  }
  Rng rng(opt.seed ^ static_cast<std::uint64_t>(n.hash()));
  Evaluator base(opt.precision_bits);
  for (int i = 0; i < opt.points; ++i) {
    Assignment a;
    try {
      a = sample_point(n, rng, base);
    } catch (const EvalDomainError&) {
      return {false, ZeroTier::NotZero};
    }
    long prec = opt.precision_bits;
    for (;;) {
      Interval iv = Evaluator(prec).eval(n, a);
      if (iv.abs_upper() < opt.threshold) break;  // this point is consistent with zero
      if (iv.abs_lower() >= opt.threshold) return {false, ZeroTier::NotZero};
      prec *= 2;
      if (prec > opt.max_precision_bits) return {false, ZeroTier::NotZero};
    }
  }
  return {true, ZeroTier::Numeric};
}

}  // namespace jacobi
