#include "jacobi/expr.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

namespace jacobi {

const char* func_name(Func1 f) {
  switch (f) {
    case Func1::Exp: return "exp";
    case Func1::Ln: return "ln";
    case Func1::Sin: return "sin";
    case Func1::Cos: return "cos";
    case Func1::Sinh: return "sinh";
    case Func1::Cosh: return "cosh";
  }
  return "?";
}

struct ExprNode {
  Kind kind = Kind::Rational;
  bool canonical = false;
  Func1 fn = Func1::Exp;
  long expo = 0;
  Rational rat;
  std::string sym;
  std::vector<Expr> kids;
  std::size_t h = 0;
};

namespace {

std::size_t hash_mix(std::size_t a, std::size_t b) {
  a ^= b + 0x9e3779b97f4a7c15ull + (a << 6) + (a >> 2);
  return a;
}

std::size_t node_hash(const ExprNode& n) {
  std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ull;
  switch (n.kind) {
    case Kind::Rational: {
      h = hash_mix(h, std::hash<std::string>{}(n.rat.get_str()));
      break;
    }
    case Kind::Symbol:
      h = hash_mix(h, std::hash<std::string>{}(n.sym));
      break;
    case Kind::Func:
      h = hash_mix(h, static_cast<std::size_t>(n.fn));
      h = hash_mix(h, n.kids[0].hash());
      break;
    case Kind::IntPower:
      h = hash_mix(h, static_cast<std::size_t>(n.expo));
      h = hash_mix(h, n.kids[0].hash());
      break;
    case Kind::Product:
    case Kind::Sum:
      for (const Expr& k : n.kids) h = hash_mix(h, k.hash());
      break;
  }
  return h;
}

}  // namespace

struct ExprFactory {
  static Expr make(std::shared_ptr<ExprNode> n) {
    n->h = node_hash(*n);
    return Expr(std::shared_ptr<const ExprNode>(std::move(n)));
  }
};

Expr::Expr() { *this = rational(Rational(0)); }

Expr Expr::rational(Rational q) {
  q.canonicalize();
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Rational;
  n->rat = std::move(q);
  n->canonical = true;
  return ExprFactory::make(std::move(n));
}

Expr Expr::symbol(std::string name) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Symbol;
  n->sym = std::move(name);
  n->canonical = true;
  return ExprFactory::make(std::move(n));
}

Expr Expr::sum(std::vector<Expr> terms) {
  if (terms.empty()) return integer(0);
  if (terms.size() == 1) return terms[0];
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Sum;
  n->kids = std::move(terms);
  return ExprFactory::make(std::move(n));
}

Expr Expr::product(std::vector<Expr> factors) {
  if (factors.empty()) return integer(1);
  if (factors.size() == 1) return factors[0];
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Product;
  n->kids = std::move(factors);
  return ExprFactory::make(std::move(n));
}

Expr Expr::pow(Expr base, long exponent) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::IntPower;
  n->expo = exponent;
  n->kids.push_back(std::move(base));
  return ExprFactory::make(std::move(n));
}

Expr Expr::apply(Func1 f, Expr arg) {
  auto n = std::make_shared<ExprNode>();
  n->kind = Kind::Func;
  n->fn = f;
  n->kids.push_back(std::move(arg));
  return ExprFactory::make(std::move(n));
}

Kind Expr::kind() const { return n_->kind; }
const Rational& Expr::value() const { return n_->rat; }
const std::string& Expr::name() const { return n_->sym; }
Func1 Expr::func() const { return n_->fn; }
long Expr::exponent() const { return n_->expo; }
const std::vector<Expr>& Expr::children() const { return n_->kids; }
bool Expr::is_literal_zero() const { return n_->kind == Kind::Rational && n_->rat == 0; }
bool Expr::is_literal_one() const { return n_->kind == Kind::Rational && n_->rat == 1; }
bool Expr::is_canonical() const { return n_->canonical; }
std::size_t Expr::hash() const { return n_->h; }

bool Expr::identical(const Expr& other) const {
  if (n_ == other.n_) return true;
  if (n_->h != other.n_->h) return false;
  return expr_cmp(*this, other) == 0;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::sum({a, b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::product({a, b}); }
Expr operator-(const Expr& a) { return Expr::product({Expr::integer(-1), a}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::sum({a, -b}); }

namespace {

int kind_rank(Kind k) {
  switch (k) {
    case Kind::Rational: return 0;
    case Kind::Symbol: return 1;
    case Kind::Func: return 2;
    case Kind::IntPower: return 3;
    case Kind::Product: return 4;
    case Kind::Sum: return 5;
  }
  return 6;
}

}  // namespace

int expr_cmp(const Expr& a, const Expr& b) {
  if (a.node() == b.node()) return 0;
  int ra = kind_rank(a.kind()), rb = kind_rank(b.kind());
  if (ra != rb) return ra < rb ? -1 : 1;
  switch (a.kind()) {
    case Kind::Rational: {
      int c = cmp(a.value(), b.value());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Symbol: {
      int c = a.name().compare(b.name());
      return c < 0 ? -1 : (c > 0 ? 1 : 0);
    }
    case Kind::Func: {
      if (a.func() != b.func()) return a.func() < b.func() ? -1 : 1;
      return expr_cmp(a.child(0), b.child(0));
    }
    case Kind::IntPower: {
      int c = expr_cmp(a.child(0), b.child(0));
      if (c != 0) return c;
      if (a.exponent() != b.exponent()) return a.exponent() < b.exponent() ? -1 : 1;
      return 0;
    }
    case Kind::Product:
    case Kind::Sum: {
      std::size_t n = std::min(a.children().size(), b.children().size());
      for (std::size_t i = 0; i < n; ++i) {
        int c = expr_cmp(a.child(i), b.child(i));
        if (c != 0) return c;
      }
      if (a.children().size() != b.children().size())
        return a.children().size() < b.children().size() ? -1 : 1;
      return 0;
    }
  }
  return 0;
}

// ---------------------------------------------------------------------------
// Canonicalization.
//
// Internally an expression is flattened into numerator/denominator form:
// the numerator is a polynomial over "atoms" (symbols and function
// applications, each raised to a positive integer power) with rational
// coefficients, and the denominator is a single monomial whose atoms may
// additionally be primitive polynomials (for things like (x+y)^-2).
// ---------------------------------------------------------------------------

namespace {

using FactorVec = std::vector<std::pair<Expr, long>>;  // sorted by atom, exps > 0

struct MonoLess {
  bool operator()(const FactorVec& a, const FactorVec& b) const {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
      int c = expr_cmp(a[i].first, b[i].first);
      if (c != 0) return c < 0;
      if (a[i].second != b[i].second) return a[i].second < b[i].second;
    }
    return a.size() < b.size();
  }
};

using Poly = std::map<FactorVec, Rational, MonoLess>;

struct Frac {
  Poly num;
  FactorVec den;
};

void poly_add_term(Poly& p, const FactorVec& m, const Rational& c) {
  if (c == 0) return;
  auto it = p.find(m);
  if (it == p.end()) {
    p.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

FactorVec mono_mul(const FactorVec& a, const FactorVec& b) {
  FactorVec out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = expr_cmp(a[i].first, b[j].first);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      long e = a[i].second + b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

FactorVec mono_pow(const FactorVec& m, long k) {
  FactorVec out = m;
  for (auto& f : out) f.second *= k;
  return out;
}

FactorVec mono_lcm(const FactorVec& a, const FactorVec& b) {
  FactorVec out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    int c = expr_cmp(a[i].first, b[j].first);
    if (c < 0) {
      out.push_back(a[i++]);
    } else if (c > 0) {
      out.push_back(b[j++]);
    } else {
      out.emplace_back(a[i].first, std::max(a[i].second, b[j].second));
      ++i;
      ++j;
    }
  }
  for (; i < a.size(); ++i) out.push_back(a[i]);
  for (; j < b.size(); ++j) out.push_back(b[j]);
  return out;
}

// a / b, assuming b divides a atom-wise.
FactorVec mono_div(const FactorVec& a, const FactorVec& b) {
  FactorVec out;
  std::size_t i = 0, j = 0;
  while (i < a.size()) {
    if (j < b.size() && expr_cmp(a[i].first, b[j].first) == 0) {
      long e = a[i].second - b[j].second;
      if (e != 0) out.emplace_back(a[i].first, e);
      ++i;
      ++j;
    } else {
      out.push_back(a[i++]);
    }
  }
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) poly_add_term(out, mono_mul(ma, mb), ca * cb);
  return out;
}

Poly poly_one() {
  Poly p;
  p.emplace(FactorVec{}, Rational(1));
  return p;
}

Poly poly_pow(Poly base, long k) {
  Poly out = poly_one();
  while (k > 0) {
    if (k & 1) out = poly_mul(out, base);
    k >>= 1;
    if (k) base = poly_mul(base, base);
  }
  return out;
}

Expr rebuild_frac(const Frac& f);
Expr rebuild_poly(const Poly& p);

// Expands a denominator monomial into a numerator polynomial (sum atoms
// get multiplied out).
Poly mono_to_poly(const FactorVec& m) {
  Poly out = poly_one();
  for (const auto& [atom, e] : m) {
    if (atom.kind() == Kind::Sum) {
      Poly base;
      for (const Expr& term : atom.children()) {
        // Canonical sum terms are monomials over non-sum atoms.
        Rational coeff(1);
        FactorVec fv;
        std::function<void(const Expr&)> absorb = [&](const Expr& t) {
          switch (t.kind()) {
            case Kind::Rational: coeff *= t.value(); break;
            case Kind::Symbol:
            case Kind::Func: fv = mono_mul(fv, FactorVec{{t, 1}}); break;
            case Kind::IntPower: fv = mono_mul(fv, FactorVec{{t.child(0), t.exponent()}}); break;
            case Kind::Product:
              for (const Expr& k : t.children()) absorb(k);
              break;
            case Kind::Sum:
              throw std::logic_error("nested sum in canonical term");
          }
        };
        absorb(term);
        poly_add_term(base, fv, coeff);
      }
      out = poly_mul(out, poly_pow(base, e));
    } else {
      Poly unit;
      unit.emplace(FactorVec{{atom, e}}, Rational(1));
      out = poly_mul(out, unit);
    }
  }
  return out;
}

// Removes factors common to every numerator term and the denominator.
void cancel_common(Poly& num, FactorVec& den) {
  if (den.empty() || num.empty()) return;
  FactorVec common = num.begin()->first;
  for (const auto& [m, c] : num) {
    (void)c;
    FactorVec next;
    std::size_t i = 0, j = 0;
    while (i < common.size() && j < m.size()) {
      int cc = expr_cmp(common[i].first, m[j].first);
      if (cc < 0) {
        ++i;
      } else if (cc > 0) {
        ++j;
      } else {
        next.emplace_back(common[i].first, std::min(common[i].second, m[j].second));
        ++i;
        ++j;
      }
    }
    common.swap(next);
    if (common.empty()) return;
  }
  FactorVec shared;
  std::size_t i = 0, j = 0;
  while (i < common.size() && j < den.size()) {
    int cc = expr_cmp(common[i].first, den[j].first);
    if (cc < 0) {
      ++i;
    } else if (cc > 0) {
      ++j;
    } else {
      shared.emplace_back(common[i].first, std::min(common[i].second, den[j].second));
      ++i;
      ++j;
    }
  }
  if (shared.empty()) return;
  Poly out;
  for (const auto& [m, c] : num) poly_add_term(out, mono_div(m, shared), c);
  num.swap(out);
  den = mono_div(den, shared);
}

Rational poly_content(const Poly& p) {
  Integer ng(0), dl(1);
  for (const auto& [m, c] : p) {
    (void)m;
    mpz_gcd(ng.get_mpz_t(), ng.get_mpz_t(), c.get_num().get_mpz_t());
    mpz_lcm(dl.get_mpz_t(), dl.get_mpz_t(), c.get_den().get_mpz_t());
  }
  Rational content(ng, dl);
  content.canonicalize();
  return content;
}

Frac frac_rational(const Rational& q) {
  Frac f;
  if (q != 0) f.num.emplace(FactorVec{}, q);
  return f;
}

Frac frac_atom(const Expr& atom) {
  Frac f;
  f.num.emplace(FactorVec{{atom, 1}}, Rational(1));
  return f;
}

Frac frac_reciprocal(const Frac& a, long k /* > 0 */) {
  Frac out;
  if (a.num.empty()) throw std::domain_error("division by zero in expression");
  out.num = poly_pow(mono_to_poly(a.den), k);
  if (a.num.size() == 1) {
    const auto& [m, c] = *a.num.begin();
    out.den = mono_pow(m, k);
    Rational scale = rat_pow(c, -k);
    Poly scaled;
    for (const auto& [mm, cc] : out.num) scaled.emplace(mm, cc * scale);
    out.num.swap(scaled);
  } else {
    Rational content = poly_content(a.num);
    if (rat_sign(a.num.begin()->second) < 0) content = -content;
    Poly prim;
    for (const auto& [mm, cc] : a.num) prim.emplace(mm, cc / content);
    Expr atom = rebuild_poly(prim);
    out.den = FactorVec{{atom, k}};
    Rational scale = rat_pow(content, -k);
    Poly scaled;
    for (const auto& [mm, cc] : out.num) scaled.emplace(mm, cc * scale);
    out.num.swap(scaled);
  }
  cancel_common(out.num, out.den);
  return out;
}

Frac frac_mul(const Frac& a, const Frac& b) {
  Frac out;
  out.num = poly_mul(a.num, b.num);
  out.den = mono_mul(a.den, b.den);
  cancel_common(out.num, out.den);
  return out;
}

Frac frac_add(const Frac& a, const Frac& b) {
  Frac out;
  out.den = mono_lcm(a.den, b.den);
  Poly pa = poly_mul(a.num, mono_to_poly(mono_div(out.den, a.den)));
  Poly pb = poly_mul(b.num, mono_to_poly(mono_div(out.den, b.den)));
  out.num = std::move(pa);
  for (const auto& [m, c] : pb) poly_add_term(out.num, m, c);
  cancel_common(out.num, out.den);
  return out;
}

Frac frac_pow(const Frac& a, long k) {
  if (k == 0) return frac_rational(Rational(1));
  if (k < 0) return frac_reciprocal(a, -k);
  Frac out;
  out.num = poly_pow(a.num, k);
  out.den = mono_pow(a.den, k);
  return out;
}

Expr mark_canonical(Expr e) {
  const_cast<ExprNode*>(e.node())->canonical = true;
  return e;
}

Expr rebuild_term(const FactorVec& m, const Rational& c) {
  std::vector<Expr> factors;
  if (c != 1 || m.empty()) factors.push_back(Expr::rational(c));
  for (const auto& [atom, e] : m)
    factors.push_back(e == 1 ? atom : mark_canonical(Expr::pow(atom, e)));
  if (factors.size() == 1) return factors[0];
  std::sort(factors.begin(), factors.end(),
            [](const Expr& x, const Expr& y) { return expr_cmp(x, y) < 0; });
  return mark_canonical(Expr::product(std::move(factors)));
}

Expr rebuild_poly(const Poly& p) {
  if (p.empty()) return Expr::integer(0);
  std::vector<Expr> terms;
  terms.reserve(p.size());
  for (const auto& [m, c] : p) terms.push_back(rebuild_term(m, c));
  if (terms.size() == 1) return terms[0];
  return mark_canonical(Expr::sum(std::move(terms)));
}

Expr rebuild_frac(const Frac& f) {
  if (f.num.empty()) return Expr::integer(0);
  if (f.den.empty()) return rebuild_poly(f.num);
  if (f.num.size() == 1) {
    const auto& [m, c] = *f.num.begin();
    FactorVec merged = m;
    for (const auto& [atom, e] : f.den) merged = mono_mul(merged, FactorVec{{atom, -e}});
    return rebuild_term(merged, c);
  }
  std::vector<Expr> factors;
  factors.push_back(rebuild_poly(f.num));
  for (const auto& [atom, e] : f.den) factors.push_back(mark_canonical(Expr::pow(atom, -e)));
  std::sort(factors.begin(), factors.end(),
            [](const Expr& x, const Expr& y) { return expr_cmp(x, y) < 0; });
  return mark_canonical(Expr::product(std::move(factors)));
}

Expr fold_func(Func1 fn, const Expr& arg) {
  if (arg.is_rational() && arg.value() == 0) {
    switch (fn) {
      case Func1::Exp:
      case Func1::Cos:
      case Func1::Cosh: return Expr::integer(1);
      case Func1::Sin:
      case Func1::Sinh: return Expr::integer(0);
      case Func1::Ln: break;  // ln 0 stays symbolic; eval reports the domain error
    }
  }
  if (fn == Func1::Ln && arg.is_literal_one()) return Expr::integer(0);
  return mark_canonical(Expr::apply(fn, arg));
}

Frac to_frac(const Expr& e);

// Decomposes an already-canonical expression without re-expanding it.
Frac frac_of_canonical(const Expr& e) {
  switch (e.kind()) {
    case Kind::Rational: return frac_rational(e.value());
    case Kind::Symbol:
    case Kind::Func: return frac_atom(e);
    case Kind::IntPower: {
      Frac f;
      if (e.exponent() > 0) {
        f.num.emplace(FactorVec{{e.child(0), e.exponent()}}, Rational(1));
      } else {
        f.num = poly_one();
        f.den = FactorVec{{e.child(0), -e.exponent()}};
      }
      return f;
    }
    case Kind::Product: {
      Rational coeff(1);
      FactorVec up, down;
      Poly sumfac;
      bool have_sum = false;
      for (const Expr& k : e.children()) {
        switch (k.kind()) {
          case Kind::Rational: coeff *= k.value(); break;
          case Kind::Symbol:
          case Kind::Func: up = mono_mul(up, FactorVec{{k, 1}}); break;
          case Kind::IntPower:
            if (k.exponent() > 0)
              up = mono_mul(up, FactorVec{{k.child(0), k.exponent()}});
            else
              down = mono_mul(down, FactorVec{{k.child(0), -k.exponent()}});
            break;
          case Kind::Sum:
            sumfac = frac_of_canonical(k).num;
            have_sum = true;
            break;
          case Kind::Product:
            throw std::logic_error("nested product in canonical form");
        }
      }
      Frac f;
      Poly base;
      base.emplace(up, coeff);
      f.num = have_sum ? poly_mul(base, sumfac) : base;
      f.den = down;
      return f;
    }
    case Kind::Sum: {
      Poly p;
      for (const Expr& term : e.children()) {
        Frac tf = frac_of_canonical(term);
        for (const auto& [m, c] : tf.num) poly_add_term(p, m, c);
      }
      Frac f;
      f.num = std::move(p);
      return f;
    }
  }
  return frac_rational(Rational(0));
}

Frac to_frac(const Expr& e) {
  if (e.is_canonical()) return frac_of_canonical(e);
  switch (e.kind()) {
    case Kind::Rational: return frac_rational(e.value());
    case Kind::Symbol: return frac_atom(e);
    case Kind::Func: {
      Expr arg = normalize(e.child(0));
      Expr folded = fold_func(e.func(), arg);
      if (folded.kind() != Kind::Func) return to_frac(folded);
      return frac_atom(folded);
    }
    case Kind::IntPower: {
      Expr base = e.child(0);
      long k = e.exponent();
      if (base.kind() == Kind::Rational) {
        return frac_rational(rat_pow(base.value(), k));
      }
      // (b^m)^n -> b^(m n) on atoms; recurse through to_frac otherwise.
      Frac fb = to_frac(base);
      return frac_pow(fb, k);
    }
    case Kind::Product: {
      Frac acc = frac_rational(Rational(1));
      for (const Expr& k : e.children()) {
        acc = frac_mul(acc, to_frac(k));
        if (acc.num.empty()) return acc;  // hard zero
      }
      return acc;
    }
    case Kind::Sum: {
      Frac acc = frac_rational(Rational(0));
      for (const Expr& k : e.children()) acc = frac_add(acc, to_frac(k));
      return acc;
    }
  }
  return frac_rational(Rational(0));
}

}  // namespace

Expr normalize(const Expr& e) {
  if (e.is_canonical()) return e;
  return rebuild_frac(to_frac(e));
}

std::pair<Expr, Expr> as_fraction(const Expr& e) {
  Frac f = to_frac(e);
  Frac numpart;
  numpart.num = f.num;
  Expr num = rebuild_frac(numpart);
  Frac denpart;
  denpart.num = mono_to_poly(f.den);
  Expr den = rebuild_frac(denpart);
  return {num, den};
}

// ---------------------------------------------------------------------------
// Calculus and substitution.
// ---------------------------------------------------------------------------

namespace {

Expr diff_raw(const Expr& e, const std::string& var) {
  switch (e.kind()) {
    case Kind::Rational: return Expr::integer(0);
    case Kind::Symbol: return e.name() == var ? Expr::integer(1) : Expr::integer(0);
    case Kind::Sum: {
      std::vector<Expr> terms;
      for (const Expr& k : e.children()) terms.push_back(diff_raw(k, var));
      return Expr::sum(std::move(terms));
    }
    case Kind::Product: {
      std::vector<Expr> terms;
      const auto& kids = e.children();
      for (std::size_t i = 0; i < kids.size(); ++i) {
        std::vector<Expr> factors;
        for (std::size_t j = 0; j < kids.size(); ++j)
          factors.push_back(i == j ? diff_raw(kids[j], var) : kids[j]);
        terms.push_back(Expr::product(std::move(factors)));
      }
      return Expr::sum(std::move(terms));
    }
    case Kind::IntPower: {
      const Expr& b = e.child(0);
      long k = e.exponent();
      if (k == 0) return Expr::integer(0);
      return Expr::product({Expr::integer(k), Expr::pow(b, k - 1), diff_raw(b, var)});
    }
    case Kind::Func: {
      const Expr& u = e.child(0);
      Expr du = diff_raw(u, var);
      switch (e.func()) {
        case Func1::Exp: return Expr::product({Expr::apply(Func1::Exp, u), du});
        case Func1::Ln: return Expr::product({Expr::pow(u, -1), du});
        case Func1::Sin: return Expr::product({Expr::apply(Func1::Cos, u), du});
        case Func1::Cos:
          return Expr::product({Expr::integer(-1), Expr::apply(Func1::Sin, u), du});
        case Func1::Sinh: return Expr::product({Expr::apply(Func1::Cosh, u), du});
        case Func1::Cosh: return Expr::product({Expr::apply(Func1::Sinh, u), du});
      }
      return Expr::integer(0);
    }
  }
  return Expr::integer(0);
}

Expr subst_raw(const Expr& e, const std::map<std::string, Expr>& bindings) {
  switch (e.kind()) {
    case Kind::Rational: return e;
    case Kind::Symbol: {
      auto it = bindings.find(e.name());
      return it == bindings.end() ? e : it->second;
    }
    case Kind::Func: return Expr::apply(e.func(), subst_raw(e.child(0), bindings));
    case Kind::IntPower: return Expr::pow(subst_raw(e.child(0), bindings), e.exponent());
    case Kind::Product:
    case Kind::Sum: {
      std::vector<Expr> kids;
      for (const Expr& k : e.children()) kids.push_back(subst_raw(k, bindings));
      return e.kind() == Kind::Product ? Expr::product(std::move(kids))
                                       : Expr::sum(std::move(kids));
    }
  }
  return e;
}

}  // namespace

Expr differentiate(const Expr& e, const std::string& var) {
  return normalize(diff_raw(e, var));
}

Expr substitute(const Expr& e, const std::map<std::string, Expr>& bindings) {
  if (bindings.empty()) return normalize(e);
  return normalize(subst_raw(e, bindings));
}

Expr substitute(const Expr& e, const std::map<std::string, Rational>& bindings) {
  std::map<std::string, Expr> b;
  for (const auto& [k, v] : bindings) b.emplace(k, Expr::rational(v));
  return substitute(e, b);
}

void collect_symbols(const Expr& e, std::set<std::string>& out) {
  switch (e.kind()) {
    case Kind::Rational: return;
    case Kind::Symbol: out.insert(e.name()); return;
    default:
      for (const Expr& k : e.children()) collect_symbols(k, out);
  }
}

std::set<std::string> free_symbols(const Expr& e) {
  std::set<std::string> out;
  collect_symbols(e, out);
  return out;
}

bool contains_func(const Expr& e) {
  if (e.kind() == Kind::Func) return true;
  for (const Expr& k : e.children())
    if (contains_func(k)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Printing and parsing.
// ---------------------------------------------------------------------------

namespace {

void print_node(const Expr& e, std::ostream& os);

// Prints the term with its sign stripped; returns true if it was negative.
bool print_term_signed(const Expr& t, std::ostream& os) {
  if (t.kind() == Kind::Rational) {
    if (t.value() < 0) {
      os << rat_to_string(Rational(-t.value()));
      return true;
    }
    print_node(t, os);
    return false;
  }
  if (t.kind() == Kind::Product && t.child(0).kind() == Kind::Rational &&
      t.child(0).value() < 0) {
    Rational c = -t.child(0).value();
    std::vector<Expr> rest(t.children().begin() + 1, t.children().end());
    Expr flipped =
        c == 1 ? Expr::product(rest)
               : Expr::product([&] {
                   std::vector<Expr> f{Expr::rational(c)};
                   f.insert(f.end(), rest.begin(), rest.end());
                   return f;
                 }());
    print_node(flipped, os);
    return true;
  }
  print_node(t, os);
  return false;
}

void print_node(const Expr& e, std::ostream& os) {
  switch (e.kind()) {
    case Kind::Rational: os << rat_to_string(e.value()); return;
    case Kind::Symbol: os << e.name(); return;
    case Kind::Func:
      os << func_name(e.func()) << '(';
      print_node(e.child(0), os);
      os << ')';
      return;
    case Kind::IntPower: {
      const Expr& b = e.child(0);
      bool wrap = b.kind() != Kind::Symbol && b.kind() != Kind::Func;
      if (wrap) os << '(';
      print_node(b, os);
      if (wrap) os << ')';
      os << '^' << e.exponent();
      return;
    }
    case Kind::Product: {
      os << '(';
      bool first = true;
      for (const Expr& k : e.children()) {
        if (!first) os << " * ";
        first = false;
        print_node(k, os);
      }
      os << ')';
      return;
    }
    case Kind::Sum: {
      os << '(';
      bool first = true;
      for (const Expr& k : e.children()) {
        std::ostringstream tmp;
        bool neg = print_term_signed(k, tmp);
        if (first) {
          if (neg) os << '-';
          first = false;
        } else {
          os << (neg ? " - " : " + ");
        }
        os << tmp.str();
      }
      os << ')';
      return;
    }
  }
}

class Parser {
 public:
  explicit Parser(const std::string& s) : s_(s) {}

  Expr parse() {
    Expr e = expr();
    skip();
    if (pos_ != s_.size()) fail("trailing input");
    return e;
  }

 private:
  void fail(const std::string& msg) {
    throw ParseError(msg + " at offset " + std::to_string(pos_) + " in \"" + s_ + "\"");
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  char peek() {
    skip();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  Expr expr() {
    Expr acc = term();
    for (;;) {
      if (eat('+')) {
        acc = acc + term();
      } else if (eat('-')) {
        acc = acc - term();
      } else {
        return acc;
      }
    }
  }

  Expr term() {
    Expr acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        acc = acc * Expr::pow(unary(), -1);
      } else {
        return acc;
      }
    }
  }

  Expr unary() {
    if (eat('-')) return -unary();
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (eat('^')) {
      bool neg = eat('-');
      std::string digits = number_token();
      long e = std::stol(digits);
      return Expr::pow(base, neg ? -e : e);
    }
    return base;
  }

  std::string number_token() {
    skip();
    std::size_t start = pos_;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    if (start == pos_) fail("expected number");
    return s_.substr(start, pos_ - start);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) {
      return Expr::rational(Rational(Integer(number_token())));
    }
    if (c == '(') {
      ++pos_;
      Expr e = expr();
      if (!eat(')')) fail("expected ')'");
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() &&
             (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
        ++pos_;
      std::string ident = s_.substr(start, pos_ - start);
      static const std::pair<const char*, Func1> funcs[] = {
          {"exp", Func1::Exp}, {"ln", Func1::Ln},     {"sin", Func1::Sin},
          {"cos", Func1::Cos}, {"sinh", Func1::Sinh}, {"cosh", Func1::Cosh}};
      for (const auto& [name, fn] : funcs) {
        if (ident == name) {
          if (!eat('(')) fail("expected '(' after function name");
          Expr arg = expr();
          if (!eat(')')) fail("expected ')'");
          return Expr::apply(fn, arg);
        }
      }
      return Expr::symbol(ident);
    }
    fail("unexpected character");
    return Expr::integer(0);
  }

  const std::string& s_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string to_string(const Expr& e) {
  std::ostringstream os;
  print_node(e, os);
  return os.str();
}

Expr parse_expr(const std::string& text) { return Parser(text).parse(); }

}  // namespace jacobi
