#include "jacobi/poly.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <optional>
#include <sstream>

namespace jacobi {

void MPoly::add_term(const Mono& m, const Rational& c) {
  if (c == 0) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MPoly MPoly::constant(std::size_t nvars, const Rational& c) {
  MPoly p(nvars);
  p.add_term(Mono(nvars, 0), c);
  return p;
}

MPoly MPoly::variable(std::size_t nvars, std::size_t index) {
  MPoly p(nvars);
  Mono m(nvars, 0);
  m[index] = 1;
  p.add_term(m, Rational(1));
  return p;
}

long MPoly::degree() const {
  long best = -1;
  for (const auto& [m, c] : terms_) {
    (void)c;
    long d = 0;
    for (unsigned e : m) d += e;
    best = std::max(best, d);
  }
  return best;
}

long MPoly::degree_in(std::size_t var) const {
  long best = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    best = std::max(best, static_cast<long>(m[var]));
  }
  return best;
}

bool MPoly::univariate_in(std::size_t& var) const {
  bool found = false;
  std::size_t v = 0;
  for (const auto& [m, c] : terms_) {
    (void)c;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (found && v != i) return false;
      found = true;
      v = i;
    }
  }
  var = found ? v : nvars_;  // nvars_ marks "constant"
  return true;
}

MPoly MPoly::operator+(const MPoly& o) const {
  MPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

MPoly MPoly::operator-(const MPoly& o) const {
  MPoly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
  return out;
}

MPoly MPoly::operator*(const MPoly& o) const {
  MPoly out(nvars_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Mono m(nvars_);
      for (std::size_t i = 0; i < nvars_; ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

MPoly MPoly::scaled(const Rational& c) const {
  MPoly out(nvars_);
  if (c == 0) return out;
  for (const auto& [m, cc] : terms_) out.terms_.emplace(m, cc * c);
  return out;
}

MPoly MPoly::monic() const {
  if (zero()) return *this;
  return scaled(Rational(1) / leading_coeff());
}

MPoly MPoly::from_expr(const Expr& e, const std::vector<std::string>& vars) {
  Expr n = normalize(e);
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < vars.size(); ++i) index.emplace(vars[i], i);
  MPoly out(vars.size());
  std::function<MPoly(const Expr&)> conv = [&](const Expr& x) -> MPoly {
    switch (x.kind()) {
      case Kind::Rational: return MPoly::constant(vars.size(), x.value());
      case Kind::Symbol: {
        auto it = index.find(x.name());
        if (it == index.end()) throw NotPolynomial("symbol " + x.name() + " is not an unknown");
        return MPoly::variable(vars.size(), it->second);
      }
      case Kind::Func: throw NotPolynomial("transcendental function in polynomial context");
      case Kind::IntPower: {
        if (x.exponent() < 0) throw NotPolynomial("negative power in polynomial context");
        MPoly b = conv(x.child(0));
        MPoly acc = MPoly::constant(vars.size(), Rational(1));
        for (long i = 0; i < x.exponent(); ++i) acc = acc * b;
        return acc;
      }
      case Kind::Product: {
        MPoly acc = MPoly::constant(vars.size(), Rational(1));
        for (const Expr& k : x.children()) acc = acc * conv(k);
        return acc;
      }
      case Kind::Sum: {
        MPoly acc(vars.size());
        for (const Expr& k : x.children()) acc = acc + conv(k);
        return acc;
      }
    }
    return MPoly(vars.size());
  };
  return conv(n);
}

Expr MPoly::to_expr(const std::vector<std::string>& vars) const {
  std::vector<Expr> terms;
  for (const auto& [m, c] : terms_) {
    std::vector<Expr> factors{Expr::rational(c)};
    for (std::size_t i = 0; i < nvars_; ++i)
      if (m[i] > 0) factors.push_back(Expr::pow(Expr::symbol(vars[i]), m[i]));
    terms.push_back(Expr::product(std::move(factors)));
  }
  return normalize(Expr::sum(std::move(terms)));
}

// ---------------------------------------------------------------------------
// Buchberger.
// ---------------------------------------------------------------------------

namespace {

bool mono_divides(const MPoly::Mono& a, const MPoly::Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

MPoly::Mono mono_div(const MPoly::Mono& a, const MPoly::Mono& b) {
  MPoly::Mono out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

MPoly::Mono mono_lcm(const MPoly::Mono& a, const MPoly::Mono& b) {
  MPoly::Mono out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::max(a[i], b[i]);
  return out;
}

bool mono_coprime(const MPoly::Mono& a, const MPoly::Mono& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > 0 && b[i] > 0) return false;
  return true;
}

MPoly mono_poly(std::size_t nvars, const MPoly::Mono& m, const Rational& c) {
  MPoly p(nvars);
  p.add_term(m, c);
  return p;
}

/// Full normal form of p modulo the basis.
MPoly normal_form(MPoly p, const std::vector<MPoly>& basis) {
  MPoly rem(p.nvars());
  while (!p.zero()) {
    bool reduced = false;
    const auto& lm = p.leading_mono();
    for (const MPoly& g : basis) {
      if (g.zero()) continue;
      if (mono_divides(g.leading_mono(), lm)) {
        Rational c = p.leading_coeff() / g.leading_coeff();
        p = p - g * mono_poly(p.nvars(), mono_div(lm, g.leading_mono()), c);
        reduced = true;
        break;
      }
    }
    if (!reduced) {
      rem.add_term(p.leading_mono(), p.leading_coeff());
      MPoly head = mono_poly(p.nvars(), p.leading_mono(), p.leading_coeff());
      p = p - head;
    }
  }
  return rem;
}

MPoly s_poly(const MPoly& f, const MPoly& g) {
  auto l = mono_lcm(f.leading_mono(), g.leading_mono());
  MPoly a = f * mono_poly(f.nvars(), mono_div(l, f.leading_mono()),
                          Rational(1) / f.leading_coeff());
  MPoly b = g * mono_poly(g.nvars(), mono_div(l, g.leading_mono()),
                          Rational(1) / g.leading_coeff());
  return a - b;
}

}  // namespace

std::vector<MPoly> groebner(std::vector<MPoly> gens) {
  std::vector<MPoly> basis;
  for (MPoly& g : gens)
    if (!g.zero()) basis.push_back(g.monic());
  if (basis.empty()) return basis;

  std::deque<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t j = i + 1; j < basis.size(); ++j) pairs.emplace_back(i, j);

  while (!pairs.empty()) {
    auto [i, j] = pairs.front();
    pairs.pop_front();
    if (mono_coprime(basis[i].leading_mono(), basis[j].leading_mono())) continue;
    MPoly s = normal_form(s_poly(basis[i], basis[j]), basis);
    if (s.zero()) continue;
    s = s.monic();
    std::size_t k = basis.size();
    for (std::size_t t = 0; t < k; ++t) pairs.emplace_back(t, k);
    basis.push_back(std::move(s));
    if (basis.size() > 2000) throw std::runtime_error("groebner basis blow-up");
  }

  // Inter-reduce to the unique reduced basis.
  std::vector<MPoly> reduced;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      if (mono_divides(basis[j].leading_mono(), basis[i].leading_mono()) &&
          !(j > i && basis[j].leading_mono() == basis[i].leading_mono())) {
        redundant = true;
        break;
      }
    }
    if (!redundant) reduced.push_back(basis[i]);
  }
  for (std::size_t i = 0; i < reduced.size(); ++i) {
    std::vector<MPoly> others;
    for (std::size_t j = 0; j < reduced.size(); ++j)
      if (j != i) others.push_back(reduced[j]);
    reduced[i] = normal_form(reduced[i], others);
    if (!reduced[i].zero()) reduced[i] = reduced[i].monic();
  }
  reduced.erase(std::remove_if(reduced.begin(), reduced.end(),
                               [](const MPoly& p) { return p.zero(); }),
                reduced.end());
  std::sort(reduced.begin(), reduced.end(), [](const MPoly& a, const MPoly& b) {
    return MPoly::LexGreater{}(a.leading_mono(), b.leading_mono());
  });
  return reduced;
}

bool zero_dimensional(const std::vector<MPoly>& gb, std::size_t nvars) {
  for (std::size_t v = 0; v < nvars; ++v) {
    bool found = false;
    for (const MPoly& g : gb) {
      const auto& lm = g.leading_mono();
      bool pure = lm[v] > 0;
      for (std::size_t i = 0; pure && i < nvars; ++i)
        if (i != v && lm[i] > 0) pure = false;
      if (pure) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Q(sqrt(d)) arithmetic.
// ---------------------------------------------------------------------------

namespace {

void check_same_field(const AlgValue& x, const AlgValue& y) {
  if (x.d != 0 && y.d != 0 && x.d != y.d)
    throw std::runtime_error("mixed quadratic extensions");
}

Integer field_of(const AlgValue& x, const AlgValue& y) { return x.d != 0 ? x.d : y.d; }

}  // namespace

AlgValue operator+(const AlgValue& x, const AlgValue& y) {
  check_same_field(x, y);
  return AlgValue(x.a + y.a, x.b + y.b, field_of(x, y));
}

AlgValue operator-(const AlgValue& x, const AlgValue& y) {
  check_same_field(x, y);
  return AlgValue(x.a - y.a, x.b - y.b, field_of(x, y));
}

AlgValue operator*(const AlgValue& x, const AlgValue& y) {
  check_same_field(x, y);
  Integer d = field_of(x, y);
  return AlgValue(x.a * y.a + x.b * y.b * Rational(d), x.a * y.b + x.b * y.a, d);
}

AlgValue alg_div(const AlgValue& x, const AlgValue& y) {
  check_same_field(x, y);
  if (y.is_zero()) throw std::domain_error("division by zero algebraic value");
  Integer d = field_of(x, y);
  Rational nrm = y.a * y.a - y.b * y.b * Rational(d);
  if (nrm == 0) throw std::domain_error("division by zero norm");
  AlgValue conj(y.a, -y.b, d);
  AlgValue prod = x * conj;
  return AlgValue(prod.a / nrm, prod.b / nrm, d);
}

AlgValue alg_pow(const AlgValue& x, unsigned e) {
  AlgValue out(Rational(1));
  AlgValue base = x;
  while (e) {
    if (e & 1) out = out * base;
    e >>= 1;
    if (e) base = base * base;
  }
  return out;
}

bool operator==(const AlgValue& x, const AlgValue& y) {
  if (x.b == 0 && y.b == 0) return x.a == y.a;
  return x.a == y.a && x.b == y.b && x.d == y.d;
}

std::string AlgValue::str() const {
  if (is_rational()) return rat_to_string(a);
  std::ostringstream os;
  os << rat_to_string(a) << (b < 0 ? " - " : " + ") << rat_to_string(rat_abs(b)) << "*sqrt("
     << d.get_str() << ")";
  return os.str();
}

// ---------------------------------------------------------------------------
// Back-substitution solver.
// ---------------------------------------------------------------------------

namespace {

// Univariate polynomial with AlgValue coefficients, ascending degree.
using UniPoly = std::vector<AlgValue>;

void uni_trim(UniPoly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

UniPoly uni_rem(UniPoly a, const UniPoly& b) {
  uni_trim(a);
  while (a.size() >= b.size() && !a.empty()) {
    AlgValue q = alg_div(a.back(), b.back());
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] = a[i + shift] - q * b[i];
    uni_trim(a);
  }
  return a;
}

UniPoly uni_gcd(UniPoly a, UniPoly b) {
  uni_trim(a);
  uni_trim(b);
  while (!b.empty()) {
    UniPoly r = uni_rem(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    AlgValue lead = a.back();
    for (AlgValue& c : a) c = alg_div(c, lead);
  }
  return a;
}

// Largest square divisor extraction: n = s^2 * d with d square-reduced by
// trial division (small factors only; a leftover composite stays inside d).
void extract_square(const Integer& n, Integer& s, Integer& d) {
  s = 1;
  d = 1;
  Integer m = n;
  if (m < 0) throw std::logic_error("extract_square of negative");
  for (Integer p = 2; p * p <= m && p < 100000; ++p == 2 ? p = 3 : p += 2) {
    Integer p2 = p * p;
    while (mpz_divisible_p(m.get_mpz_t(), p2.get_mpz_t())) {
      m /= p2;
      s *= p;
    }
    if (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      d *= p;
    }
  }
  if (mpz_perfect_square_p(m.get_mpz_t())) {
    Integer r;
    mpz_sqrt(r.get_mpz_t(), m.get_mpz_t());
    s *= r;
  } else {
    d *= m;
  }
}

std::vector<Integer> divisors_of(const Integer& n, bool& ok) {
  ok = true;
  Integer m = rat_abs(Rational(n)).get_num();
  if (m == 0) {
    ok = false;
    return {};
  }
  if (m > Integer("1000000000000000")) {
    ok = false;
    return {};
  }
  std::vector<std::pair<Integer, unsigned>> factors;
  for (Integer p = 2; p * p <= m; ++p == 2 ? p = 3 : p += 2) {
    unsigned e = 0;
    while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
      m /= p;
      ++e;
    }
    if (e) factors.emplace_back(p, e);
    if (p > 1000000) break;
  }
  if (m > 1) factors.emplace_back(m, 1);
  std::vector<Integer> divs{Integer(1)};
  for (const auto& [p, e] : factors) {
    std::size_t sz = divs.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) divs.push_back(divs[i] * pk);
    }
  }
  return divs;
}

AlgValue uni_eval(const UniPoly& p, const AlgValue& x) {
  AlgValue acc;
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

/// Roots of a univariate polynomial. Fills `roots`; clears `complete` when a
/// factor resists the supported tower (rationals + one square root).
void uni_roots(const UniPoly& poly, const Integer& field_d, std::vector<AlgValue>& roots,
               bool& complete) {
  UniPoly p = poly;
  uni_trim(p);
  if (p.empty()) {
    complete = false;  // identically zero: the variable is unconstrained here
    return;
  }
  // x = 0 roots
  std::size_t zshift = 0;
  while (zshift < p.size() && p[zshift].is_zero()) ++zshift;
  if (zshift > 0) {
    roots.push_back(AlgValue(Rational(0)));
    p.erase(p.begin(), p.begin() + zshift);
  }
  if (p.size() <= 1) return;

  bool rational_coeffs = true;
  for (const AlgValue& c : p)
    if (!c.is_rational()) rational_coeffs = false;

  if (rational_coeffs) {
    // rational-root deflation
    bool progress = true;
    while (progress && p.size() > 2) {
      progress = false;
      Integer den(1);
      for (const AlgValue& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.a.get_den().get_mpz_t());
      std::vector<Integer> ic;
      for (const AlgValue& c : p) ic.push_back(Integer(c.a * Rational(den)));
      bool ok0 = false, okn = false;
      auto d0 = divisors_of(ic.front(), ok0);
      auto dn = divisors_of(ic.back(), okn);
      if (!ok0 || !okn) break;
      for (const Integer& pp : d0) {
        for (const Integer& qq : dn) {
          for (int sign : {1, -1}) {
            Rational cand(sign * pp, qq);
            cand.canonicalize();
            if (uni_eval(p, AlgValue(cand)).is_zero()) {
              roots.push_back(AlgValue(cand));
              // synthetic division by (x - cand)
              UniPoly q(p.size() - 1);
              AlgValue carry = p.back();
              for (std::size_t i = p.size() - 1; i-- > 0;) {
                q[i] = carry;
                carry = p[i] + carry * AlgValue(cand);
              }
              p = q;
              uni_trim(p);
              progress = true;
              goto deflated;
            }
          }
        }
      }
    deflated:;
    }
  }
  if (p.size() == 2) {  // linear
    roots.push_back(alg_div(AlgValue(Rational(0)) - p[0], p[1]));
    return;
  }
  if (p.size() == 3 && rational_coeffs) {  // quadratic over Q
    Rational a = p[2].a, b = p[1].a, c = p[0].a;
    Rational disc = b * b - 4 * a * c;
    if (disc < 0) return;  // no real roots
    if (disc == 0) {
      roots.push_back(AlgValue(-b / (2 * a)));
      return;
    }
    // sqrt(P/Q) = sqrt(P*Q)/Q
    Integer pq = disc.get_num() * disc.get_den();
    Integer s, d;
    extract_square(pq, s, d);
    Rational scale(s, disc.get_den());
    scale.canonicalize();
    if (d == 1) {
      roots.push_back(AlgValue((-b + scale) / (2 * a)));
      roots.push_back(AlgValue((-b - scale) / (2 * a)));
      return;
    }
    if (field_d != 0 && field_d != d) {
      complete = false;  // would need a second extension
      return;
    }
    roots.push_back(AlgValue(-b / (2 * a), scale / (2 * a), d));
    roots.push_back(AlgValue(-b / (2 * a), -scale / (2 * a), d));
    return;
  }
  complete = false;
}

struct SolveContext {
  std::vector<MPoly> basis;
  std::size_t nvars;
  std::vector<Solution> solutions;
  bool complete = true;
  const std::vector<std::string>* names = nullptr;
};

AlgValue eval_mpoly(const MPoly& p, const std::vector<AlgValue>& point) {
  AlgValue acc;
  for (const auto& [m, c] : p.terms()) {
    AlgValue t{Rational(c)};
    for (std::size_t i = 0; i < m.size(); ++i)
      if (m[i]) t = t * alg_pow(point[i], m[i]);
    acc = acc + t;
  }
  return acc;
}

// Substitutes the assigned tail variables; `assigned[i]` is meaningful when
// mask[i] is true. Returns coefficients of the result seen as univariate in
// `var` when it only involves `var`; otherwise nullopt.
std::optional<UniPoly> as_univariate(const MPoly& p, std::size_t var,
                                     const std::vector<AlgValue>& assigned,
                                     const std::vector<bool>& mask) {
  UniPoly out;
  for (const auto& [m, c] : p.terms()) {
    AlgValue coeff{Rational(c)};
    unsigned deg = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == 0) continue;
      if (i == var) {
        deg = m[i];
      } else if (mask[i]) {
        coeff = coeff * alg_pow(assigned[i], m[i]);
      } else {
        return std::nullopt;
      }
    }
    if (out.size() <= deg) out.resize(deg + 1);
    out[deg] = out[deg] + coeff;
  }
  uni_trim(out);
  return out;
}

void solve_rec(SolveContext& ctx, std::vector<AlgValue>& assigned, std::vector<bool>& mask,
               Integer field_d, std::size_t remaining) {
  if (remaining == 0) {
    for (const MPoly& g : ctx.basis)
      if (!eval_mpoly(g, assigned).is_zero()) return;
    Solution s;
    for (std::size_t i = 0; i < ctx.nvars; ++i) s.values[(*ctx.names)[i]] = assigned[i];
    ctx.solutions.push_back(std::move(s));
    return;
  }
  // Lex basis: eliminate from the lowest variable upward.
  for (std::size_t v = ctx.nvars; v-- > 0;) {
    if (mask[v]) continue;
    // Gather polynomials that become univariate in v.
    UniPoly g;
    bool any = false;
    for (const MPoly& b : ctx.basis) {
      auto u = as_univariate(b, v, assigned, mask);
      if (!u) continue;
      uni_trim(*u);
      if (u->empty()) continue;  // vanishes identically under this assignment
      any = true;
      g = g.empty() ? *u : uni_gcd(g, *u);
      if (g.size() == 1) break;
    }
    if (!any) continue;  // try another variable
    if (g.size() == 1) return;  // contradiction: nonzero constant
    std::vector<AlgValue> roots;
    uni_roots(g, field_d, roots, ctx.complete);
    for (const AlgValue& r : roots) {
      assigned[v] = r;
      mask[v] = true;
      Integer next_d = field_d != 0 ? field_d : r.d;
      solve_rec(ctx, assigned, mask, next_d, remaining - 1);
      mask[v] = false;
    }
    return;
  }
  // No variable could be eliminated.
  ctx.complete = false;
}

}  // namespace

SolveResult solve_determined(const std::vector<Expr>& polys,
                             const std::vector<std::string>& unknowns,
                             const std::vector<Expr>& nonzero) {
  std::vector<MPoly> gens;
  for (const Expr& e : polys) gens.push_back(MPoly::from_expr(e, unknowns));
  std::vector<MPoly> gb = groebner(std::move(gens));

  SolveResult out;
  if (gb.size() == 1 && gb[0].degree() == 0) return out;  // inconsistent: no solutions
  auto pinned_vars = [&gb, &unknowns]() {
    std::vector<bool> pinned(unknowns.size(), false);
    for (const MPoly& g : gb) {
      const auto& lm = g.leading_mono();
      int nz = -1;
      bool pure = true;
      for (std::size_t i = 0; i < lm.size(); ++i) {
        if (lm[i] == 0) continue;
        if (nz >= 0) pure = false;
        nz = static_cast<int>(i);
      }
      if (pure && nz >= 0) pinned[nz] = true;
    }
    return pinned;
  };
  if (gb.empty()) {
    if (unknowns.empty()) {
      out.solutions.push_back(Solution{});
      return out;
    }
    PositiveDimensional err("trivial ideal: every assignment solves the system");
    err.unpinned = unknowns;
    throw err;
  }
  if (!zero_dimensional(gb, unknowns.size())) {
    PositiveDimensional err("solution set has positive dimension; bind more parameters");
    std::vector<bool> pinned = pinned_vars();
    for (std::size_t i = 0; i < unknowns.size(); ++i)
      if (!pinned[i]) err.unpinned.push_back(unknowns[i]);
    throw err;
  }

  SolveContext ctx;
  ctx.basis = gb;
  ctx.nvars = unknowns.size();
  ctx.names = &unknowns;
  std::vector<AlgValue> assigned(unknowns.size());
  std::vector<bool> mask(unknowns.size(), false);
  solve_rec(ctx, assigned, mask, Integer(0), unknowns.size());

  // Re-verify against the original inputs and apply side conditions.
  std::vector<MPoly> originals;
  for (const Expr& e : polys) originals.push_back(MPoly::from_expr(e, unknowns));
  std::vector<MPoly> conds;
  for (const Expr& e : nonzero) conds.push_back(MPoly::from_expr(e, unknowns));
  for (Solution& s : ctx.solutions) {
    std::vector<AlgValue> point;
    for (const std::string& n : unknowns) point.push_back(s.values[n]);
    bool ok = true;
    for (const MPoly& p : originals)
      if (!eval_mpoly(p, point).is_zero()) ok = false;
    for (const MPoly& c : conds)
      if (eval_mpoly(c, point).is_zero()) ok = false;
    if (ok) out.solutions.push_back(std::move(s));
  }
  out.complete = ctx.complete;

  std::sort(out.solutions.begin(), out.solutions.end(), [](const Solution& x, const Solution& y) {
    auto it = x.values.begin();
    auto jt = y.values.begin();
    for (; it != x.values.end() && jt != y.values.end(); ++it, ++jt) {
      const AlgValue& a = it->second;
      const AlgValue& b = jt->second;
      if (a.is_rational() != b.is_rational()) return a.is_rational();
      if (a.a != b.a) return a.a < b.a;
      if (a.b != b.b) return a.b < b.b;
    }
    return false;
  });
  return out;
}

LinearSolution solve_linear(std::vector<std::vector<Rational>> m, std::vector<Rational> rhs) {
  LinearSolution out;
  std::size_t rows = m.size();
  std::size_t cols = rows ? m[0].size() : 0;
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    std::swap(rhs[piv], rhs[r]);
    Rational inv = Rational(1) / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= inv;
    rhs[r] *= inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
      rhs[i] -= f * rhs[r];
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (rhs[i] != 0) return out;  // inconsistent
  out.consistent = true;
  out.particular.assign(cols, Rational(0));
  for (std::size_t i = 0; i < pivot_col.size(); ++i) out.particular[pivot_col[i]] = rhs[i];
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_col) is_pivot[c] = true;
  for (std::size_t c = 0; c < cols; ++c) {
    if (is_pivot[c]) continue;
    std::vector<Rational> v(cols, Rational(0));
    v[c] = 1;
    for (std::size_t i = 0; i < pivot_col.size(); ++i) v[pivot_col[i]] = -m[i][c];
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

}  // namespace jacobi
