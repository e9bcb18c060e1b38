#include "doctest.h"

#include <map>

#include "jacobi/numeric.hpp"

using namespace jacobi;

namespace {

Expr sym(const char* s) { return Expr::symbol(s); }

// Independent oracle: dense multivariate polynomial over Q built straight
// from the raw tree, without going through the canonicalizer.
using OracleMono = std::map<std::string, long>;
using OraclePoly = std::map<OracleMono, Rational>;

void oadd(OraclePoly& p, const OracleMono& m, const Rational& c) {
  if (c == 0) return;
  auto it = p.find(m);
  if (it == p.end())
    p.emplace(m, c);
  else {
    it->second += c;
    if (it->second == 0) p.erase(it);
  }
}

OraclePoly omul(const OraclePoly& a, const OraclePoly& b) {
  OraclePoly out;
  for (const auto& [ma, ca] : a)
    for (const auto& [mb, cb] : b) {
      OracleMono m = ma;
      for (const auto& [s, e] : mb) m[s] += e;
      for (auto it = m.begin(); it != m.end();)
        it = it->second == 0 ? m.erase(it) : std::next(it);
      oadd(out, m, ca * cb);
    }
  return out;
}

OraclePoly to_oracle(const Expr& e) {
  switch (e.kind()) {
    case Kind::Rational: {
      OraclePoly p;
      oadd(p, {}, e.value());
      return p;
    }
    case Kind::Symbol: {
      OraclePoly p;
      oadd(p, {{e.name(), 1}}, Rational(1));
      return p;
    }
    case Kind::Sum: {
      OraclePoly p;
      for (const Expr& k : e.children())
        for (const auto& [m, c] : to_oracle(k)) oadd(p, m, c);
      return p;
    }
    case Kind::Product: {
      OraclePoly p;
      oadd(p, {}, Rational(1));
      for (const Expr& k : e.children()) p = omul(p, to_oracle(k));
      return p;
    }
    case Kind::IntPower: {
      if (e.exponent() < 0) throw std::runtime_error("oracle: negative power");
      OraclePoly p;
      oadd(p, {}, Rational(1));
      OraclePoly b = to_oracle(e.child(0));
      for (long i = 0; i < e.exponent(); ++i) p = omul(p, b);
      return p;
    }
    case Kind::Func: throw std::runtime_error("oracle: transcendental");
  }
  return {};
}

Expr random_poly_tree(Rng& rng, int depth) {
  static const char* names[] = {"x1", "x2", "l12", "e3"};
  if (depth == 0 || rng.uniform(0, 4) == 0) {
    if (rng.uniform(0, 2) == 0) return Expr::rational(rng.rational_point(7, 3));
    return sym(names[rng.uniform(0, 3)]);
  }
  switch (rng.uniform(0, 2)) {
    case 0: {
      std::vector<Expr> kids;
      for (int i = 0; i < 2; ++i) kids.push_back(random_poly_tree(rng, depth - 1));
      return Expr::sum(std::move(kids));
    }
    case 1: {
      std::vector<Expr> kids;
      for (int i = 0; i < 2; ++i) kids.push_back(random_poly_tree(rng, depth - 1));
      return Expr::product(std::move(kids));
    }
    default: return Expr::pow(random_poly_tree(rng, depth - 1), rng.uniform(0, 3));
  }
}

}  // namespace

TEST_CASE("is_zero: literal and symbol") {
  CHECK(is_zero(Expr::integer(0)).tier == ZeroTier::Exact);
  CHECK_FALSE(is_zero(sym("x1")).zero);
}

TEST_CASE("is_zero: hyperbolic identity certified on the numeric tier") {
  Expr ch = Expr::apply(Func1::Cosh, sym("x3")), sh = Expr::apply(Func1::Sinh, sym("x3"));
  ZeroResult z = is_zero(ch * ch - sh * sh - Expr::integer(1));
  CHECK(z.zero);
  CHECK(z.tier == ZeroTier::Numeric);
}

TEST_CASE("is_zero: trigonometric identity with shifted argument") {
  Expr arg = sym("x1") * sym("x2") - Expr::integer(3);
  Expr s = Expr::apply(Func1::Sin, arg), c = Expr::apply(Func1::Cos, arg);
  CHECK(is_zero(s * s + c * c - Expr::integer(1)).zero);
  CHECK_FALSE(is_zero(s * s + c * c).zero);
}

TEST_CASE("is_zero agrees with the polynomial oracle on transcendental-free input") {
  Rng rng(5);
  int tested = 0;
  while (tested < 120) {
    Expr e = random_poly_tree(rng, 5);
    bool oracle_zero = to_oracle(e).empty();
    ZeroResult z = is_zero(e);
    CHECK(z.zero == oracle_zero);
    if (z.zero) CHECK(z.tier == ZeroTier::Exact);
    ++tested;
  }
  // and on engineered zeros
  for (int i = 0; i < 30; ++i) {
    Expr a = random_poly_tree(rng, 4);
    Expr b = random_poly_tree(rng, 4);
    Expr e = a * b - b * a + (a + b) - (b + a);
    CHECK(to_oracle(e).empty());
    CHECK(is_zero(e).tier == ZeroTier::Exact);
  }
}

TEST_CASE("eval: exact rational arithmetic") {
  Assignment a{{"x1", rat(1, 2)}, {"x2", rat(1, 3)}};
  EvalResult r = eval(sym("x1") + sym("x2"), a);
  CHECK(r.exact);
  CHECK(r.value == rat(5, 6));
}

TEST_CASE("eval: exp(0) folds to an exact 1") {
  Assignment a{{"x2", Rational(0)}};
  EvalResult r = eval(Expr::apply(Func1::Exp, sym("x2")), a);
  CHECK(r.exact);
  CHECK(r.value == 1);
}

TEST_CASE("eval: 2e against independently known digits") {
  Assignment a{{"l12", Rational(2)}, {"x2", Rational(1)}};
  EvalResult r = eval(sym("l12") * Expr::apply(Func1::Exp, sym("x2")), a);
  CHECK_FALSE(r.exact);
  // 2e = 5.43656365691809047072057494... (e from its defining series)
  CHECK(r.str().substr(0, 20) == "5.436563656918090470");
}

TEST_CASE("eval: errors") {
  CHECK_THROWS_AS(eval(sym("x1"), Assignment{}), MissingBinding);
  Assignment a{{"x1", Rational(-1)}};
  CHECK_THROWS_AS(eval(Expr::apply(Func1::Ln, sym("x1")), a), EvalDomainError);
  CHECK_THROWS_AS(eval(Expr::pow(sym("x1") + Expr::integer(1), -1), a), EvalDomainError);
}

TEST_CASE("cosh^2 - sinh^2 is 1 by numeric substitution") {
  Expr ch = Expr::apply(Func1::Cosh, sym("x3")), sh = Expr::apply(Func1::Sinh, sym("x3"));
  Expr e = substitute(ch * ch - sh * sh, std::map<std::string, Expr>{});
  CHECK(is_zero(e - Expr::integer(1)).zero);
}

TEST_CASE("derivative matches a central finite difference") {
  Rng rng(31);
  Evaluator ev(192);
  Expr exprs[] = {
      sym("x1") * sym("x1") * sym("x2") + Expr::apply(Func1::Sin, sym("x1")),
      Expr::apply(Func1::Exp, Expr::rational(rat(1, 4)) * sym("x1")) * sym("x2"),
      Expr::apply(Func1::Cosh, sym("x1")) + Expr::pow(sym("x2"), 3),
  };
  Rational h = rat(1, 1000000);
  Rational tol = rat(1, 1000000);
  for (const Expr& e : exprs) {
    Expr de = differentiate(e, "x1");
    for (int i = 0; i < 10; ++i) {
      Assignment a{{"x1", rng.rational_point(5, 7)}, {"x2", rng.rational_point(5, 7)}};
      Assignment up = a, dn = a;
      up["x1"] += h;
      dn["x1"] -= h;
      Rational fd = (ev.eval(e, up).mid() - ev.eval(e, dn).mid()) / (h * 2);
      Rational d = ev.eval(de, a).mid();
      Rational scale = std::max(Rational(1), rat_abs(d));
      CHECK(rat_abs(fd - d) / scale < tol);
    }
  }
}

TEST_CASE("sample_point avoids domain violations") {
  Rng rng(3);
  Evaluator ev(96);
  Expr e = Expr::apply(Func1::Ln, sym("x1"));  // needs x1 > 0
  for (int i = 0; i < 5; ++i) {
    Assignment a = sample_point(e, rng, ev);
    CHECK(a.at("x1") > 0);
  }
}
