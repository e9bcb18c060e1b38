#include "jacobi/lie_algebra.hpp"

#include <cctype>
#include <sstream>

#include "jacobi/catalog.hpp"

namespace jacobi {

LieAlgebra::LieAlgebra(std::string name, int dim, std::optional<std::string> param,
                       std::vector<Expr> f)
    : name_(std::move(name)), dim_(dim), param_(std::move(param)), f_(std::move(f)) {
  if (f_.size() != static_cast<std::size_t>(dim_ * dim_ * dim_))
    throw DimensionMismatch("structure constant array size");
}

bool LieAlgebra::has_free_param() const {
  if (!param_) return false;
  for (const Expr& e : f_)
    if (free_symbols(e).count(*param_)) return true;
  return false;
}

LieAlgebra LieAlgebra::instantiate(const Rational& value) const {
  if (!param_) return *this;
  if (name_ == "VIa" && (value <= 0 || value == 1))
    throw std::domain_error("VIa parameter must satisfy a > 0, a != 1");
  if (name_ == "VIIa" && value <= 0)
    throw std::domain_error("VIIa parameter must satisfy a > 0");
  std::map<std::string, Rational> b{{*param_, value}};
  std::vector<Expr> f;
  f.reserve(f_.size());
  for (const Expr& e : f_) f.push_back(substitute(e, b));
  return LieAlgebra(name_, dim_, std::nullopt, std::move(f));
}

namespace {

std::vector<LieAlgebra> load_algebras() {
  std::vector<LieAlgebra> out;
  for (const auto& rec : catalog_records("algebras.cat")) {
    if (rec.empty() || rec[0] != "algebra") continue;
    if (rec.size() < 3) throw std::runtime_error("malformed algebra record");
    const std::string& name = rec[1];
    int dim = std::stoi(rec[2]);
    std::optional<std::string> param;
    if (rec.size() > 3 && !rec[3].empty()) param = rec[3];
    std::vector<Expr> f(dim * dim * dim, Expr::integer(0));
    std::istringstream fs(rec.size() > 4 ? rec[4] : std::string());
    std::string item;
    while (std::getline(fs, item, ',')) {
      if (item.empty()) continue;
      // fAB^C=EXPR
      std::size_t caret = item.find('^');
      std::size_t eq = item.find('=');
      if (item[0] != 'f' || caret == std::string::npos || eq == std::string::npos)
        throw std::runtime_error("malformed structure constant " + item);
      int a = item[1] - '1';
      int b = item[2] - '1';
      int c = item[caret + 1] - '1';
      Expr v = normalize(parse_expr(item.substr(eq + 1)));
      f[(a * dim + b) * dim + c] = v;
      f[(b * dim + a) * dim + c] = normalize(-v);
    }
    out.emplace_back(name, dim, param, std::move(f));
  }
  return out;
}

}  // namespace

const std::vector<LieAlgebra>& algebra_catalog() {
  static const std::vector<LieAlgebra> catalog = load_algebras();
  return catalog;
}

const LieAlgebra& find_algebra(const std::string& name) {
  for (const LieAlgebra& l : algebra_catalog())
    if (l.name() == name) return l;
  throw UnknownAlgebra(name);
}

StructureReport check_structure(const LieAlgebra& l) {
  StructureReport rep;
  int n = l.dim();
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        if (!is_zero(l.f(a, b, c) + l.f(b, a, c))) {
          rep.ok = false;
          rep.failures.push_back({"antisymmetry", a, b, c, -1});
        }
      }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int e = 0; e < n; ++e) {
          std::vector<Expr> terms;
          for (int d = 0; d < n; ++d) {
            terms.push_back(l.f(a, b, d) * l.f(d, c, e));
            terms.push_back(l.f(b, c, d) * l.f(d, a, e));
            terms.push_back(l.f(c, a, d) * l.f(d, b, e));
          }
          ZeroResult z = is_zero(Expr::sum(std::move(terms)));
          if (!z.zero || z.tier != ZeroTier::Exact) {
            rep.ok = false;
            rep.failures.push_back({"jacobi", a, b, c, e});
          }
        }
  return rep;
}

AdjointRep adjoint(const LieAlgebra& l) {
  int n = l.dim();
  AdjointRep rep;
  rep.chi.assign(n, mat_zero(n));
  rep.y.assign(n, mat_zero(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Expr v = normalize(-l.f(a, b, c));
        rep.chi[a][b][c] = v;
        rep.y[c][a][b] = v;
      }
  return rep;
}

ExprMat AutomorphismFamily::random_instance(Rng& rng, std::size_t branch) const {
  if (constraint_only)
    throw UnsupportedAlgebra("automorphism group of " + algebra + " is " + label +
                             "; no parametric chart is tabulated");
  const AutomorphismBranch& br = branches.at(branch);
  for (int attempt = 0; attempt < 200; ++attempt) {
    std::map<std::string, Rational> vals;
    for (const std::string& p : br.params) vals[p] = rng.rational_point(5, 3);
    bool ok = true;
    for (const Expr& cond : br.nonvanishing) {
      Expr c = substitute(cond, vals);
      if (!c.is_rational() || c.value() == 0) {
        ok = false;
        break;
      }
    }
    if (ok) return mat_substitute(br.matrix, vals);
  }
  throw std::runtime_error("could not draw an admissible automorphism instance");
}

namespace {

ExprMat parse_matrix(const std::string& text) {
  // [[a,b,...],[...],...] with expression entries
  ExprMat out;
  std::size_t i = 0;
  auto expect = [&](char c) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i >= text.size() || text[i] != c)
      throw std::runtime_error("malformed matrix literal: " + text);
    ++i;
  };
  expect('[');
  for (;;) {
    expect('[');
    ExprVec row;
    std::size_t depth = 0;
    std::string entry;
    for (;;) {
      if (i >= text.size()) throw std::runtime_error("malformed matrix literal: " + text);
      char c = text[i];
      if (c == '(') ++depth;
      if (c == ')') --depth;
      if (depth == 0 && (c == ',' || c == ']')) {
        row.push_back(normalize(parse_expr(entry)));
        entry.clear();
        ++i;
        if (c == ']') break;
      } else {
        entry.push_back(c);
        ++i;
      }
    }
    out.push_back(std::move(row));
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i < text.size() && text[i] == ',') {
      ++i;
      continue;
    }
    expect(']');
    break;
  }
  return out;
}

std::vector<AutomorphismFamily> load_automorphisms() {
  std::vector<AutomorphismFamily> out;
  for (const auto& rec : catalog_records("automorphisms.cat")) {
    if (rec.empty() || rec[0] != "aut") continue;
    const std::string& name = rec[1];
    AutomorphismFamily* fam = nullptr;
    for (auto& f : out)
      if (f.algebra == name) fam = &f;
    if (!fam) {
      out.push_back(AutomorphismFamily{name, false, "", {}});
      fam = &out.back();
    }
    if (rec[2] == "constraint") {
      fam->constraint_only = true;
      fam->label = rec.size() > 3 ? rec[3] : "";
      continue;
    }
    AutomorphismBranch br;
    br.matrix = parse_matrix(rec[3]);
    std::set<std::string> syms;
    for (const auto& row : br.matrix)
      for (const Expr& e : row) collect_symbols(e, syms);
    br.params.assign(syms.begin(), syms.end());
    if (rec.size() > 4 && !rec[4].empty()) {
      std::istringstream cs(rec[4]);
      std::string cond;
      while (std::getline(cs, cond, ';'))
        if (!cond.empty()) br.nonvanishing.push_back(normalize(parse_expr(cond)));
    }
    fam->branches.push_back(std::move(br));
  }
  return out;
}

}  // namespace

AutomorphismFamily automorphism_family(const LieAlgebra& l) {
  static const std::vector<AutomorphismFamily> families = load_automorphisms();
  for (const AutomorphismFamily& f : families)
    if (f.algebra == l.name()) return f;
  throw UnknownAlgebra(l.name());
}

bool is_automorphism(const LieAlgebra& l, const ExprMat& a, const ZeroOptions& opt) {
  int n = l.dim();
  if (a.size() != static_cast<std::size_t>(n)) throw DimensionMismatch("automorphism shape");
  if (is_zero(mat_det(a), opt)) return false;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q)
      for (int m = 0; m < n; ++m) {
        std::vector<Expr> terms;
        for (int k = 0; k < n; ++k)
          for (int t = 0; t < n; ++t) terms.push_back(a[p][k] * l.f(k, t, m) * a[q][t]);
        for (int c = 0; c < n; ++c) terms.push_back(-(l.f(p, q, c) * a[c][m]));
        if (!is_zero(Expr::sum(std::move(terms)), opt)) return false;
      }
  return true;
}

MatrixIdentityReport matrix_identities_check(const LieAlgebra& l, const ExprMat& a,
                                             const ZeroOptions& opt) {
  MatrixIdentityReport rep;
  int n = l.dim();
  AdjointRep ad = adjoint(l);
  ExprMat at = mat_transpose(a);
  for (int m = 0; m < n; ++m) {
    ExprMat lhs = mat_mul(mat_mul(a, ad.y[m]), at);
    ExprMat rhs = mat_zero(n);
    for (int c = 0; c < n; ++c)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          rhs[i][j] = normalize(rhs[i][j] + ad.y[c][i][j] * a[c][m]);
    if (!mat_equal(lhs, rhs, opt).zero) {
      rep.ok = false;
      rep.failures.push_back("A Y^" + std::to_string(m + 1) + " A^t mismatch");
    }
  }
  for (int b = 0; b < n; ++b) {
    ExprMat lhs = mat_zero(n);
    for (int t = 0; t < n; ++t) {
      ExprMat part = mat_mul(a, ad.chi[t]);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) lhs[i][j] = normalize(lhs[i][j] + part[i][j] * a[b][t]);
    }
    ExprMat rhs = mat_mul(ad.chi[b], a);
    if (!mat_equal(lhs, rhs, opt).zero) {
      rep.ok = false;
      rep.failures.push_back("A chi_l A_" + std::to_string(b + 1) + "^l mismatch");
    }
  }
  return rep;
}

}  // namespace jacobi
