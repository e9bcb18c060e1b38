#include "jacobi/alg_jacobi.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <sstream>

#include "jacobi/catalog.hpp"

namespace jacobi {

AlgJacobiStructure AlgJacobiStructure::make(int dim) {
  AlgJacobiStructure j;
  j.dim = dim;
  j.lambda = mat_zero(dim);
  j.reeb.assign(dim, Expr::integer(0));
  return j;
}

void AlgJacobiStructure::set_lambda(int i, int j, const Expr& v) {
  lambda[i][j] = normalize(v);
  lambda[j][i] = normalize(-v);
}

AlgJacobiStructure AlgJacobiStructure::substituted(
    const std::map<std::string, Rational>& b) const {
  std::map<std::string, Expr> eb;
  for (const auto& [k, v] : b) eb.emplace(k, Expr::rational(v));
  return substituted(eb);
}

AlgJacobiStructure AlgJacobiStructure::substituted(const std::map<std::string, Expr>& b) const {
  AlgJacobiStructure out = *this;
  out.lambda = mat_substitute(lambda, b);
  for (Expr& e : out.reeb) e = substitute(e, b);
  for (SideCondition& c : out.conditions) c.expr = substitute(c.expr, b);
  return out;
}

std::set<std::string> AlgJacobiStructure::parameters() const {
  std::set<std::string> out;
  for (const auto& row : lambda)
    for (const Expr& e : row) collect_symbols(e, out);
  for (const Expr& e : reeb) collect_symbols(e, out);
  return out;
}

// ---------------------------------------------------------------------------
// Table catalog.
// ---------------------------------------------------------------------------

namespace {

void apply_entries(AlgJacobiStructure& j, const std::string& entries) {
  std::istringstream es(entries);
  std::string item;
  while (std::getline(es, item, ';')) {
    if (item.empty()) continue;
    std::size_t eq = item.find('=');
    if (eq == std::string::npos) throw std::runtime_error("malformed table entry " + item);
    std::string key = item.substr(0, eq);
    Expr value = normalize(parse_expr(item.substr(eq + 1)));
    if (key.size() == 3 && key[0] == 'L') {
      j.set_lambda(key[1] - '1', key[2] - '1', value);
    } else if (key.size() == 2 && key[0] == 'E') {
      j.reeb[key[1] - '1'] = value;
    } else {
      throw std::runtime_error("malformed table entry key " + key);
    }
  }
}

void apply_conditions(AlgJacobiStructure& j, const std::string& conds) {
  std::istringstream cs(conds);
  std::string item;
  while (std::getline(cs, item, ';')) {
    if (item.empty()) continue;
    SideCondition c;
    std::string body = item;
    if (body[0] == '~') {
      c.inferred = true;
      body = body.substr(1);
    }
    if (body.rfind("ne:", 0) == 0) {
      c.rel = SideCondition::Rel::NonZero;
      body = body.substr(3);
    } else if (body.rfind("eq:", 0) == 0) {
      c.rel = SideCondition::Rel::Zero;
      body = body.substr(3);
    } else {
      throw std::runtime_error("malformed side condition " + item);
    }
    c.expr = normalize(parse_expr(body));
    j.conditions.push_back(std::move(c));
  }
}

std::vector<FamilyRecord> load_table() {
  std::vector<FamilyRecord> out;
  for (const auto& rec : catalog_records("jacobi_tables.cat")) {
    if (rec.empty()) continue;
    if (rec[0] == "family") {
      FamilyRecord fr;
      fr.algebra = rec[1];
      fr.row = std::stoi(rec[2]);
      fr.family = AlgJacobiStructure::make(find_algebra(fr.algebra).dim());
      apply_entries(fr.family, rec[3]);
      if (rec.size() > 4) apply_conditions(fr.family, rec[4]);
      out.push_back(std::move(fr));
    } else if (rec[0] == "class") {
      const std::string& alg = rec[1];
      int row = std::stoi(rec[2]);
      FamilyRecord* fr = nullptr;
      for (auto& f : out)
        if (f.algebra == alg && f.row == row) fr = &f;
      if (!fr) throw std::runtime_error("class record before family record");
      ClassRep cr;
      cr.id = rec[3];
      cr.rep = AlgJacobiStructure::make(find_algebra(alg).dim());
      apply_entries(cr.rep, rec[4]);
      if (rec.size() > 5) apply_conditions(cr.rep, rec[5]);
      fr->classes.push_back(std::move(cr));
    }
  }
  return out;
}

}  // namespace

const std::vector<FamilyRecord>& jacobi_table() {
  static const std::vector<FamilyRecord> table = load_table();
  return table;
}

std::vector<FamilyRecord> jacobi_table_for(const std::string& algebra) {
  find_algebra(algebra);  // unknown names throw; VIII and IX are known but
                          // have no tabulated families, so the list is empty
  std::vector<FamilyRecord> out;
  for (const FamilyRecord& f : jacobi_table())
    if (f.algebra == algebra) out.push_back(f);
  return out;
}

const FamilyRecord& find_family(const std::string& algebra, int row) {
  for (const FamilyRecord& f : jacobi_table())
    if (f.algebra == algebra && f.row == row) return f;
  throw std::runtime_error("no table row " + algebra + "." + std::to_string(row));
}

const AlgJacobiStructure& find_class(const std::string& algebra, const std::string& rowid) {
  std::size_t split = 0;
  while (split < rowid.size() && std::isdigit(static_cast<unsigned char>(rowid[split]))) ++split;
  if (split == 0 || split == rowid.size())
    throw std::runtime_error("row id must look like '2a': " + rowid);
  const FamilyRecord& fr = find_family(algebra, std::stoi(rowid.substr(0, split)));
  std::string cid = rowid.substr(split);
  for (const ClassRep& c : fr.classes)
    if (c.id == cid) return c.rep;
  throw std::runtime_error("no class " + cid + " in table row " + fr.label());
}

// ---------------------------------------------------------------------------
// Residuals.
// ---------------------------------------------------------------------------

std::vector<ExprMat> residual_bivector(const LieAlgebra& l, const AlgJacobiStructure& j) {
  int n = l.dim();
  if (j.dim != n) throw DimensionMismatch("structure/algebra dimension");
  const ExprMat& L = j.lambda;
  const ExprVec& E = j.reeb;
  std::vector<ExprMat> out(n, mat_zero(n));
  // The E-terms enter with the opposite sign to the quadratic terms: the
  // frames behind the tabulated vielbeins close on the negated structure
  // constants, and this is the orientation under which the solution tables
  // and the worked classification verify.
  for (int f = 0; f < n; ++f)
    for (int h = 0; h < n; ++h)
      for (int e = 0; e < n; ++e) {
        std::vector<Expr> terms;
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            terms.push_back(l.f(b, c, f) * L[h][b] * L[c][e]);
            terms.push_back(l.f(b, c, e) * L[h][b] * L[f][c]);
            terms.push_back(l.f(b, c, h) * L[e][b] * L[c][f]);
          }
        terms.push_back(-(E[f] * L[e][h]));
        terms.push_back(-(E[e] * L[h][f]));
        terms.push_back(-(E[h] * L[f][e]));
        out[f][h][e] = normalize(Expr::sum(std::move(terms)));
      }
  return out;
}

ExprMat residual_reeb(const LieAlgebra& l, const AlgJacobiStructure& j) {
  int n = l.dim();
  if (j.dim != n) throw DimensionMismatch("structure/algebra dimension");
  const ExprMat& L = j.lambda;
  const ExprVec& E = j.reeb;
  ExprMat out = mat_zero(n);
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e) {
      std::vector<Expr> terms;
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          terms.push_back(l.f(a, c, d) * E[a] * L[c][e]);
          terms.push_back(l.f(a, c, e) * E[a] * L[d][c]);
        }
      out[d][e] = normalize(Expr::sum(std::move(terms)));
    }
  return out;
}

VerifyReport verify_family(const LieAlgebra& l, const AlgJacobiStructure& j) {
  VerifyReport rep;
  auto note = [&](const std::string& where, const Expr& r) {
    ZeroResult z = is_zero(r);
    if (!z.zero) {
      rep.ok = false;
      rep.nonzero_components.push_back(where + " = " + to_string(normalize(r)));
    } else if (z.tier == ZeroTier::Numeric) {
      rep.worst_tier = ZeroTier::Numeric;
    }
  };
  std::vector<ExprMat> rb = residual_bivector(l, j);
  int n = l.dim();
  for (int f = 0; f < n; ++f)
    for (int h = 0; h < n; ++h)
      for (int e = 0; e < n; ++e)
        note("biv[" + std::to_string(f + 1) + std::to_string(h + 1) + std::to_string(e + 1) + "]",
             rb[f][h][e]);
  ExprMat rr = residual_reeb(l, j);
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e)
      note("reeb[" + std::to_string(d + 1) + std::to_string(e + 1) + "]", rr[d][e]);
  return rep;
}

AlgJacobiStructure transform(const AlgJacobiStructure& j, const ExprMat& a) {
  if (a.size() != static_cast<std::size_t>(j.dim)) throw DimensionMismatch("transform shape");
  if (is_zero(mat_det(a))) throw SingularMatrix("transform by a singular matrix");
  AlgJacobiStructure out = AlgJacobiStructure::make(j.dim);
  out.lambda = mat_mul(mat_mul(mat_transpose(a), j.lambda), a);
  out.reeb = vec_mat(j.reeb, a);
  return out;
}

// ---------------------------------------------------------------------------
// Equivalence search.
// ---------------------------------------------------------------------------

namespace {

bool structures_equal(const AlgJacobiStructure& a, const AlgJacobiStructure& b) {
  if (!mat_equal(a.lambda, b.lambda).zero) return false;
  for (int i = 0; i < a.dim; ++i)
    if (!is_zero(a.reeb[i] - b.reeb[i])) return false;
  return true;
}

// Rabinowitsch certificate: the system together with t * prod(conds) = 1
// has no solutions at all iff the original system has none satisfying every
// nonzero condition.
bool certified_infeasible(const std::vector<Expr>& eqs, const std::vector<Expr>& nonzero,
                          std::vector<std::string> unknowns) {
  Expr prod = Expr::integer(1);
  for (const Expr& c : nonzero) prod = prod * c;
  std::vector<Expr> gens = eqs;
  gens.push_back(normalize(Expr::symbol("_t") * prod - Expr::integer(1)));
  unknowns.push_back("_t");
  std::vector<MPoly> polys;
  try {
    for (const Expr& e : gens) polys.push_back(MPoly::from_expr(e, unknowns));
  } catch (const NotPolynomial&) {
    return false;
  }
  std::vector<MPoly> gb = groebner(std::move(polys));
  return gb.size() == 1 && gb[0].degree() == 0;
}

struct BoundSearch {
  std::vector<Expr> equations;
  std::vector<Expr> nonzero;
  std::vector<std::string> unknowns;
  bool exhaustive = true;
  std::optional<Solution> found;

  // Bind free parameters over a small grid when the system is not
  // zero-dimensional; exhaustiveness is lost in that case.
  void run(std::map<std::string, Rational> bound, int depth) {
    if (found) return;
    std::vector<Expr> eqs;
    std::vector<Expr> nz;
    for (const Expr& e : equations) eqs.push_back(substitute(e, bound));
    for (const Expr& e : nonzero) nz.push_back(substitute(e, bound));
    std::vector<std::string> free;
    for (const std::string& u : unknowns)
      if (!bound.count(u)) free.push_back(u);
    try {
      SolveResult r = solve_determined(eqs, free, nz);
      if (!r.complete) exhaustive = false;
      for (Solution& s : r.solutions) {
        for (const auto& [k, v] : bound) s.values[k] = AlgValue(v);
        found = std::move(s);
        return;
      }
    } catch (const PositiveDimensional& pd) {
      if (depth >= static_cast<int>(unknowns.size())) {
        exhaustive = false;
        return;
      }
      exhaustive = false;
      static const Rational grid[] = {Rational(0),  Rational(1), Rational(-1),
                                      Rational(2),  Rational(-2), rat(1, 2),
                                      Rational(3)};
      // Bind a genuinely unconstrained variable (gauge freedom); binding a
      // pinned one would just push the solution off the grid.
      std::string var;
      for (const std::string& u : pd.unpinned)
        if (!bound.count(u)) {
          var = u;
          break;
        }
      if (var.empty())
        for (const std::string& u : unknowns)
          if (!bound.count(u)) {
            var = u;
            break;
          }
      if (var.empty()) return;
      for (const Rational& v : grid) {
        auto next = bound;
        next[var] = v;
        run(next, depth + 1);
        if (found) return;
      }
    }
  }
};

}  // namespace

EquivalenceResult are_equivalent(const LieAlgebra& l, const AlgJacobiStructure& j1,
                                 const AlgJacobiStructure& j2, Rng& rng) {
  EquivalenceResult out;
  if (!j1.parameters().empty() || !j2.parameters().empty())
    throw std::invalid_argument("equivalence search needs parameter-concrete structures");
  if (structures_equal(j1, j2)) {
    out.witness = mat_identity(l.dim());
    out.note = "identical structures";
    return out;
  }
  AutomorphismFamily fam = automorphism_family(l);
  if (fam.constraint_only) {
    // No parametric chart: random search with exact verification.
    out.exhaustive = false;
    out.note = "constraint-only automorphism group (" + fam.label + "); random search";
    for (int attempt = 0; attempt < 500; ++attempt) {
      ExprMat a = mat_zero(l.dim());
      for (int i = 0; i < l.dim(); ++i)
        for (int j = 0; j < l.dim(); ++j)
          a[i][j] = Expr::rational(rng.rational_point(3, 2));
      try {
        if (!is_automorphism(l, a)) continue;
        if (structures_equal(transform(j2, a), j1)) {
          out.witness = a;
          return out;
        }
      } catch (const SingularMatrix&) {
        continue;
      }
    }
    return out;
  }

  for (const AutomorphismBranch& br : fam.branches) {
    BoundSearch search;
    search.unknowns = br.params;
    int n = l.dim();
    ExprMat lhs = mat_mul(mat_mul(mat_transpose(br.matrix), j2.lambda), br.matrix);
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        auto [num, den] = as_fraction(lhs[i][j] - j1.lambda[i][j]);
        (void)den;
        search.equations.push_back(num);
      }
    ExprVec erow = vec_mat(j2.reeb, br.matrix);
    for (int i = 0; i < n; ++i) {
      auto [num, den] = as_fraction(erow[i] - j1.reeb[i]);
      (void)den;
      search.equations.push_back(num);
    }
    for (const Expr& c : br.nonvanishing) search.nonzero.push_back(c);
    search.nonzero.push_back(mat_det(br.matrix));
    if (certified_infeasible(search.equations, search.nonzero, search.unknowns))
      continue;  // provably no witness in this branch
    search.run({}, 0);
    if (!search.exhaustive) out.exhaustive = false;
    if (search.found) {
      std::map<std::string, Rational> binding;
      bool rational_solution = true;
      for (const auto& [k, v] : search.found->values) {
        if (!v.is_rational()) rational_solution = false;
        binding[k] = v.a;
      }
      if (!rational_solution) {
        // Surd witnesses exist but the matrix substitution path is rational;
        // report without a materialized witness matrix.
        out.note = "witness found in a quadratic extension";
        out.exhaustive = false;
        continue;
      }
      ExprMat inst = mat_substitute(br.matrix, binding);
      if (is_automorphism(l, inst) && structures_equal(transform(j2, inst), j1)) {
        out.witness = inst;
        return out;
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Grid enumeration.
// ---------------------------------------------------------------------------

namespace {

struct RationalStructure {
  std::vector<std::vector<Rational>> lambda;
  std::vector<Rational> reeb;
};

// Fast residual check over plain rationals (the Expr machinery is far too
// slow for tens of thousands of candidates).
bool rational_residuals_vanish(const std::vector<std::vector<Rational>>& f,
                               const RationalStructure& s, int n) {
  for (int d = 0; d < n; ++d)
    for (int e = 0; e < n; ++e) {
      Rational acc(0);
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) {
          acc += f[a * n + c][d] * s.reeb[a] * s.lambda[c][e];
          acc += f[a * n + c][e] * s.reeb[a] * s.lambda[d][c];
        }
      if (acc != 0) return false;
    }
  for (int ff = 0; ff < n; ++ff)
    for (int h = 0; h < n; ++h)
      for (int e = 0; e < n; ++e) {
        Rational acc = -(s.reeb[ff] * s.lambda[e][h] + s.reeb[e] * s.lambda[h][ff] +
                         s.reeb[h] * s.lambda[ff][e]);
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c) {
            acc += f[b * n + c][ff] * s.lambda[h][b] * s.lambda[c][e];
            acc += f[b * n + c][e] * s.lambda[h][b] * s.lambda[ff][c];
            acc += f[b * n + c][h] * s.lambda[e][b] * s.lambda[c][ff];
          }
        if (acc != 0) return false;
      }
  return true;
}

}  // namespace

bool matches_family(const LieAlgebra& l, const FamilyRecord& fam,
                    const AlgJacobiStructure& concrete) {
  (void)l;
  BoundSearch search;
  std::set<std::string> params;
  for (const auto& row : fam.family.lambda)
    for (const Expr& e : row) collect_symbols(e, params);
  for (const Expr& e : fam.family.reeb) collect_symbols(e, params);
  search.unknowns.assign(params.begin(), params.end());
  int n = fam.family.dim;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      auto [num, den] = as_fraction(fam.family.lambda[i][j]);
      search.equations.push_back(normalize(num - concrete.lambda[i][j] * den));
    }
  for (int i = 0; i < n; ++i) {
    auto [num, den] = as_fraction(fam.family.reeb[i]);
    search.equations.push_back(normalize(num - concrete.reeb[i] * den));
  }
  for (const SideCondition& c : fam.family.conditions) {
    if (c.inferred) continue;  // denominator conditions do not shrink the family
    if (c.rel == SideCondition::Rel::Zero)
      search.equations.push_back(c.expr);
    else
      search.nonzero.push_back(c.expr);
  }
  if (search.unknowns.empty()) {
    for (const Expr& e : search.equations)
      if (!is_zero(e)) return false;
    return true;
  }
  search.run({}, 0);
  return search.found.has_value();
}

GridReport grid_enumerate(const LieAlgebra& l, const std::vector<Rational>& grid) {
  if (l.has_free_param())
    throw UnsupportedAlgebra("grid enumeration needs a concrete algebra; bind the parameter");
  int n = l.dim();
  std::vector<std::vector<Rational>> f(n * n, std::vector<Rational>(n));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c) {
        Expr v = normalize(l.f(a, b, c));
        if (!v.is_rational()) throw UnsupportedAlgebra("non-constant structure constants");
        f[a * n + b][c] = v.value();
      }

  std::vector<FamilyRecord> rows = jacobi_table_for(l.name());
  GridReport rep;
  int slots = n == 2 ? 3 : 6;
  std::vector<std::size_t> idx(slots, 0);
  for (;;) {
    RationalStructure s;
    s.lambda.assign(n, std::vector<Rational>(n, Rational(0)));
    s.reeb.assign(n, Rational(0));
    int k = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) {
        s.lambda[i][j] = grid[idx[k]];
        s.lambda[j][i] = -grid[idx[k]];
        ++k;
      }
    for (int i = 0; i < n; ++i) s.reeb[i] = grid[idx[k++]];
    ++rep.candidates;
    if (rational_residuals_vanish(f, s, n)) {
      ++rep.solutions;
      AlgJacobiStructure j = AlgJacobiStructure::make(n);
      for (int i = 0; i < n; ++i)
        for (int jj = i + 1; jj < n; ++jj) j.set_lambda(i, jj, Expr::rational(s.lambda[i][jj]));
      for (int i = 0; i < n; ++i) j.reeb[i] = Expr::rational(s.reeb[i]);
      GridSolution sol;
      sol.structure = j;
      for (const FamilyRecord& fr : rows)
        if (matches_family(l, fr, j)) sol.matched_rows.push_back(fr.label());
      if (sol.matched_rows.empty()) rep.unmatched.push_back(std::move(sol));
    }
    int pos = slots - 1;
    while (pos >= 0 && ++idx[pos] == grid.size()) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return rep;
}

}  // namespace jacobi
