// Command-line front end: catalog browsing, table verification, equivalence
// queries, example reproduction and machine-readable reports.

#include <algorithm>
#include <cctype>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "jacobi/alg_jacobi.hpp"
#include "jacobi/catalog.hpp"
#include "jacobi/group_geom.hpp"
#include "jacobi/hamsys.hpp"
#include "jacobi/lie_algebra.hpp"
#include "jacobi/report.hpp"

namespace {

using namespace jacobi;

struct Options {
  std::uint64_t seed = 0;
  bool json = false;
};

ZeroOptions zero_options(const Options& o) {
  ZeroOptions z;
  z.seed = o.seed;
  return z;
}

int emit(const Report& rep, const Options& o) {
  std::cout << (o.json ? render_json(rep) : render_text(rep));
  return rep.ok() ? 0 : 1;
}

std::map<std::string, Rational> parse_bindings(const std::vector<std::string>& raw) {
  std::map<std::string, Rational> out;
  for (const std::string& b : raw) {
    std::size_t eq = b.find('=');
    if (eq == std::string::npos)
      throw CLI::ValidationError("--bind expects sym=value, got " + b);
    out[b.substr(0, eq)] = rat_from_string(b.substr(eq + 1));
  }
  return out;
}

std::string mat_str(const ExprMat& m) {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < m[i].size(); ++j)
      os << (j ? ", " : "") << to_string(normalize(m[i][j]));
    os << "]";
  }
  os << "]";
  return os.str();
}

std::string vec_str(const ExprVec& v) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << to_string(normalize(v[i]));
  os << ")";
  return os.str();
}

std::string bracket_table(const LieAlgebra& l) {
  std::ostringstream os;
  bool any = false;
  for (int a = 0; a < l.dim(); ++a)
    for (int b = a + 1; b < l.dim(); ++b) {
      std::ostringstream rhs;
      bool nonzero = false;
      for (int c = 0; c < l.dim(); ++c) {
        Expr f = normalize(l.f(a, b, c));
        if (f.is_literal_zero()) continue;
        if (f.is_literal_one())
          rhs << (nonzero ? " + " : "") << "X" << c + 1;
        else if (f.is_rational() && f.value() == -1)
          rhs << (nonzero ? " - " : "-") << "X" << c + 1;
        else
          rhs << (nonzero ? " + " : "") << "(" << to_string(f) << ")*X" << c + 1;
        nonzero = true;
      }
      if (!nonzero) continue;
      if (any) os << ", ";
      any = true;
      os << "[X" << a + 1 << ",X" << b + 1 << "] = " << rhs.str();
    }
  if (!any) os << "abelian";
  return os.str();
}

Verdict tier_verdict(ZeroTier t) {
  switch (t) {
    case ZeroTier::Exact: return Verdict::Pass;
    case ZeroTier::Numeric: return Verdict::NumericPass;
    case ZeroTier::NotZero: return Verdict::Fail;
  }
  return Verdict::Fail;
}

int cmd_catalog(const std::string& action, const std::string& name, const Options& o) {
  Report rep;
  rep.command = "catalog " + action + (name.empty() ? "" : " " + name);
  if (action == "list") {
    for (const LieAlgebra& l : algebra_catalog()) {
      std::ostringstream os;
      os << l.name() << " (dim " << l.dim() << (l.param() ? ", parameter " + *l.param() : "")
         << "): " << bracket_table(l);
      rep.note(os.str());
    }
  } else {
    const LieAlgebra& l = find_algebra(name);
    rep.note(l.name() + ": " + bracket_table(l));
    AdjointRep ad = adjoint(l);
    for (int a = 0; a < l.dim(); ++a)
      rep.note("chi_" + std::to_string(a + 1) + " = " + mat_str(ad.chi[a]));
    for (int c = 0; c < l.dim(); ++c)
      rep.note("Y^" + std::to_string(c + 1) + " = " + mat_str(ad.y[c]));
  }
  return emit(rep, o);
}

int cmd_check_structure(const std::string& algebra, const Options& o) {
  Report rep;
  rep.command = "check-structure" + (algebra.empty() ? "" : " --algebra " + algebra);
  for (const LieAlgebra& l : algebra_catalog()) {
    if (!algebra.empty() && l.name() != algebra) continue;
    StructureReport r = check_structure(l);
    std::string detail;
    if (!r.ok) {
      std::ostringstream os;
      os << r.failures.size() << " failing components";
      detail = os.str();
    }
    rep.add("structure " + l.name(), r.ok ? Verdict::Pass : Verdict::Fail, detail);
  }
  if (rep.checks.empty()) throw UnknownAlgebra(algebra);
  return emit(rep, o);
}

int cmd_verify_table(const std::string& algebra, const Options& o) {
  Report rep;
  rep.command = "verify-table" + (algebra.empty() ? "" : " --algebra " + algebra);
  if (!algebra.empty() && jacobi_table_for(algebra).empty()) {
    rep.note("no families are tabulated for " + algebra);
    std::cout << (o.json ? render_json(rep) : render_text(rep));
    return 0;
  }
  for (const FamilyRecord& fr : jacobi_table()) {
    if (!algebra.empty() && fr.algebra != algebra) continue;
    const LieAlgebra& l = find_algebra(fr.algebra);
    VerifyReport fam = verify_family(l, fr.family);
    bool ok = fam.ok;
    ZeroTier tier = fam.worst_tier;
    std::string detail;
    if (!fr.classes.empty()) {
      VerifyReport cls = verify_family(l, fr.classes[0].rep);
      ok = ok && cls.ok;
      if (cls.worst_tier == ZeroTier::Numeric) tier = ZeroTier::Numeric;
      if (!cls.ok) detail = "class representative residual nonzero";
    }
    if (!fam.ok) detail = fam.nonzero_components.empty() ? "" : fam.nonzero_components.front();
    rep.add("family " + fr.label(), ok ? tier_verdict(tier) : Verdict::Fail, detail);
    for (std::size_t k = 1; k < fr.classes.size(); ++k) {
      VerifyReport cls = verify_family(l, fr.classes[k].rep);
      rep.add("class " + fr.label() + fr.classes[k].id,
              cls.ok ? tier_verdict(cls.worst_tier) : Verdict::Fail,
              cls.ok || cls.nonzero_components.empty() ? "" : cls.nonzero_components.front());
    }
  }
  if (rep.checks.empty()) throw UnknownAlgebra(algebra);
  return emit(rep, o);
}

// "2" is the symbolic family of row 2 (parameters fixed with --bind);
// "2a" / "2b" are its equivalence class representatives.
AlgJacobiStructure resolve_row(const std::string& algebra, const std::string& rowid) {
  bool digits = !rowid.empty() &&
                std::all_of(rowid.begin(), rowid.end(),
                            [](unsigned char c) { return std::isdigit(c); });
  if (digits) return find_family(algebra, std::stoi(rowid)).family;
  return find_class(algebra, rowid);
}

int cmd_equivalence(const std::string& algebra, const std::string& from, const std::string& to,
                    const std::vector<std::string>& binds, const Options& o) {
  Report rep;
  rep.command = "equivalence --algebra " + algebra + " --from " + from + " --to " + to;
  const LieAlgebra& l = find_algebra(algebra);
  auto bindings = parse_bindings(binds);
  AlgJacobiStructure j1 = resolve_row(algebra, from).substituted(bindings);
  AlgJacobiStructure j2 = resolve_row(algebra, to).substituted(bindings);
  auto check_concrete = [&](const AlgJacobiStructure& j, const std::string& which) {
    auto params = j.parameters();
    if (!params.empty()) {
      std::ostringstream os;
      os << which << " still has free parameters:";
      for (const std::string& p : params) os << " " << p;
      os << "; bind them with --bind";
      throw CLI::ValidationError(os.str());
    }
  };
  check_concrete(j1, "--from structure");
  check_concrete(j2, "--to structure");
  Rng rng(o.seed);
  EquivalenceResult res = are_equivalent(l, j1, j2, rng);
  if (res.witness) {
    rep.add("equivalent", Verdict::Pass, "witness A = " + mat_str(*res.witness));
  } else {
    rep.note(res.exhaustive
                 ? "no witness exists in the automorphism family (certified by solver infeasibility)"
                 : "no witness found (search was not exhaustive)");
    rep.add("equivalent", Verdict::Fail, "structures are not equivalent within the searched family");
  }
  if (!res.note.empty()) rep.note(res.note);
  std::cout << (o.json ? render_json(rep) : render_text(rep));
  // A negative equivalence answer is a result, not a failed check.
  return 0;
}

int cmd_solve(const std::string& algebra, const std::vector<std::string>& binds,
              const Options& o) {
  Report rep;
  rep.command = "solve --algebra " + algebra;
  const LieAlgebra& l = find_algebra(algebra);
  auto bindings = parse_bindings(binds);
  LieAlgebra alg = l;
  if (l.has_free_param() && bindings.count(*l.param())) {
    alg = l.instantiate(bindings.at(*l.param()));
    bindings.erase(*l.param());
  }
  int n = alg.dim();
  AlgJacobiStructure j = AlgJacobiStructure::make(n);
  std::vector<std::string> unknowns;
  const char* lnames[3][3] = {{"", "l12", "l13"}, {"", "", "l23"}, {"", "", ""}};
  for (int i = 0; i < n; ++i)
    for (int k = i + 1; k < n; ++k) {
      j.set_lambda(i, k, Expr::symbol(lnames[i][k]));
      unknowns.push_back(lnames[i][k]);
    }
  for (int i = 0; i < n; ++i) {
    std::string en = "e" + std::to_string(i + 1);
    j.reeb[i] = Expr::symbol(en);
    unknowns.push_back(en);
  }
  j = j.substituted(bindings);
  std::vector<std::string> free;
  for (const std::string& u : unknowns)
    if (!bindings.count(u)) free.push_back(u);

  std::vector<Expr> eqs;
  for (const ExprMat& m : residual_bivector(alg, j))
    for (const auto& row : m)
      for (const Expr& e : row)
        if (!e.is_literal_zero()) eqs.push_back(e);
  for (const auto& row : residual_reeb(alg, j))
    for (const Expr& e : row)
      if (!e.is_literal_zero()) eqs.push_back(e);

  try {
    SolveResult res = solve_determined(eqs, free);
    rep.note("solutions: " + std::to_string(res.solutions.size()) +
             (res.complete ? " (complete)" : " (partial: some eliminants resisted factoring)"));
    for (const Solution& s : res.solutions) {
      std::ostringstream os;
      bool first = true;
      for (const auto& [k, v] : s.values) {
        os << (first ? "" : ", ") << k << " = " << v.str();
        first = false;
      }
      rep.note(os.str());
    }
  } catch (const PositiveDimensional& e) {
    rep.note(std::string("PositiveDimensional: ") + e.what());
  }
  std::cout << (o.json ? render_json(rep) : render_text(rep));
  return 0;
}

int cmd_lift(const std::string& algebra, const std::string& row,
             const std::vector<std::string>& binds, const Options& o) {
  Report rep;
  rep.command = "lift --algebra " + algebra + " --row " + row;
  auto bindings = parse_bindings(binds);
  AlgJacobiStructure j = find_class(algebra, row).substituted(bindings);
  const Vielbein& v = vielbein_catalog(algebra);
  GroupJacobiStructure g = lift_to_group(j, v);
  rep.note("Lambda = " + mat_str(g.lambda));
  rep.note("E = " + vec_str(g.reeb));
  std::cout << (o.json ? render_json(rep) : render_text(rep));
  return 0;
}

int cmd_check_manifold(int example, const Options& o) {
  Report rep;
  rep.command = "check-manifold --example " + std::to_string(example);
  const ExampleSpec& spec = example_catalog(example);
  const Vielbein& v = vielbein_catalog(spec.group);
  GroupJacobiStructure g = lift_to_group(find_class(spec.group, spec.rowid), v);
  ManifoldReport man = is_jacobi_manifold(g, zero_options(o));
  rep.add("[[Lambda,Lambda]] = 2 E^Lambda and [[E,Lambda]] = 0",
          man.ok ? tier_verdict(man.worst_tier) : Verdict::Fail,
          man.failures.empty() ? "" : man.failures.front());
  rep.add("coordinate Jacobi equations agree",
          man.formulations_agree ? Verdict::Pass : Verdict::Fail);
  if (man.schouten_ll_zero) rep.note("degenerate class: [[Lambda,Lambda]] = 0");
  return emit(rep, o);
}

GroupJacobiStructure example_structure(int n) {
  const ExampleSpec& spec = example_catalog(n);
  return lift_to_group(find_class(spec.group, spec.rowid), vielbein_catalog(spec.group));
}

int cmd_bracket(int example, const std::string& f, const std::string& g, const Options& o) {
  Report rep;
  rep.command = "bracket --example " + std::to_string(example);
  GroupJacobiStructure jg = example_structure(example);
  RatExpr r = jacobi_bracket(jg, RatExpr::parse(f), RatExpr::parse(g));
  rep.note("{f,g} = " + r.str());
  std::cout << (o.json ? render_json(rep) : render_text(rep));
  return 0;
}

int cmd_hvf(int example, const std::string& f, const Options& o) {
  Report rep;
  rep.command = "hvf --example " + std::to_string(example);
  GroupJacobiStructure jg = example_structure(example);
  VectorField x = hamiltonian_vf(jg, RatExpr::parse(f));
  for (int mu = 0; mu < x.dim; ++mu)
    rep.note("X^" + std::to_string(mu + 1) + " = " + x.comp[mu].str());
  std::cout << (o.json ? render_json(rep) : render_text(rep));
  return 0;
}

int cmd_grid(const std::string& algebra, const std::string& grid_csv,
             const std::vector<std::string>& binds, const Options& o) {
  Report rep;
  rep.command = "grid-enumerate --algebra " + algebra;
  const LieAlgebra& l = find_algebra(algebra);
  auto bindings = parse_bindings(binds);
  LieAlgebra alg = l;
  if (l.has_free_param()) {
    if (!bindings.count(*l.param()))
      throw CLI::ValidationError("algebra " + algebra + " needs --bind " + *l.param() + "=value");
    alg = l.instantiate(bindings.at(*l.param()));
  }
  std::vector<Rational> grid;
  std::istringstream gs(grid_csv);
  std::string item;
  while (std::getline(gs, item, ',')) grid.push_back(rat_from_string(item));
  GridReport r = grid_enumerate(alg, grid);
  bool exploratory = jacobi_table_for(algebra).empty();
  std::ostringstream os;
  os << r.candidates << " candidates, " << r.solutions << " solutions, " << r.unmatched.size()
     << " outside the published families";
  if (exploratory) {
    // No families are tabulated for this algebra; report what the grid found.
    rep.add("grid exploration " + algebra, Verdict::Pass, os.str());
    rep.note("no families are tabulated for " + algebra + "; coverage is not asserted");
  } else {
    rep.add("grid coverage " + algebra, r.all_matched() ? Verdict::Pass : Verdict::Fail, os.str());
  }
  for (const GridSolution& s : r.unmatched) {
    rep.note("unmatched: Lambda = " + mat_str(s.structure.lambda) +
             ", E = " + vec_str(s.structure.reeb));
  }
  return emit(rep, o);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jacobi structures on low-dimensional Lie groups"};
  app.require_subcommand(1);
  app.fallthrough();
  Options opt;
  app.add_option("--seed", opt.seed, "seed for every randomized check");
  app.add_flag("--json", opt.json, "machine-readable report");

  std::string name, algebra, from, to, row, fexpr, gexpr, action;
  std::string grid_csv = "-2,-1,0,1,2";
  std::vector<std::string> binds;
  int example = 1;

  CLI::App* cat = app.add_subcommand("catalog", "list algebras or show one");
  cat->add_option("action", action)->required()->check(CLI::IsMember({"list", "show"}));
  cat->add_option("name", name);

  CLI::App* cs = app.add_subcommand("check-structure", "antisymmetry and Jacobi identity");
  cs->add_option("--algebra", algebra);

  CLI::App* vt = app.add_subcommand("verify-table", "residuals of the solution tables");
  vt->add_option("--algebra", algebra);

  CLI::App* eq = app.add_subcommand("equivalence", "search for an automorphism witness");
  eq->add_option("--algebra", algebra)->required();
  eq->add_option("--from", from)->required();
  eq->add_option("--to", to)->required();
  eq->add_option("--bind", binds);

  CLI::App* sv = app.add_subcommand("solve", "solve the algebraic Jacobi equations");
  sv->add_option("--algebra", algebra)->required();
  sv->add_option("--bind", binds);

  CLI::App* lf = app.add_subcommand("lift", "lift a table row to the group");
  lf->add_option("--algebra", algebra)->required();
  lf->add_option("--row", row)->required();
  lf->add_option("--bind", binds);

  CLI::App* cm = app.add_subcommand("check-manifold", "Jacobi manifold predicates");
  cm->add_option("--example", example)->required();

  CLI::App* ex = app.add_subcommand("example", "reproduce a worked example end to end");
  ex->add_option("n", example)->required();

  CLI::App* br = app.add_subcommand("bracket", "Jacobi bracket on an example structure");
  br->add_option("--example", example)->required();
  br->add_option("--f", fexpr)->required();
  br->add_option("--g", gexpr)->required();

  CLI::App* hv = app.add_subcommand("hvf", "Hamiltonian vector field on an example structure");
  hv->add_option("--example", example)->required();
  hv->add_option("--f", fexpr)->required();

  CLI::App* ge = app.add_subcommand("grid-enumerate", "desk-scale completeness cross-check");
  ge->add_option("--algebra", algebra)->required();
  ge->add_option("--grid", grid_csv);
  ge->add_option("--bind", binds);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cat->parsed()) return cmd_catalog(action, name, opt);
    if (cs->parsed()) return cmd_check_structure(algebra, opt);
    if (vt->parsed()) return cmd_verify_table(algebra, opt);
    if (eq->parsed()) return cmd_equivalence(algebra, from, to, binds, opt);
    if (sv->parsed()) return cmd_solve(algebra, binds, opt);
    if (lf->parsed()) return cmd_lift(algebra, row, binds, opt);
    if (cm->parsed()) return cmd_check_manifold(example, opt);
    if (ex->parsed()) {
      Rng rng(opt.seed);
      Report rep = verify_example(example, rng, zero_options(opt));
      return emit(rep, opt);
    }
    if (br->parsed()) return cmd_bracket(example, fexpr, gexpr, opt);
    if (hv->parsed()) return cmd_hvf(example, fexpr, opt);
    if (ge->parsed()) return cmd_grid(algebra, grid_csv, binds, opt);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
