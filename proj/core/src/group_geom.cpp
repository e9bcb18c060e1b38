#include "jacobi/group_geom.hpp"

#include <array>
#include <sstream>

#include "jacobi/catalog.hpp"

namespace jacobi {

namespace {

const std::array<const char*, 3> kCoords = {"x1", "x2", "x3"};

ExprMat parse_matrix_literal(const std::string& text) {
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
      char ch = text[i];
      if (ch == '(') ++depth;
      if (ch == ')') --depth;
      if (depth == 0 && (ch == ',' || ch == ']')) {
        row.push_back(normalize(parse_expr(entry)));
        entry.clear();
        ++i;
        if (ch == ']') break;
      } else {
        entry.push_back(ch);
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

std::vector<Vielbein> load_vielbeins() {
  std::vector<Vielbein> out;
  for (const auto& rec : catalog_records("vielbeins.cat")) {
    if (rec.empty() || rec[0] != "vielbein") continue;
    Vielbein v;
    v.group = rec[1];
    v.dim = std::stoi(rec[2]);
    v.inv_e = parse_matrix_literal(rec[3]);
    v.e = mat_inverse(v.inv_e);
    out.push_back(std::move(v));
  }
  return out;
}

const std::vector<Vielbein>& vielbeins() {
  static const std::vector<Vielbein> all = load_vielbeins();
  return all;
}

}  // namespace

ExprVec Vielbein::frame(int a) const {
  ExprVec out(dim, Expr::integer(0));
  for (int mu = 0; mu < dim; ++mu) out[mu] = inv_e[mu][a];
  return out;
}

const Vielbein& vielbein_catalog(const std::string& group) {
  for (const Vielbein& v : vielbeins())
    if (v.group == group) return v;
  throw UnknownGroup(group);
}

std::vector<std::string> vielbein_groups() {
  std::vector<std::string> out;
  for (const Vielbein& v : vielbeins()) out.push_back(v.group);
  return out;
}

MaurerCartanReport maurer_cartan_check(const Vielbein& v, const LieAlgebra& l) {
  MaurerCartanReport rep;
  int n = v.dim;
  if (l.dim() != n) {
    rep.ok = false;
    rep.failures.push_back("dimension mismatch");
    return rep;
  }
  // Commutator components of the frame fields, then back to frame indices.
  for (int a = 0; a < n; ++a) {
    ExprVec ea = v.frame(a);
    for (int b = a + 1; b < n; ++b) {
      ExprVec eb = v.frame(b);
      ExprVec bracket(n, Expr::integer(0));
      for (int nu = 0; nu < n; ++nu) {
        std::vector<Expr> terms;
        for (int mu = 0; mu < n; ++mu) {
          terms.push_back(eb[mu] * differentiate(ea[nu], kCoords[mu]));
          terms.push_back(-(ea[mu] * differentiate(eb[nu], kCoords[mu])));
        }
        bracket[nu] = normalize(Expr::sum(std::move(terms)));
      }
      for (int c = 0; c < n; ++c) {
        std::vector<Expr> terms;
        for (int nu = 0; nu < n; ++nu) terms.push_back(v.e[c][nu] * bracket[nu]);
        Expr computed = Expr::sum(std::move(terms));
        ZeroResult z = is_zero(computed - l.f(a, b, c));
        if (!z.zero) {
          rep.ok = false;
          std::ostringstream os;
          os << "f" << a + 1 << b + 1 << "^" << c + 1 << " = "
             << to_string(normalize(computed)) << " expected " << to_string(l.f(a, b, c));
          rep.failures.push_back(os.str());
        } else if (z.tier == ZeroTier::Numeric) {
          rep.worst_tier = ZeroTier::Numeric;
        }
      }
    }
  }
  return rep;
}

GroupJacobiStructure GroupJacobiStructure::make(int dim) {
  GroupJacobiStructure g;
  g.dim = dim;
  g.lambda = mat_zero(dim);
  g.reeb.assign(dim, Expr::integer(0));
  return g;
}

void GroupJacobiStructure::set_lambda(int i, int j, const Expr& v) {
  lambda[i][j] = normalize(v);
  lambda[j][i] = normalize(-v);
}

GroupJacobiStructure lift_to_group(const AlgJacobiStructure& j, const Vielbein& v) {
  if (j.dim != v.dim) throw DimensionMismatch("lift: structure vs vielbein dimension");
  GroupJacobiStructure g = GroupJacobiStructure::make(v.dim);
  // inv_e has mu as row and a as column, so this is P Lambda P^t and P E.
  g.lambda = mat_mul(mat_mul(v.inv_e, j.lambda), mat_transpose(v.inv_e));
  g.reeb = mat_vec(v.inv_e, j.reeb);
  return g;
}

// ---------------------------------------------------------------------------
// Multivectors and Schouten brackets.
// ---------------------------------------------------------------------------

Multivector Multivector::make(int dim, int degree) {
  if (degree < 0 || degree > 3) throw DimensionUnsupported("multivector degree must be 0..3");
  Multivector m;
  m.dim = dim;
  m.degree = degree;
  std::size_t size = 1;
  for (int i = 0; i < degree; ++i) size *= dim;
  m.c.assign(size, Expr::integer(0));
  return m;
}

namespace {

std::size_t flat_index(const Multivector& m, const std::vector<int>& idx) {
  std::size_t f = 0;
  for (int i : idx) f = f * m.dim + i;
  return f;
}

}  // namespace

const Expr& Multivector::at(std::initializer_list<int> idx) const {
  std::vector<int> v(idx);
  return c[flat_index(*this, v)];
}

void Multivector::set_antisym(const std::vector<int>& idx, const Expr& v) {
  // writes all permutations with their signs
  std::vector<int> p = idx;
  std::sort(p.begin(), p.end());
  Expr nv = normalize(v);
  do {
    // parity of the permutation mapping idx -> p
    std::vector<int> perm;
    std::vector<bool> used(idx.size(), false);
    for (int x : p) {
      for (std::size_t k = 0; k < idx.size(); ++k) {
        if (!used[k] && idx[k] == x) {
          perm.push_back(static_cast<int>(k));
          used[k] = true;
          break;
        }
      }
    }
    int inversions = 0;
    for (std::size_t i = 0; i < perm.size(); ++i)
      for (std::size_t j = i + 1; j < perm.size(); ++j)
        if (perm[i] > perm[j]) ++inversions;
    c[flat_index(*this, p)] = inversions % 2 == 0 ? nv : normalize(-nv);
  } while (std::next_permutation(p.begin(), p.end()));
}

bool Multivector::vanishes(const ZeroOptions& opt) const {
  for (const Expr& e : c)
    if (!is_zero(e, opt)) return false;
  return true;
}

ZeroTier Multivector::worst_tier(const ZeroOptions& opt) const {
  ZeroTier worst = ZeroTier::Exact;
  for (const Expr& e : c) {
    ZeroResult z = is_zero(e, opt);
    if (!z.zero) return ZeroTier::NotZero;
    if (z.tier == ZeroTier::Numeric) worst = ZeroTier::Numeric;
  }
  return worst;
}

Multivector bivector_of(const GroupJacobiStructure& jg) {
  Multivector m = Multivector::make(jg.dim, 2);
  for (int i = 0; i < jg.dim; ++i)
    for (int j = 0; j < jg.dim; ++j) m.c[i * jg.dim + j] = jg.lambda[i][j];
  return m;
}

Multivector vector_of(const GroupJacobiStructure& jg) {
  Multivector m = Multivector::make(jg.dim, 1);
  for (int i = 0; i < jg.dim; ++i) m.c[i] = jg.reeb[i];
  return m;
}

namespace {

Expr cyclic_ll(const Multivector& lm, int l, int m, int nn) {
  // Lambda^{nu rho} d_rho Lambda^{lambda mu} summed over the cyclic triple
  int dim = lm.dim;
  std::vector<Expr> terms;
  std::array<std::array<int, 3>, 3> cyc = {{{nn, l, m}, {m, nn, l}, {l, m, nn}}};
  for (const auto& [first, second, third] : cyc) {
    for (int rho = 0; rho < dim; ++rho) {
      terms.push_back(lm.c[first * dim + rho] *
                      differentiate(lm.c[second * dim + third], kCoords[rho]));
    }
  }
  return normalize(Expr::sum(std::move(terms)));
}

}  // namespace

Multivector schouten_ll(const Multivector& lambda) {
  if (lambda.degree != 2) throw DimensionUnsupported("schouten_ll expects a bivector");
  if (lambda.dim > 3) throw DimensionUnsupported("schouten_ll implemented for dim <= 3");
  Multivector out = Multivector::make(lambda.dim, 3);
  if (lambda.dim < 3) return out;  // a 3-vector on a 2-manifold vanishes
  // the constant is anchored to the worked Heisenberg-type example
  Expr comp = normalize(Expr::integer(-2) * cyclic_ll(lambda, 0, 1, 2));
  out.set_antisym({0, 1, 2}, comp);
  return out;
}

Multivector schouten_el(const Multivector& e, const Multivector& lambda) {
  if (e.degree != 1 || lambda.degree != 2)
    throw DimensionUnsupported("schouten_el expects a vector and a bivector");
  int n = e.dim;
  Multivector out = Multivector::make(n, 2);
  for (int mu = 0; mu < n; ++mu)
    for (int nu = mu + 1; nu < n; ++nu) {
      std::vector<Expr> terms;
      for (int rho = 0; rho < n; ++rho) {
        terms.push_back(e.c[rho] * differentiate(lambda.c[mu * n + nu], kCoords[rho]));
        terms.push_back(-(lambda.c[rho * n + nu] * differentiate(e.c[mu], kCoords[rho])));
        terms.push_back(-(lambda.c[mu * n + rho] * differentiate(e.c[nu], kCoords[rho])));
      }
      out.set_antisym({mu, nu}, Expr::sum(std::move(terms)));
    }
  return out;
}

Multivector wedge(const Multivector& e, const Multivector& lambda) {
  if (e.degree != 1 || lambda.degree != 2)
    throw DimensionUnsupported("wedge expects a vector and a bivector");
  int n = e.dim;
  Multivector out = Multivector::make(n, 3);
  if (n < 3) return out;
  Expr comp = normalize(e.c[0] * lambda.c[1 * n + 2] + e.c[1] * lambda.c[2 * n + 0] +
                        e.c[2] * lambda.c[0 * n + 1]);
  out.set_antisym({0, 1, 2}, comp);
  return out;
}

std::pair<Multivector, Multivector> coordinate_jacobi_residuals(const GroupJacobiStructure& jg) {
  int n = jg.dim;
  Multivector lm = bivector_of(jg);
  Multivector ev = vector_of(jg);
  Multivector r3 = Multivector::make(n, 3);
  if (n >= 3) {
    for (int l = 0; l < n; ++l)
      for (int m = l + 1; m < n; ++m)
        for (int nn = m + 1; nn < n; ++nn) {
          Expr cyc = cyclic_ll(lm, l, m, nn);
          Expr eterm = jg.reeb[l] * jg.lambda[m][nn] + jg.reeb[m] * jg.lambda[nn][l] +
                       jg.reeb[nn] * jg.lambda[l][m];
          r3.set_antisym({l, m, nn}, cyc + eterm);
        }
  }
  Multivector r2 = schouten_el(ev, lm);
  return {r3, r2};
}

ManifoldReport is_jacobi_manifold(const GroupJacobiStructure& jg, const ZeroOptions& opt) {
  ManifoldReport rep;
  Multivector lm = bivector_of(jg);
  Multivector ev = vector_of(jg);

  Multivector ll = schouten_ll(lm);
  Multivector ew = wedge(ev, lm);
  rep.schouten_ll_zero = ll.vanishes(opt);

  Multivector diff = Multivector::make(jg.dim, 3);
  for (std::size_t i = 0; i < diff.c.size(); ++i)
    diff.c[i] = normalize(ll.c[i] - Expr::integer(2) * ew.c[i]);
  ZeroTier t1 = diff.worst_tier(opt);
  if (t1 == ZeroTier::NotZero) {
    rep.ok = false;
    rep.failures.push_back("[[Lambda,Lambda]] != 2 E^Lambda");
  } else if (t1 == ZeroTier::Numeric) {
    rep.worst_tier = ZeroTier::Numeric;
  }

  Multivector el = schouten_el(ev, lm);
  ZeroTier t2 = el.worst_tier(opt);
  if (t2 == ZeroTier::NotZero) {
    rep.ok = false;
    rep.failures.push_back("[[E,Lambda]] != 0");
  } else if (t2 == ZeroTier::Numeric) {
    rep.worst_tier = ZeroTier::Numeric;
  }

  // Cross-check: the coordinate Jacobi equations must agree with the
  // Schouten predicates.
  auto [r3, r2] = coordinate_jacobi_residuals(jg);
  bool coord_ok = r3.worst_tier(opt) != ZeroTier::NotZero && r2.worst_tier(opt) != ZeroTier::NotZero;
  if (coord_ok != rep.ok) {
    rep.formulations_agree = false;
    rep.ok = false;
    rep.failures.push_back("coordinate equations disagree with Schouten predicates");
  }
  return rep;
}

}  // namespace jacobi
