#ifndef JACOBI_MATRIX_HPP
#define JACOBI_MATRIX_HPP

#include <stdexcept>
#include <vector>

#include "jacobi/expr.hpp"
#include "jacobi/numeric.hpp"

namespace jacobi {

/// Dense matrix of symbolic entries; the library never needs more than 3x3.
using ExprMat = std::vector<std::vector<Expr>>;
using ExprVec = std::vector<Expr>;

struct SingularMatrix : std::runtime_error {
  explicit SingularMatrix(const std::string& what) : std::runtime_error(what) {}
};

struct DimensionMismatch : std::runtime_error {
  explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

inline ExprMat mat_zero(std::size_t n) {
  return ExprMat(n, ExprVec(n, Expr::integer(0)));
}

inline ExprMat mat_identity(std::size_t n) {
  ExprMat m = mat_zero(n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = Expr::integer(1);
  return m;
}

inline ExprMat mat_mul(const ExprMat& a, const ExprMat& b) {
  std::size_t n = a.size(), k = b.size(), p = b.empty() ? 0 : b[0].size();
  if (a.empty() || a[0].size() != k) throw DimensionMismatch("matrix product shape");
  ExprMat out(n, ExprVec(p, Expr::integer(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < p; ++j) {
      std::vector<Expr> terms;
      for (std::size_t t = 0; t < k; ++t) terms.push_back(a[i][t] * b[t][j]);
      out[i][j] = normalize(Expr::sum(std::move(terms)));
    }
  return out;
}

inline ExprMat mat_transpose(const ExprMat& a) {
  if (a.empty()) return a;
  ExprMat out(a[0].size(), ExprVec(a.size(), Expr::integer(0)));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[0].size(); ++j) out[j][i] = a[i][j];
  return out;
}

inline ExprVec vec_mat(const ExprVec& v, const ExprMat& a) {
  if (a.size() != v.size()) throw DimensionMismatch("row-vector product shape");
  std::size_t p = a.empty() ? 0 : a[0].size();
  ExprVec out(p, Expr::integer(0));
  for (std::size_t j = 0; j < p; ++j) {
    std::vector<Expr> terms;
    for (std::size_t i = 0; i < v.size(); ++i) terms.push_back(v[i] * a[i][j]);
    out[j] = normalize(Expr::sum(std::move(terms)));
  }
  return out;
}

inline ExprVec mat_vec(const ExprMat& a, const ExprVec& v) {
  ExprVec out(a.size(), Expr::integer(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != v.size()) throw DimensionMismatch("matrix-vector product shape");
    std::vector<Expr> terms;
    for (std::size_t j = 0; j < v.size(); ++j) terms.push_back(a[i][j] * v[j]);
    out[i] = normalize(Expr::sum(std::move(terms)));
  }
  return out;
}

inline Expr mat_det(const ExprMat& a) {
  std::size_t n = a.size();
  if (n == 1) return normalize(a[0][0]);
  if (n == 2) return normalize(a[0][0] * a[1][1] - a[0][1] * a[1][0]);
  if (n == 3)
    return normalize(a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                     a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                     a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]));
  throw DimensionMismatch("determinant only implemented for n <= 3");
}

/// Adjugate-based inverse; entries stay exact symbolic quotients.
inline ExprMat mat_inverse(const ExprMat& a) {
  std::size_t n = a.size();
  Expr det = mat_det(a);
  if (det.is_literal_zero()) throw SingularMatrix("matrix determinant is identically zero");
  Expr inv_det = normalize(Expr::pow(det, -1));
  ExprMat out = mat_zero(n);
  if (n == 1) {
    out[0][0] = inv_det;
    return out;
  }
  if (n == 2) {
    out[0][0] = normalize(a[1][1] * inv_det);
    out[0][1] = normalize(-a[0][1] * inv_det);
    out[1][0] = normalize(-a[1][0] * inv_det);
    out[1][1] = normalize(a[0][0] * inv_det);
    return out;
  }
  if (n == 3) {
    auto cof = [&](std::size_t i, std::size_t j) {
      std::size_t r0 = (i + 1) % 3, r1 = (i + 2) % 3, c0 = (j + 1) % 3, c1 = (j + 2) % 3;
      if (r0 > r1) std::swap(r0, r1);
      if (c0 > c1) std::swap(c0, c1);
      Expr minor = a[r0][c0] * a[r1][c1] - a[r0][c1] * a[r1][c0];
      return ((i + j) % 2 == 0) ? minor : -minor;
    };
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) out[i][j] = normalize(cof(j, i) * inv_det);
    return out;
  }
  throw DimensionMismatch("inverse only implemented for n <= 3");
}

inline ExprMat mat_substitute(const ExprMat& a, const std::map<std::string, Expr>& b) {
  ExprMat out = a;
  for (auto& row : out)
    for (auto& e : row) e = substitute(e, b);
  return out;
}

inline ExprMat mat_substitute(const ExprMat& a, const std::map<std::string, Rational>& b) {
  std::map<std::string, Expr> eb;
  for (const auto& [k, v] : b) eb.emplace(k, Expr::rational(v));
  return mat_substitute(a, eb);
}

/// Worst zero-tier across componentwise checks of a - b.
inline ZeroResult mat_equal(const ExprMat& a, const ExprMat& b, const ZeroOptions& opt = {}) {
  ZeroResult worst{true, ZeroTier::Exact};
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      ZeroResult z = is_zero(a[i][j] - b[i][j], opt);
      if (!z.zero) return z;
      if (z.tier == ZeroTier::Numeric) worst.tier = ZeroTier::Numeric;
    }
  return worst;
}

}  // namespace jacobi

#endif
