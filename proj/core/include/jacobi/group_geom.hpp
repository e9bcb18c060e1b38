#ifndef JACOBI_GROUP_GEOM_HPP
#define JACOBI_GROUP_GEOM_HPP

#include <string>
#include <vector>

#include "jacobi/alg_jacobi.hpp"

namespace jacobi {

struct UnknownGroup : std::runtime_error {
  explicit UnknownGroup(const std::string& name)
      : std::runtime_error("no tabulated vielbein for group " + name) {}
};

struct DimensionUnsupported : std::runtime_error {
  explicit DimensionUnsupported(const std::string& what) : std::runtime_error(what) {}
};

/// Frame data on a group: inv_e stores e_a^mu (row = coordinate mu,
/// column = frame index a), e stores the matrix inverse e^a_mu.
struct Vielbein {
  std::string group;
  int dim = 3;
  ExprMat inv_e;
  ExprMat e;

  /// Coordinate components of the frame field with index a.
  ExprVec frame(int a) const;
};

/// Tabulated vielbeins (groups A2, II, III, IV, VI0, VII0).
const Vielbein& vielbein_catalog(const std::string& group);
std::vector<std::string> vielbein_groups();

struct MaurerCartanReport {
  bool ok = true;
  ZeroTier worst_tier = ZeroTier::Exact;
  std::vector<std::string> failures;
};

/// Recovers the structure constants from the frame commutators and compares
/// them with the algebra's. The frame orientation is fixed so that the
/// catalog vielbeins reproduce the catalog constants.
MaurerCartanReport maurer_cartan_check(const Vielbein& v, const LieAlgebra& l);

/// Coordinate-dependent Jacobi structure on the group.
struct GroupJacobiStructure {
  int dim = 3;
  ExprMat lambda;  // Lambda^{mu nu}(x), antisymmetric
  ExprVec reeb;    // E^mu(x)

  static GroupJacobiStructure make(int dim);
  void set_lambda(int i, int j, const Expr& v);
};

/// Lambda^{mu nu} = e_a^mu e_b^nu Lambda^{ab}, E^mu = e_a^mu E^a.
GroupJacobiStructure lift_to_group(const AlgJacobiStructure& j, const Vielbein& v);

/// Fully antisymmetric multivector field, dense component storage.
struct Multivector {
  int dim = 3;
  int degree = 0;
  std::vector<Expr> c;  // dim^degree entries

  static Multivector make(int dim, int degree);
  const Expr& at(std::initializer_list<int> idx) const;
  void set_antisym(const std::vector<int>& idx, const Expr& v);
  bool vanishes(const ZeroOptions& opt = {}) const;
  ZeroTier worst_tier(const ZeroOptions& opt = {}) const;
};

Multivector bivector_of(const GroupJacobiStructure& jg);
Multivector vector_of(const GroupJacobiStructure& jg);

/// [[Lambda, Lambda]], normalized so that a lifted Heisenberg-type structure
/// gives [[Lambda,Lambda]] = 2 dx1^dx2^dx3 = 2 E^Lambda.
Multivector schouten_ll(const Multivector& lambda);

/// [[E, Lambda]]: the Lie derivative of Lambda along E.
Multivector schouten_el(const Multivector& e, const Multivector& lambda);

/// E ^ Lambda with the normalization matching schouten_ll.
Multivector wedge(const Multivector& e, const Multivector& lambda);

/// Left sides of the coordinate Jacobi equations: a degree-3 array from the
/// bracket-of-bivector equation and a degree-2 array from the E equation.
std::pair<Multivector, Multivector> coordinate_jacobi_residuals(const GroupJacobiStructure& jg);

struct ManifoldReport {
  bool ok = true;
  bool schouten_ll_zero = false;   // [[Lambda,Lambda]] = 0 (degenerate class)
  ZeroTier worst_tier = ZeroTier::Exact;
  bool formulations_agree = true;  // Schouten predicates vs coordinate equations
  std::vector<std::string> failures;
};

/// Asserts [[Lambda,Lambda]] = 2 E^Lambda and [[E,Lambda]] = 0, and
/// cross-checks against the coordinate Jacobi equations.
ManifoldReport is_jacobi_manifold(const GroupJacobiStructure& jg, const ZeroOptions& opt = {});

}  // namespace jacobi

#endif
