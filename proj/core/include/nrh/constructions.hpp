#pragma once
#include <map>

#include "nrh/model.hpp"

namespace nrh {

// ---- Riemannian mini-catalog (base blocks for the Lorentzian builders) ----

// Flat R^d: R = 0, T = 0.
InfinitesimalModel riemannian_flat(int d);
// Constant curvature R(X,Y) = a X^Y, T = 0 (round-sphere type for a > 0).
InfinitesimalModel riemannian_constant_curvature(int d, const Rat& a);
// R^3 with T = c vol and R(X,Y) = b X^Y (bi-invariant so(3)-type model).
InfinitesimalModel riemannian_so3(const Rat& b, const Rat& c);

// Orthogonal direct sum of two models (block metric, T = T1 + T2, block R).
InfinitesimalModel model_direct_sum(const InfinitesimalModel& a, const InfinitesimalModel& b);

// ---- Product extension ----

// Extends a base model by a commutative subalgebra n = span{sigma_i} of
// so(m_0) commuting with b_0 = im R_0 and annihilating T_0. The new model
// lives on m_0 (+) L_0 with T = T_0 + sum sigma_i ^ V_i and
// R = R_0 + sum eps_i sigmabar_i o sigmabar_i. When b_0 n n = 0 the holonomy
// equals b_0 (+) n.
struct ExtensionInput {
  InfinitesimalModel base;
  std::vector<SkewEndomorphism> sigmas;  // basis of n
  std::vector<int> epsilons;             // +-1, metric signs of the V_i
};

struct ExtensionResult {
  InfinitesimalModel model;
  bool holonomy_overlap = false;  // b_0 n n != 0: holonomy claim not asserted
};

// Throws FamilyConstraintError when n is not commutative, does not commute
// with b_0, or does not annihilate T_0.
ExtensionResult extend_product(const ExtensionInput& in);

// ---- Weak-irreducibility type builders ----

// Generator set of the stated family over witt(n), n = h.space->dim:
//   1: (R p^q + h) |x p^R^n             2: h |x p^R^n
//   3: {phi(A) p^q + A} |x p^R^n        4: {A + p^psi(A)} |x p^R^m
// phi is given on the echelon basis of h; psi maps that basis to screen
// vectors supported outside the first m directions' span.
SubalgebraSO build_weak_type(int type, const SubalgebraSO& h, const Vec& phi = {},
                             const std::vector<Vec>& psi = {}, int m = 0);

// ---- Named families ----

struct FamilyParams {
  std::map<std::string, Rat> scalars;
  std::map<std::string, Mat> matrices;
  std::string base;            // Riemannian base id: flat | const-curv | so3
  int base_dim = 0;
  std::map<std::string, Rat> base_scalars;

  Rat scalar(const std::string& name, const Rat& def = Rat(0)) const;
  const Mat* matrix(const std::string& name) const;
};

struct ConstraintReport {
  std::vector<std::pair<std::string, bool>> clauses;  // clause text, satisfied
  bool pass() const {
    for (auto& [c, ok] : clauses)
      if (!ok) return false;
    return true;
  }
  std::string first_failure() const {
    for (auto& [c, ok] : clauses)
      if (!ok) return c;
    return "";
  }
};

// Evaluates every displayed constraint of the named family.
ConstraintReport family_constraint_check(const std::string& family, const FamilyParams& p);

// Assembles the model of the named family; throws FamilyConstraintError when
// a structural constraint fails (soft indecomposability clauses are reported
// by family_constraint_check but do not block construction).
InfinitesimalModel build_family(const std::string& family, const FamilyParams& p);

struct CatalogEntry {
  std::string family;
  int dim = 0;
  std::vector<std::string> params;  // scalar parameter names swept by the grid
  std::string label;                // symmetric | plane-wave | Ex-9.1..Ex-9.4 | group
  std::string description;
};

// Shipped families per dimension (3, 4, 5).
std::vector<CatalogEntry> catalog(int dim);
std::vector<std::string> known_families();

// Default rational parameter grid {-2, -1, -1/2, 0, 1/2, 1, 2}.
std::vector<Rat> default_grid();

}  // namespace nrh
