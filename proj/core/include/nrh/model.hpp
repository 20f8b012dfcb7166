#pragma once
#include <optional>

#include "nrh/curvature.hpp"

namespace nrh {

// The central validated object: a metric vector space together with an
// algebraic curvature map R and a totally skew torsion T. For a naturally
// reductive space these are the values of the canonical connection's tensors
// at the origin.
struct InfinitesimalModel {
  SpacePtr space;
  CurvatureTensor R;
  TorsionTensor T;
  // Optional user-supplied splitting hint (lists of basis indices), consumed
  // by the classifier's invariant-subspace search.
  std::vector<std::vector<int>> candidate_splitting;

  InfinitesimalModel() = default;
  InfinitesimalModel(SpacePtr sp, CurvatureTensor r, TorsionTensor t)
      : space(std::move(sp)), R(std::move(r)), T(std::move(t)) {}

  // span(im R); for valid models this is bracket-closed and equals the
  // holonomy algebra of the canonical connection.
  SubalgebraSO holonomy() const { return R.image_span(); }
};

struct CheckResult {
  bool pass = true;
  std::string detail;  // first failing tuple, when applicable
};

struct ValidationReport {
  std::vector<std::pair<std::string, CheckResult>> checks;
  int holonomy_dim = 0;
  bool flat = false;        // R = 0
  bool torsion_free = false;  // T = 0

  bool pass() const {
    for (auto& [n, c] : checks)
      if (!c.pass) return false;
    return true;
  }
  const CheckResult* find(const std::string& name) const {
    for (auto& [n, c] : checks)
      if (n == name) return &c;
    return nullptr;
  }
};

// Runs every infinitesimal-model invariant: curvature values are metric-skew,
// pair symmetry, first Bianchi with torsion, second Bianchi, g.R = 0 and
// g.T = 0 for g = span(im R), bracket closure of g (compared against the Lie
// closure), and the natural-reductivity identity.
ValidationReport validate(const InfinitesimalModel& m);

// Transvection algebra f = g (+) m with [A,B] the matrix bracket, [A,X] = AX,
// [X,Y] = -R(X,Y) - T(X,Y). Basis order: g-basis first, then the m-basis.
// Throws ModelInconsistent if the Jacobi identity fails.
AbstractLieAlgebra transvection(const InfinitesimalModel& m);

// Weak-irreducibility type data for a subalgebra of so(1,n+1) preserving the
// isotropic line spanned by the first Witt basis vector p. Every element
// decomposes as -a p^q + A + p^X; the four families are
//   type 1: (R p^q + h) |x p^R^n        type 2: h |x p^R^n
//   type 3: {phi(A) p^q + A} |x p^R^n   type 4: {A + p^psi(A)} |x p^R^m
struct WeakTypeInfo {
  int type = 0;
  SpacePtr screen;            // Euclidean R^n of the Witt frame
  SubalgebraSO h;             // orthogonal part, as so(n) endomorphisms
  Vec phi;                    // type 3: phi on the basis of h
  std::vector<Vec> psi;       // type 4: psi(h-basis element) in R^n coordinates
  int m = 0;                  // type 4: h acts on the first m screen directions' span
  Subspace translational;     // g n p^R^n, as a subspace of the screen
};

// Detects the weak-irreducibility type of g. Requires a Witt-frame space with
// the invariant isotropic line spanned by basis vector 0 (throws NotAdapted
// otherwise); throws NotWeaklyIrreducible when g matches none of the types.
WeakTypeInfo weak_type(const SubalgebraSO& g);

struct CaseLabel {
  int case_id = 0;  // 1..7 per the holonomy case list; 0 = unknown
  std::string detail;
  std::optional<Subspace> L;  // Lorentzian factor of the invariant splitting
  std::optional<Subspace> E;  // Riemannian complement
  std::optional<WeakTypeInfo> weak;
  bool flat_or_symmetric = false;  // R = 0 or T = 0 special branches
};

// Places the model in the holonomy case list: 1 irreducible so(1,2);
// 2 weakly irreducible, not irreducible; 3 decomposable (T splits across an
// invariant nondegenerate splitting); 4-7 by the dimension of the Lorentzian
// factor L. Returns case 0 with evidence when the invariant-subspace search
// is inconclusive. Requires Lorentzian signature.
CaseLabel classify_case(const InfinitesimalModel& m);

}  // namespace nrh
