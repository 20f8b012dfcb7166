#pragma once
#include <string>

#include "nrh/endo.hpp"
#include "nrh/subspace.hpp"

namespace nrh {

// Subalgebra of so(r,s) with a canonical echelon basis of its span.
struct SubalgebraSO {
  SpacePtr space;
  std::vector<SkewEndomorphism> generators;
  std::vector<SkewEndomorphism> basis;  // echelon basis of the span

  SubalgebraSO() = default;
  explicit SubalgebraSO(SpacePtr sp) : space(std::move(sp)) {}
  SubalgebraSO(SpacePtr sp, std::vector<SkewEndomorphism> gens);

  int dim() const { return static_cast<int>(basis.size()); }
  bool contains(const SkewEndomorphism& x) const;
  bool bracket_closed() const;
  // Coordinates of x in the echelon basis; nullopt if x is outside the span.
  std::optional<Vec> coordinates(const SkewEndomorphism& x) const;
  bool same_span(const SubalgebraSO& o) const;
};

// Smallest bracket-closed subspace containing the generators.
SubalgebraSO lie_closure(SpacePtr sp, std::vector<SkewEndomorphism> gens);

// Full so(r,s) of a space, as the images of all basis bivectors.
SubalgebraSO so_full(const SpacePtr& sp);

// {xi in ambient | xi . t = 0}; always a subalgebra when t is so-invariantly
// defined (verified by the caller's tests, not re-checked here).
SubalgebraSO annihilator(const SubalgebraSO& ambient, const MultiVector& t);

// Common kernel of all basis elements.
Subspace fixed_vectors(const SubalgebraSO& alg);

// Abstract Lie algebra by structure constants on a labelled basis.
struct AbstractLieAlgebra {
  int dim = 0;
  std::vector<std::string> labels;
  // c[i][j] = coordinates of [b_i, b_j]; antisymmetric in (i,j).
  std::vector<std::vector<Vec>> c;

  AbstractLieAlgebra() = default;
  AbstractLieAlgebra(int n, std::vector<std::string> lbls);
  void set_bracket(int i, int j, Vec v);
  Vec bracket_vec(const Vec& x, const Vec& y) const;
  bool jacobi_ok() const;
  Mat ad(const Vec& x) const;
};

struct StructureReport {
  Mat killing;
  std::vector<int> derived_series_dims;  // dim f, dim f', dim f'', ... until stable
  int center_dim = 0;
  bool jacobi_ok = true;
  bool solvable = false;
  bool nilpotent = false;
};

StructureReport structure_report(const AbstractLieAlgebra& L);

struct LieClassification {
  std::string label;  // so3, so12, heisenberg3, abelian, solvable, semisimple_sum, unknown
  Inertia killing_signature;
  std::vector<int> derived_series_dims;
  int center_dim = 0;
  std::string evidence;
};

LieClassification classify_dim3(const AbstractLieAlgebra& L);

// Restriction of the bracket to a subalgebra given by basis vectors (must be
// closed); returns the abstract algebra in that basis.
AbstractLieAlgebra subalgebra_on(const AbstractLieAlgebra& L, const std::vector<Vec>& sub_basis,
                                 std::vector<std::string> labels = {});

// Derived algebra basis (span of all brackets of basis elements).
std::vector<Vec> derived_basis(const AbstractLieAlgebra& L, const std::vector<Vec>& sub);

}  // namespace nrh
