#pragma once
#include "nrh/space.hpp"

namespace nrh {

// Linear subspace with a canonical (reduced-echelon) basis.
struct Subspace {
  SpacePtr space;
  std::vector<Vec> basis;  // RREF rows, each of length space->dim

  Subspace() = default;
  Subspace(SpacePtr sp, const std::vector<Vec>& vectors);

  int dim() const { return static_cast<int>(basis.size()); }
  bool contains(const Vec& v) const { return in_span(basis, v); }
  bool contains(const Subspace& other) const;
  bool operator==(const Subspace& o) const { return basis == o.basis; }

  Mat gram() const;                 // restriction of the metric
  bool nondegenerate() const;
  Inertia restricted_signature() const { return inertia(gram()); }

  Subspace orthogonal_complement() const;
  Subspace intersect(const Subspace& other) const;
  Subspace sum(const Subspace& other) const;
};

}  // namespace nrh
