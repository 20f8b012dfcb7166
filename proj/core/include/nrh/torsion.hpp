#pragma once
#include "nrh/endo.hpp"

namespace nrh {

// Totally skew torsion, stored as a 3-vector (all indices raised).
struct TorsionTensor {
  SpacePtr space;
  MultiVector form;  // grade 3

  TorsionTensor() = default;
  explicit TorsionTensor(MultiVector f);
  static TorsionTensor zero(SpacePtr sp) { return TorsionTensor(MultiVector(sp, 3)); }

  bool is_zero() const { return form.is_zero(); }
  // T(X,Y) as a vector.
  Vec vec(const Vec& x, const Vec& y) const;
  Vec vec(int i, int j) const;
  // T(X) as a skew endomorphism: T(X)Y = T(X,Y).
  SkewEndomorphism endo(const Vec& x) const;
  // Scalar g(T(X,Y),Z) on basis indices.
  Rat component(int i, int j, int k) const { return form.covariant_component({i, j, k}); }
};

MultiVector so_action(const SkewEndomorphism& xi, const TorsionTensor& t);

// The 4-form sigma_T(X,Y,Z,W) = g(cyclic-sum T(T(X,Y),Z), W), returned as a
// 4-vector. Verifies total antisymmetry and the derivation identity
// (T(X).T)(Y,Z,V) = sigma_T(Y,Z,V,X); inconsistency raises InternalError.
MultiVector sigma_of(const TorsionTensor& t);

// Raises all indices of a fully covariant antisymmetric coefficient table
// given on strictly increasing tuples.
MultiVector raise_indices(SpacePtr sp, int grade,
                          const std::map<std::vector<int>, Rat>& covariant);

}  // namespace nrh
