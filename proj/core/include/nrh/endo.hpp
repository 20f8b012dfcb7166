#pragma once
#include "nrh/multivector.hpp"

namespace nrh {

// Endomorphism skew with respect to the metric: M^T G + G M = 0.
struct SkewEndomorphism {
  SpacePtr space;
  Mat M;

  SkewEndomorphism() = default;
  SkewEndomorphism(SpacePtr sp, Mat m, bool check = true);

  Vec apply(const Vec& v) const { return M * v; }
  // The associated 2-form value g(M x, y) on basis vectors.
  Rat form(int i, int j) const;
  bool is_zero() const { return M.is_zero(); }

  SkewEndomorphism operator+(const SkewEndomorphism& o) const;
  SkewEndomorphism operator*(const Rat& s) const;
};

SkewEndomorphism bracket(const SkewEndomorphism& x, const SkewEndomorphism& y);

// (X ^ Y) Z = g(X,Z) Y - g(Y,Z) X, extended bilinearly over a grade-2 input.
SkewEndomorphism bivector_endo(const MultiVector& b);
MultiVector endo_bivector(const SkewEndomorphism& xi);

// Derivation action of so(r,s) on exterior powers; grade-0 elements map to 0.
MultiVector so_action(const SkewEndomorphism& xi, const MultiVector& t);
// Action on an endomorphism-valued tensor: commutator.
SkewEndomorphism so_action(const SkewEndomorphism& xi, const SkewEndomorphism& a);
// Action on the metric as a covariant symmetric 2-tensor: -(M^T G + G M).
Mat so_action_on_metric(const SkewEndomorphism& xi);

}  // namespace nrh
