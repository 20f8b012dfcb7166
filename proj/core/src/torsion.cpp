#include "nrh/torsion.hpp"

#include <array>

#include "nrh/errors.hpp"

namespace nrh {

TorsionTensor::TorsionTensor(MultiVector f) : space(f.space), form(std::move(f)) {
  if (form.grade != 3) throw GradeError("torsion must be a 3-vector");
}

Vec TorsionTensor::vec(const Vec& x, const Vec& y) const {
  MultiVector s = interior(x, form);
  MultiVector r = interior(y, s);
  return r.as_vector();
}

Vec TorsionTensor::vec(int i, int j) const {
  return vec(space->basis_vector(i), space->basis_vector(j));
}

SkewEndomorphism TorsionTensor::endo(const Vec& x) const {
  int n = space->dim;
  Mat m(n, n);
  MultiVector s = interior(x, form);
  for (int j = 0; j < n; ++j) {
    Vec col = interior(space->basis_vector(j), s).as_vector();
    for (int i = 0; i < n; ++i) m(i, j) = col[i];
  }
  return SkewEndomorphism(space, std::move(m), false);
}

MultiVector so_action(const SkewEndomorphism& xi, const TorsionTensor& t) {
  return so_action(xi, t.form);
}

MultiVector raise_indices(SpacePtr sp, int grade,
                          const std::map<std::vector<int>, Rat>& covariant) {
  // For antisymmetric tables: t^{A} = sum_B det(Ginv[A,B]) t_{B} over
  // strictly increasing tuples A, B.
  MultiVector out(sp, grade);
  auto ts = MultiVector::tuples(sp->dim, grade);
  for (auto& A : ts) {
    Rat total = 0;
    for (auto& [B, v] : covariant) {
      // det of Ginv rows A, cols B
      std::vector<int> perm(grade);
      for (int i = 0; i < grade; ++i) perm[i] = i;
      Rat det = 0;
      do {
        int sign = 1;
        for (int i = 0; i < grade; ++i)
          for (int j = i + 1; j < grade; ++j)
            if (perm[i] > perm[j]) sign = -sign;
        Rat prod = Rat(sign);
        for (int r = 0; r < grade; ++r) prod *= sp->Ginv(A[r], B[perm[r]]);
        det += prod;
      } while (std::next_permutation(perm.begin(), perm.end()));
      total += det * v;
    }
    if (total != 0) out.coeffs[A] = total;
  }
  return out;
}

MultiVector sigma_of(const TorsionTensor& t) {
  const SpacePtr& sp = t.space;
  int n = sp->dim;
  // Covariant evaluation at arbitrary (not yet antisymmetrized) 4-tuples.
  auto eval = [&](int i, int j, int k, int l) {
    Vec s(n);
    s = s + t.vec(t.vec(i, j), sp->basis_vector(k));
    s = s + t.vec(t.vec(j, k), sp->basis_vector(i));
    s = s + t.vec(t.vec(k, i), sp->basis_vector(j));
    return sp->g(s, sp->basis_vector(l));
  };
  std::map<std::vector<int>, Rat> cov;
  for (auto& idx : MultiVector::tuples(n, 4)) {
    Rat v = eval(idx[0], idx[1], idx[2], idx[3]);
    if (v != 0) cov[idx] = v;
  }
  // Total antisymmetry: swapping the distinguished last slot with a cyclic
  // one must flip the sign.
  for (auto& idx : MultiVector::tuples(n, 4)) {
    Rat base = eval(idx[0], idx[1], idx[2], idx[3]);
    if (eval(idx[3], idx[1], idx[2], idx[0]) != -base ||
        eval(idx[0], idx[3], idx[2], idx[1]) != -base ||
        eval(idx[1], idx[0], idx[2], idx[3]) != -base)
      throw InternalError("sigma_T antisymmetrization inconsistency");
  }
  MultiVector sigma = raise_indices(sp, 4, cov);
  // Derivation identity: (T(X).T)(Y,Z,V) = sigma_T(Y,Z,V,X) for basis X.
  for (int x = 0; x < n; ++x) {
    SkewEndomorphism tx = t.endo(sp->basis_vector(x));
    MultiVector acted = so_action(tx, t.form);
    for (auto& idx : MultiVector::tuples(n, 3)) {
      Rat lhs = acted.covariant_component(idx);
      Rat rhs = sigma.covariant_component({idx[0], idx[1], idx[2], x});
      if (lhs != rhs) throw InternalError("sigma_T derivation identity failed");
    }
  }
  return sigma;
}

}  // namespace nrh
