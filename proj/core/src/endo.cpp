#include "nrh/endo.hpp"

#include "nrh/errors.hpp"

namespace nrh {

SkewEndomorphism::SkewEndomorphism(SpacePtr sp, Mat m, bool check)
    : space(std::move(sp)), M(std::move(m)) {
  if (M.rows != space->dim || M.cols != space->dim) throw Error("endomorphism size mismatch");
  if (check && !so_action_on_metric(*this).is_zero())
    throw Error("endomorphism is not metric-skew");
}

Rat SkewEndomorphism::form(int i, int j) const {
  Rat s = 0;
  for (int k = 0; k < space->dim; ++k) s += space->G(k, j) * M(k, i);
  return s;  // g(M e_i, e_j)
}

SkewEndomorphism SkewEndomorphism::operator+(const SkewEndomorphism& o) const {
  require_same_space(space, o.space);
  return SkewEndomorphism(space, M + o.M, false);
}

SkewEndomorphism SkewEndomorphism::operator*(const Rat& s) const {
  return SkewEndomorphism(space, s * M, false);
}

SkewEndomorphism bracket(const SkewEndomorphism& x, const SkewEndomorphism& y) {
  require_same_space(x.space, y.space);
  return SkewEndomorphism(x.space, bracket(x.M, y.M), false);
}

SkewEndomorphism bivector_endo(const MultiVector& b) {
  if (b.grade != 2) throw GradeError("bivector_endo requires grade 2");
  int n = b.space->dim;
  // Full antisymmetric coefficient table B, then M = B^T G.
  Mat B(n, n);
  for (auto& [idx, c] : b.coeffs) {
    B(idx[0], idx[1]) = c;
    B(idx[1], idx[0]) = -c;
  }
  return SkewEndomorphism(b.space, B.transposed() * b.space->G, false);
}

MultiVector endo_bivector(const SkewEndomorphism& xi) {
  // Invert M = B^T G  =>  B = (M G^{-1})^T.
  Mat B = (xi.M * xi.space->Ginv).transposed();
  MultiVector out(xi.space, 2);
  for (int i = 0; i < B.rows; ++i)
    for (int j = i + 1; j < B.cols; ++j)
      if (B(i, j) != 0) out.add_term({i, j}, B(i, j));
  return out;
}

MultiVector so_action(const SkewEndomorphism& xi, const MultiVector& t) {
  require_same_space(xi.space, t.space);
  MultiVector r(t.space, t.grade);
  int n = t.space->dim;
  for (auto& [idx, c] : t.coeffs)
    for (size_t pos = 0; pos < idx.size(); ++pos)
      for (int a = 0; a < n; ++a) {
        const Rat& m = xi.M(a, idx[pos]);
        if (m == 0) continue;
        std::vector<int> nidx = idx;
        nidx[pos] = a;
        r.add_term(std::move(nidx), m * c);
      }
  return r;
}

SkewEndomorphism so_action(const SkewEndomorphism& xi, const SkewEndomorphism& a) {
  return bracket(xi, a);
}

Mat so_action_on_metric(const SkewEndomorphism& xi) {
  Mat z = xi.M.transposed() * xi.space->G + xi.space->G * xi.M;
  return Rat(-1) * z;
}

}  // namespace nrh
