#include "nrh/subspace.hpp"

namespace nrh {

Subspace::Subspace(SpacePtr sp, const std::vector<Vec>& vectors) : space(std::move(sp)) {
  basis = span_basis(vectors);
}

bool Subspace::contains(const Subspace& other) const {
  for (auto& v : other.basis)
    if (!contains(v)) return false;
  return true;
}

Mat Subspace::gram() const {
  int k = dim();
  Mat S(k, k);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) S(i, j) = space->g(basis[i], basis[j]);
  return S;
}

bool Subspace::nondegenerate() const {
  Mat S = gram();
  return rank(S) == dim();
}

Subspace Subspace::orthogonal_complement() const {
  // {v : g(b_i, v) = 0 for all i} = nullspace of B G.
  Mat BG(dim(), space->dim);
  for (int i = 0; i < dim(); ++i) {
    Vec w = space->flat(basis[i]);
    for (int j = 0; j < space->dim; ++j) BG(i, j) = w[j];
  }
  return Subspace(space, nullspace(BG));
}

Subspace Subspace::intersect(const Subspace& other) const {
  // Solve a x_a + b x_b spanning: intersection via nullspace of [B1^T | -B2^T].
  int k1 = dim(), k2 = other.dim();
  if (k1 == 0 || k2 == 0) return Subspace(space, {});
  Mat m(space->dim, k1 + k2);
  for (int j = 0; j < k1; ++j)
    for (int i = 0; i < space->dim; ++i) m(i, j) = basis[j][i];
  for (int j = 0; j < k2; ++j)
    for (int i = 0; i < space->dim; ++i) m(i, k1 + j) = -other.basis[j][i];
  std::vector<Vec> vecs;
  for (auto& x : nullspace(m)) {
    Vec v(space->dim);
    for (int j = 0; j < k1; ++j) v = v + x[j] * basis[j];
    vecs.push_back(std::move(v));
  }
  return Subspace(space, vecs);
}

Subspace Subspace::sum(const Subspace& other) const {
  std::vector<Vec> all = basis;
  all.insert(all.end(), other.basis.begin(), other.basis.end());
  return Subspace(space, all);
}

}  // namespace nrh
