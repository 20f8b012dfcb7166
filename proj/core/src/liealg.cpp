#include "nrh/liealg.hpp"

#include <algorithm>

#include "nrh/errors.hpp"

namespace nrh {

namespace {
Vec vectorize(const Mat& m) { return m.a; }

Mat matrixize(const Vec& v, int n) {
  Mat m(n, n);
  m.a = v;
  return m;
}
}  // namespace

SubalgebraSO::SubalgebraSO(SpacePtr sp, std::vector<SkewEndomorphism> gens)
    : space(std::move(sp)), generators(std::move(gens)) {
  std::vector<Vec> rows;
  for (auto& g : generators) {
    require_same_space(space, g.space);
    rows.push_back(vectorize(g.M));
  }
  for (auto& r : span_basis(rows))
    basis.emplace_back(space, matrixize(r, space->dim), false);
}

bool SubalgebraSO::contains(const SkewEndomorphism& x) const {
  std::vector<Vec> rows;
  for (auto& b : basis) rows.push_back(vectorize(b.M));
  return in_span(rows, vectorize(x.M));
}

std::optional<Vec> SubalgebraSO::coordinates(const SkewEndomorphism& x) const {
  size_t n2 = static_cast<size_t>(space->dim) * space->dim;
  Mat m(static_cast<int>(n2), dim());
  for (int j = 0; j < dim(); ++j)
    for (size_t i = 0; i < n2; ++i) m(static_cast<int>(i), j) = basis[j].M.a[i];
  return solve(m, vectorize(x.M));
}

bool SubalgebraSO::bracket_closed() const {
  for (int i = 0; i < dim(); ++i)
    for (int j = i + 1; j < dim(); ++j)
      if (!contains(bracket(basis[i], basis[j]))) return false;
  return true;
}

bool SubalgebraSO::same_span(const SubalgebraSO& o) const {
  if (dim() != o.dim()) return false;
  for (auto& b : o.basis)
    if (!contains(b)) return false;
  return true;
}

SubalgebraSO lie_closure(SpacePtr sp, std::vector<SkewEndomorphism> gens) {
  SubalgebraSO cur(sp, gens);
  for (;;) {
    std::vector<SkewEndomorphism> next = cur.basis;
    bool grew = false;
    for (int i = 0; i < cur.dim(); ++i)
      for (int j = i + 1; j < cur.dim(); ++j) {
        SkewEndomorphism br = bracket(cur.basis[i], cur.basis[j]);
        if (!cur.contains(br)) {
          next.push_back(br);
          grew = true;
        }
      }
    if (!grew) return cur;
    cur = SubalgebraSO(sp, next);
  }
}

SubalgebraSO so_full(const SpacePtr& sp) {
  std::vector<SkewEndomorphism> gens;
  for (int i = 0; i < sp->dim; ++i)
    for (int j = i + 1; j < sp->dim; ++j)
      gens.push_back(bivector_endo(MultiVector::blade(sp, {i, j})));
  return SubalgebraSO(sp, gens);
}

SubalgebraSO annihilator(const SubalgebraSO& ambient, const MultiVector& t) {
  int k = ambient.dim();
  if (k == 0) return ambient;
  std::vector<Vec> cols;
  for (auto& xi : ambient.basis) cols.push_back(so_action(xi, t).flatten());
  Mat m(static_cast<int>(cols[0].size()), k);
  for (int j = 0; j < k; ++j)
    for (size_t i = 0; i < cols[j].size(); ++i) m(static_cast<int>(i), j) = cols[j][i];
  std::vector<SkewEndomorphism> gens;
  for (auto& x : nullspace(m)) {
    Mat sum(ambient.space->dim, ambient.space->dim);
    for (int j = 0; j < k; ++j)
      if (x[j] != 0) sum = sum + x[j] * ambient.basis[j].M;
    gens.emplace_back(ambient.space, std::move(sum), false);
  }
  return SubalgebraSO(ambient.space, gens);
}

Subspace fixed_vectors(const SubalgebraSO& alg) {
  int n = alg.space->dim;
  if (alg.dim() == 0) {
    std::vector<Vec> all;
    for (int i = 0; i < n; ++i) all.push_back(alg.space->basis_vector(i));
    return Subspace(alg.space, all);
  }
  Mat stacked(alg.dim() * n, n);
  for (int b = 0; b < alg.dim(); ++b)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) stacked(b * n + i, j) = alg.basis[b].M(i, j);
  return Subspace(alg.space, nullspace(stacked));
}

AbstractLieAlgebra::AbstractLieAlgebra(int n, std::vector<std::string> lbls)
    : dim(n), labels(std::move(lbls)) {
  if (labels.empty())
    for (int i = 0; i < n; ++i) labels.push_back("x" + std::to_string(i));
  c.assign(n, std::vector<Vec>(n, Vec(n)));
}

void AbstractLieAlgebra::set_bracket(int i, int j, Vec v) {
  c[i][j] = v;
  c[j][i] = Rat(-1) * v;
}

Vec AbstractLieAlgebra::bracket_vec(const Vec& x, const Vec& y) const {
  Vec r(dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0) continue;
    for (int j = 0; j < dim; ++j) {
      if (y[j] == 0) continue;
      Rat f = x[i] * y[j];
      for (int k = 0; k < dim; ++k)
        if (c[i][j][k] != 0) r[k] += f * c[i][j][k];
    }
  }
  return r;
}

Mat AbstractLieAlgebra::ad(const Vec& x) const {
  Mat m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    Vec col = bracket_vec(x, [&] {
      Vec e(dim);
      e[j] = 1;
      return e;
    }());
    for (int i = 0; i < dim; ++i) m(i, j) = col[i];
  }
  return m;
}

bool AbstractLieAlgebra::jacobi_ok() const {
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j)
      for (int k = j + 1; k < dim; ++k) {
        Vec ei(dim), ej(dim), ek(dim);
        ei[i] = 1; ej[j] = 1; ek[k] = 1;
        Vec s = bracket_vec(ei, bracket_vec(ej, ek));
        s = s + bracket_vec(ej, bracket_vec(ek, ei));
        s = s + bracket_vec(ek, bracket_vec(ei, ej));
        if (!is_zero(s)) return false;
      }
  return true;
}

std::vector<Vec> derived_basis(const AbstractLieAlgebra& L, const std::vector<Vec>& sub) {
  std::vector<Vec> brs;
  for (size_t i = 0; i < sub.size(); ++i)
    for (size_t j = i + 1; j < sub.size(); ++j) brs.push_back(L.bracket_vec(sub[i], sub[j]));
  return span_basis(brs);
}

StructureReport structure_report(const AbstractLieAlgebra& L) {
  StructureReport rep;
  rep.jacobi_ok = L.jacobi_ok();
  rep.killing = Mat(L.dim, L.dim);
  std::vector<Mat> ads;
  for (int i = 0; i < L.dim; ++i) {
    Vec e(L.dim);
    e[i] = 1;
    ads.push_back(L.ad(e));
  }
  for (int i = 0; i < L.dim; ++i)
    for (int j = 0; j < L.dim; ++j) {
      Mat prod = ads[i] * ads[j];
      Rat tr = 0;
      for (int k = 0; k < L.dim; ++k) tr += prod(k, k);
      rep.killing(i, j) = tr;
    }
  // Derived series.
  std::vector<Vec> cur;
  for (int i = 0; i < L.dim; ++i) {
    Vec e(L.dim);
    e[i] = 1;
    cur.push_back(e);
  }
  rep.derived_series_dims.push_back(L.dim);
  for (;;) {
    std::vector<Vec> next = derived_basis(L, cur);
    if (next.size() == cur.size()) break;
    rep.derived_series_dims.push_back(static_cast<int>(next.size()));
    cur = std::move(next);
    if (cur.empty()) break;
  }
  rep.solvable = rep.derived_series_dims.back() == 0 || L.dim == 0;
  // Lower central series for nilpotency.
  {
    std::vector<Vec> full;
    for (int i = 0; i < L.dim; ++i) {
      Vec e(L.dim);
      e[i] = 1;
      full.push_back(e);
    }
    std::vector<Vec> lc = full;
    for (int iter = 0; iter <= L.dim + 1; ++iter) {
      std::vector<Vec> brs;
      for (auto& x : full)
        for (auto& y : lc) brs.push_back(L.bracket_vec(x, y));
      std::vector<Vec> next = span_basis(brs);
      if (next.size() == lc.size()) break;
      lc = std::move(next);
    }
    rep.nilpotent = lc.empty();
  }
  // Center: common kernel of all ad maps.
  Mat stacked(L.dim * L.dim, L.dim);
  for (int b = 0; b < L.dim; ++b)
    for (int i = 0; i < L.dim; ++i)
      for (int j = 0; j < L.dim; ++j) stacked(b * L.dim + i, j) = ads[b](i, j);
  rep.center_dim = static_cast<int>(nullspace(stacked).size());
  return rep;
}

LieClassification classify_dim3(const AbstractLieAlgebra& L) {
  if (L.dim != 3) throw DimensionError("classify_dim3 requires dim 3");
  StructureReport rep = structure_report(L);
  LieClassification cls;
  cls.killing_signature = inertia(rep.killing);
  cls.derived_series_dims = rep.derived_series_dims;
  cls.center_dim = rep.center_dim;
  const Inertia& sig = cls.killing_signature;
  bool killing_zero = rep.killing.is_zero();
  bool abelian = true;
  for (int i = 0; i < 3 && abelian; ++i)
    for (int j = 0; j < 3 && abelian; ++j)
      if (!is_zero(L.c[i][j])) abelian = false;
  if (sig.zero == 0) {
    if (sig.neg == 3) {
      cls.label = "so3";
      cls.evidence = "Killing form negative definite";
    } else {
      cls.label = "so12";
      cls.evidence = "Killing form nondegenerate indefinite";
    }
  } else if (abelian) {
    cls.label = "abelian";
    cls.evidence = "all structure constants vanish";
  } else if (killing_zero && cls.center_dim == 1 && rep.nilpotent) {
    cls.label = "heisenberg3";
    cls.evidence = "Killing zero, 1-dim center, nilpotent";
  } else if (rep.solvable) {
    cls.label = "solvable";
    cls.evidence = "degenerate Killing form, derived series terminates";
  } else {
    cls.label = "unknown";
    cls.evidence = "degenerate Killing form, not solvable";
  }
  return cls;
}

AbstractLieAlgebra subalgebra_on(const AbstractLieAlgebra& L, const std::vector<Vec>& sub_basis,
                                 std::vector<std::string> labels) {
  int k = static_cast<int>(sub_basis.size());
  AbstractLieAlgebra out(k, std::move(labels));
  Mat m(L.dim, k);
  for (int j = 0; j < k; ++j)
    for (int i = 0; i < L.dim; ++i) m(i, j) = sub_basis[j][i];
  for (int i = 0; i < k; ++i)
    for (int j = i + 1; j < k; ++j) {
      Vec br = L.bracket_vec(sub_basis[i], sub_basis[j]);
      auto sol = solve(m, br);
      if (!sol) throw Error("basis does not span a subalgebra");
      out.set_bracket(i, j, *sol);
    }
  return out;
}

}  // namespace nrh
