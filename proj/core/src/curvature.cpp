#include "nrh/curvature.hpp"

#include "nrh/errors.hpp"

namespace nrh {

void CurvatureTensor::set(int i, int j, const Mat& m) {
  if (i == j) throw Error("curvature slot (i,i)");
  if (i < j) {
    if (m.is_zero()) vals.erase({i, j});
    else vals[{i, j}] = m;
  } else {
    set(j, i, Rat(-1) * m);
  }
}

void CurvatureTensor::add(int i, int j, const Mat& m) { set(i, j, get(i, j) + (i < j ? m : Rat(-1) * m)); }

Mat CurvatureTensor::get(int i, int j) const {
  bool flip = i > j;
  if (flip) std::swap(i, j);
  auto it = vals.find({i, j});
  Mat m = (it == vals.end()) ? Mat(space->dim, space->dim) : it->second;
  return flip ? Rat(-1) * m : m;
}

bool CurvatureTensor::is_zero() const {
  for (auto& [k, m] : vals)
    if (!m.is_zero()) return false;
  return true;
}

bool CurvatureTensor::values_skew() const {
  for (auto& [k, m] : vals) {
    SkewEndomorphism e(space, m, false);
    if (!so_action_on_metric(e).is_zero()) return false;
  }
  return true;
}

CurvatureTensor CurvatureTensor::operator+(const CurvatureTensor& o) const {
  require_same_space(space, o.space);
  CurvatureTensor r = *this;
  for (auto& [k, m] : o.vals) r.set(k.first, k.second, r.get(k.first, k.second) + m);
  return r;
}

CurvatureTensor CurvatureTensor::operator*(const Rat& s) const {
  CurvatureTensor r(space);
  if (s == 0) return r;
  for (auto& [k, m] : vals) r.vals[k] = s * m;
  return r;
}

bool CurvatureTensor::operator==(const CurvatureTensor& o) const {
  int n = space->dim;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (get(i, j) != o.get(i, j)) return false;
  return true;
}

SubalgebraSO CurvatureTensor::image_span() const {
  std::vector<SkewEndomorphism> gens;
  for (auto& [k, m] : vals) gens.emplace_back(space, m, false);
  return SubalgebraSO(space, gens);
}

Vec CurvatureTensor::flatten() const {
  int n = space->dim;
  size_t per = static_cast<size_t>(n) * n;
  Vec out;
  out.reserve(static_cast<size_t>(n) * (n - 1) / 2 * per);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat m = get(i, j);
      out.insert(out.end(), m.a.begin(), m.a.end());
    }
  return out;
}

CurvatureTensor CurvatureTensor::unflatten(SpacePtr sp, const Vec& data) {
  int n = sp->dim;
  size_t per = static_cast<size_t>(n) * n;
  CurvatureTensor r(sp);
  size_t off = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat m(n, n);
      std::copy(data.begin() + off, data.begin() + off + per, m.a.begin());
      off += per;
      r.set(i, j, m);
    }
  return r;
}

CurvatureTensor so_action(const SkewEndomorphism& xi, const CurvatureTensor& r) {
  require_same_space(xi.space, r.space);
  int n = r.space->dim;
  CurvatureTensor out(r.space);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat acc = bracket(xi.M, r.get(i, j));
      // -R(xi e_i, e_j) - R(e_i, xi e_j)
      for (int a = 0; a < n; ++a) {
        if (xi.M(a, i) != 0) acc = acc - xi.M(a, i) * r.get(a, j);
        if (xi.M(a, j) != 0) acc = acc - xi.M(a, j) * r.get(i, a);
      }
      out.set(i, j, acc);
    }
  return out;
}

BianchiResidual bianchi_residual(const CurvatureTensor& r, const TorsionTensor& t, int sign) {
  require_same_space(r.space, t.space);
  int n = r.space->dim;
  BianchiResidual res;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec s = r.apply(i, j, r.space->basis_vector(k));
        s = s + r.apply(j, k, r.space->basis_vector(i));
        s = s + r.apply(k, i, r.space->basis_vector(j));
        Vec st = t.vec(t.vec(i, j), t.space->basis_vector(k));
        st = st + t.vec(t.vec(j, k), t.space->basis_vector(i));
        st = st + t.vec(t.vec(k, i), t.space->basis_vector(j));
        s = s - Rat(sign) * st;
        if (!nrh::is_zero(s)) res.nonzero[{i, j, k}] = std::move(s);
      }
  return res;
}

bool pair_symmetry_check(const CurvatureTensor& r) {
  int n = r.space->dim;
  const Mat& G = r.space->G;
  auto comp = [&](int i, int j, int k, int l) {
    Vec v = r.apply(i, j, r.space->basis_vector(k));
    Rat s = 0;
    for (int a = 0; a < n; ++a)
      if (v[a] != 0) s += v[a] * G(a, l);
    return s;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int l = k + 1; l < n; ++l)
          if (comp(i, j, k, l) != comp(k, l, i, j)) return false;
  return true;
}

bool second_bianchi_check(const CurvatureTensor& r, const TorsionTensor& t) {
  int n = r.space->dim;
  auto rv = [&](const Vec& x, const Vec& y) {
    // R(x,y) applied bilinearly, as a matrix
    Mat m(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (x[i] != 0 && y[j] != 0 && i != j) m = m + (x[i] * y[j]) * r.get(i, j);
    return m;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) {
        Vec ei = r.space->basis_vector(i), ej = r.space->basis_vector(j),
            ek = r.space->basis_vector(k);
        Mat s = rv(t.vec(i, j), ek) + rv(t.vec(j, k), ei) + rv(t.vec(k, i), ej);
        if (!s.is_zero()) return false;
      }
  return true;
}

CurvatureTensor curvature_from_lc(const CurvatureTensor& rg, const TorsionTensor& t) {
  require_same_space(rg.space, t.space);
  int n = rg.space->dim;
  CurvatureTensor out(rg.space);
  std::vector<SkewEndomorphism> te;
  for (int i = 0; i < n; ++i) te.push_back(t.endo(rg.space->basis_vector(i)));
  Rat quarter(1, 4), half(1, 2);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Mat m = rg.get(i, j);
      m = m + quarter * bracket(te[i].M, te[j].M);
      m = m - half * t.endo(t.vec(i, j)).M;
      out.set(i, j, m);
    }
  return out;
}

CurvatureSpace curvature_space(const SubalgebraSO& g, const TorsionTensor& t) {
  require_same_space(g.space, t.space);
  const SpacePtr& sp = g.space;
  int n = sp->dim;
  int m = g.dim();
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  int P = static_cast<int>(pairs.size());
  int unknowns = P * m;

  // Row block per basis triple: cyclic sum of R(e_i,e_j)e_k minus the torsion
  // side (right-hand side of the linear system).
  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k) triples.push_back({i, j, k});
  Mat A(static_cast<int>(triples.size()) * n, std::max(unknowns, 1));
  Vec b(static_cast<int>(triples.size()) * n);

  auto pair_index = [&](int i, int j) {
    int sgn = 1;
    if (i > j) { std::swap(i, j); sgn = -1; }
    // index of (i,j) in lexicographic pair order
    int idx = 0;
    for (int a = 0; a < i; ++a) idx += n - 1 - a;
    idx += j - i - 1;
    return std::make_pair(idx, sgn);
  };

  for (size_t tr = 0; tr < triples.size(); ++tr) {
    auto [i, j, k] = triples[tr];
    int row0 = static_cast<int>(tr) * n;
    auto add_term = [&](int a, int b2, int c) {
      auto [pidx, sgn] = pair_index(a, b2);
      for (int u = 0; u < m; ++u) {
        Vec col = g.basis[u].M * sp->basis_vector(c);
        for (int r = 0; r < n; ++r)
          if (col[r] != 0) A(row0 + r, pidx * m + u) += Rat(sgn) * col[r];
      }
    };
    add_term(i, j, k);
    add_term(j, k, i);
    add_term(k, i, j);
    Vec st = t.vec(t.vec(i, j), sp->basis_vector(k));
    st = st + t.vec(t.vec(j, k), sp->basis_vector(i));
    st = st + t.vec(t.vec(k, i), sp->basis_vector(j));
    for (int r = 0; r < n; ++r) b[row0 + r] = Rat(kBianchiSign) * st[r];
  }

  auto assemble = [&](const Vec& x) {
    CurvatureTensor R(sp);
    for (int pi = 0; pi < P; ++pi) {
      Mat acc(n, n);
      for (int u = 0; u < m; ++u)
        if (x[static_cast<size_t>(pi) * m + u] != 0)
          acc = acc + x[static_cast<size_t>(pi) * m + u] * g.basis[u].M;
      R.set(pairs[pi].first, pairs[pi].second, acc);
    }
    return R;
  };

  CurvatureSpace cs;
  cs.algebra = g;
  cs.torsion = t;
  if (unknowns == 0) {
    if (nrh::is_zero(b)) cs.particular = CurvatureTensor(sp);
    return cs;
  }
  if (auto sol = solve(A, b)) cs.particular = assemble(*sol);
  for (auto& h : nullspace(A)) cs.homogeneous_basis.push_back(assemble(h));
  return cs;
}

bool berger_check(const SubalgebraSO& g, const TorsionTensor& t) {
  CurvatureSpace cs = curvature_space(g, t);
  std::vector<SkewEndomorphism> gens;
  auto collect = [&](const CurvatureTensor& r) {
    for (auto& [k, m] : r.vals) gens.emplace_back(g.space, m, false);
  };
  if (cs.particular) collect(*cs.particular);
  for (auto& h : cs.homogeneous_basis) collect(h);
  SubalgebraSO span(g.space, gens);
  return span.same_span(g);
}

std::vector<PMap> p_space(const SubalgebraSO& h) {
  const SpacePtr& sp = h.space;
  int n = sp->dim;
  int m = h.dim();
  if (m == 0) return {};
  // Unknowns: x[i*m+u] with P(e_i) = sum_u x h_u.
  // Constraint rows: cyclic sum of g(P(e_i) e_j, e_k) over all triples.
  std::vector<std::array<int, 3>> triples;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) triples.push_back({i, j, k});
  Mat A(static_cast<int>(triples.size()), n * m);
  auto gval = [&](int u, int j, int k) {  // g(h_u e_j, e_k)
    Vec v = h.basis[u].M * sp->basis_vector(j);
    Rat s = 0;
    for (int a = 0; a < n; ++a)
      if (v[a] != 0) s += v[a] * sp->G(a, k);
    return s;
  };
  for (size_t tr = 0; tr < triples.size(); ++tr) {
    auto [i, j, k] = triples[tr];
    for (int u = 0; u < m; ++u) {
      A(static_cast<int>(tr), i * m + u) += gval(u, j, k);
      A(static_cast<int>(tr), j * m + u) += gval(u, k, i);
      A(static_cast<int>(tr), k * m + u) += gval(u, i, j);
    }
  }
  std::vector<PMap> out;
  for (auto& x : nullspace(A)) {
    PMap pm;
    pm.space = sp;
    for (int i = 0; i < n; ++i) {
      Mat acc(n, n);
      for (int u = 0; u < m; ++u)
        if (x[static_cast<size_t>(i) * m + u] != 0)
          acc = acc + x[static_cast<size_t>(i) * m + u] * h.basis[u].M;
      pm.P.push_back(std::move(acc));
    }
    out.push_back(std::move(pm));
  }
  return out;
}

}  // namespace nrh
