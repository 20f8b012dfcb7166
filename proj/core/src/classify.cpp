#include <algorithm>
#include <sstream>

#include "nrh/errors.hpp"
#include "nrh/model.hpp"

namespace nrh {

namespace {

// Congruence diagonalization: returns C with C^T S C diagonal (Lagrange
// reduction with the hyperbolic-pair trick for zero diagonals).
Mat diag_congruence(Mat s, Mat& c) {
  int k = s.rows;
  c = Mat::identity(k);
  auto add_col = [&](Mat& m, int dst, int src, const Rat& f) {
    for (int i = 0; i < m.rows; ++i) m(i, dst) += f * m(i, src);
  };
  auto add_row = [&](Mat& m, int dst, int src, const Rat& f) {
    for (int j = 0; j < m.cols; ++j) m(dst, j) += f * m(src, j);
  };
  auto swap_col = [&](Mat& m, int a, int b) {
    for (int i = 0; i < m.rows; ++i) std::swap(m(i, a), m(i, b));
  };
  for (int t = 0; t < k; ++t) {
    if (s(t, t) == 0) {
      int j = -1;
      for (int r = t + 1; r < k; ++r)
        if (s(r, r) != 0) { j = r; break; }
      if (j >= 0) {
        swap_col(s, t, j);
        for (int col = 0; col < k; ++col) std::swap(s(t, col), s(j, col));
        swap_col(c, t, j);
      } else {
        for (int r = t + 1; r < k; ++r)
          if (s(t, r) != 0) { j = r; break; }
        if (j < 0) continue;
        add_col(s, t, j, 1);
        add_row(s, t, j, 1);
        add_col(c, t, j, 1);
      }
    }
    for (int r = t + 1; r < k; ++r) {
      Rat f = s(t, r) / s(t, t);
      if (f == 0) continue;
      add_col(s, r, t, -f);
      add_row(s, r, t, -f);
      add_col(c, r, t, -f);
    }
  }
  return s;
}

// Exact trilinear covariant torsion value g(T(x,y), z).
Rat t_eval(const InfinitesimalModel& m, const Vec& x, const Vec& y, const Vec& z) {
  return m.space->g(m.T.vec(x, y), z);
}

bool invariant_under(const SubalgebraSO& g, const Subspace& u) {
  for (auto& b : g.basis)
    for (auto& v : u.basis)
      if (!u.contains(b.M * v)) return false;
  return true;
}

Subspace orbit_span(const SubalgebraSO& g, const Vec& seed) {
  std::vector<Vec> vs{seed};
  for (;;) {
    Subspace cur(g.space, vs);
    std::vector<Vec> next = cur.basis;
    bool grew = false;
    for (auto& b : g.basis)
      for (auto& v : cur.basis) {
        Vec w = b.M * v;
        if (!is_zero(w) && !cur.contains(w)) {
          next.push_back(w);
          grew = true;
        }
      }
    if (!grew) return cur;
    vs = std::move(next);
  }
}

bool pos_definite(const Subspace& u) {
  Inertia s = u.restricted_signature();
  return s.neg == 0 && s.zero == 0;
}

bool lorentzian(const Subspace& u) {
  Inertia s = u.restricted_signature();
  return s.neg == 1 && s.zero == 0;
}

// Some timelike vector of a nondegenerate subspace with one negative
// direction, found by exact congruence diagonalization of the Gram matrix.
Vec timelike_vector(const Subspace& u) {
  Mat c;
  Mat d = diag_congruence(u.gram(), c);
  for (int t = 0; t < d.rows; ++t)
    if (d(t, t) < 0) {
      Vec v(u.space->dim);
      for (int i = 0; i < u.dim(); ++i)
        if (c(i, t) != 0) v = v + c(i, t) * u.basis[i];
      return v;
    }
  throw InternalError("no timelike direction in Lorentzian subspace");
}

bool action_is_trivial(const SubalgebraSO& g, const Subspace& u) {
  for (auto& b : g.basis)
    for (auto& v : u.basis)
      if (!is_zero(b.M * v)) return false;
  return true;
}

}  // namespace

WeakTypeInfo weak_type(const SubalgebraSO& g) {
  const SpacePtr& sp = g.space;
  if (sp->frame != FrameKind::witt)
    throw NotAdapted("weak_type requires a Witt-frame space");
  int n = sp->dim - 2;
  if (n < 1) throw DimensionError("weak_type requires dim >= 3");
  int k = g.dim();

  // Each element must preserve the line R p (p = basis vector 0).
  std::vector<Rat> as(k);
  std::vector<Mat> As(k, Mat(n, n));
  std::vector<Vec> Xs(k, Vec(n));
  for (int t = 0; t < k; ++t) {
    const Mat& M = g.basis[t].M;
    for (int i = 1; i < sp->dim; ++i)
      if (M(i, 0) != 0) throw NotAdapted("the isotropic line R p is not preserved");
    as[t] = M(0, 0);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) As[t](i, j) = M(i + 1, j + 1);
      Xs[t][i] = M(i + 1, n + 1);
    }
  }

  WeakTypeInfo info;
  SpacePtr screen = PseudoEuclideanSpace::euclidean(n);
  info.screen = screen;
  {
    std::vector<SkewEndomorphism> hg;
    for (auto& A : As) hg.emplace_back(screen, A, false);
    info.h = SubalgebraSO(screen, hg);
  }

  // Translational part V = g n p^R^n: combinations with a = 0 and A = 0.
  std::vector<Vec> vgens;
  {
    Mat m(1 + n * n, std::max(k, 1));
    for (int t = 0; t < k; ++t) {
      m(0, t) = as[t];
      for (size_t i = 0; i < As[t].a.size(); ++i) m(static_cast<int>(i) + 1, t) = As[t].a[i];
    }
    for (auto& x : nullspace(m)) {
      Vec X(n);
      for (int t = 0; t < k; ++t)
        if (x[t] != 0) X = X + x[t] * Xs[t];
      vgens.push_back(X);
    }
  }
  Subspace V(screen, vgens);
  info.translational = V;

  bool any_a = false;
  for (auto& a : as)
    if (a != 0) any_a = true;

  // Graph extraction: for each echelon basis element A of h, a group element
  // with that so(n)-part; returns its (a, X) data.
  auto rep_of = [&](const SkewEndomorphism& A, Rat& a_out, Vec& x_out) {
    size_t n2 = static_cast<size_t>(n) * n;
    Mat m(static_cast<int>(n2), k);
    for (int t = 0; t < k; ++t)
      for (size_t i = 0; i < n2; ++i) m(static_cast<int>(i), t) = As[t].a[i];
    Vec rhs = A.M.a;
    auto sol = solve(m, rhs);
    if (!sol) throw InternalError("orthogonal part outside its own span");
    a_out = 0;
    x_out = Vec(n);
    for (int t = 0; t < k; ++t)
      if ((*sol)[t] != 0) {
        a_out += (*sol)[t] * as[t];
        x_out = x_out + (*sol)[t] * Xs[t];
      }
  };

  if (any_a) {
    // Types 1 and 3 contain all of p^R^n.
    if (V.dim() != n) throw NotWeaklyIrreducible("a p^q component without full p^R^n");
    // Span of the (a, A) pairs: does it contain (1, 0)?
    bool pq_alone = false;
    {
      size_t n2 = static_cast<size_t>(n) * n;
      Mat m(static_cast<int>(n2), k);
      for (int t = 0; t < k; ++t)
        for (size_t i = 0; i < n2; ++i) m(static_cast<int>(i), t) = As[t].a[i];
      for (auto& x : nullspace(m)) {
        Rat a = 0;
        for (int t = 0; t < k; ++t) a += x[t] * as[t];
        if (a != 0) pq_alone = true;
      }
    }
    if (pq_alone) {
      info.type = 1;
      if (k != 1 + info.h.dim() + n) throw NotWeaklyIrreducible("dimension mismatch for type 1");
    } else {
      info.type = 3;
      info.phi = Vec(info.h.dim());
      for (int i = 0; i < info.h.dim(); ++i) {
        Vec x;
        rep_of(info.h.basis[i], info.phi[i], x);
      }
      if (is_zero(info.phi)) throw InternalError("type 3 with zero phi");
      // phi vanishes on commutators.
      for (int i = 0; i < info.h.dim(); ++i)
        for (int j = i + 1; j < info.h.dim(); ++j) {
          auto c = info.h.coordinates(bracket(info.h.basis[i], info.h.basis[j]));
          if (!c) throw NotWeaklyIrreducible("orthogonal part not bracket-closed");
          Rat v = 0;
          for (int t = 0; t < info.h.dim(); ++t) v += (*c)[t] * info.phi[t];
          if (v != 0) throw NotWeaklyIrreducible("phi does not vanish on [h,h]");
        }
      if (k != info.h.dim() + n) throw NotWeaklyIrreducible("dimension mismatch for type 3");
    }
    return info;
  }

  // a = 0 throughout: types 2 and 4.
  if (V.dim() == n) {
    info.type = 2;
    if (k != info.h.dim() + n) throw NotWeaklyIrreducible("dimension mismatch for type 2");
    return info;
  }

  // Type 4: h acts inside V and vanishes on its orthogonal complement.
  info.type = 4;
  info.m = V.dim();
  Subspace W = V.orthogonal_complement();
  for (auto& A : info.h.basis) {
    for (auto& v : V.basis)
      if (!V.contains(A.M * v)) throw NotWeaklyIrreducible("h does not preserve p^R^m");
    for (auto& w : W.basis)
      if (!is_zero(A.M * w)) throw NotWeaklyIrreducible("h acts outside so(m)");
  }
  if (k != info.h.dim() + info.m) throw NotWeaklyIrreducible("dimension mismatch for type 4");
  // psi(A) = translational part modulo p^V, orthogonally projected onto W.
  std::vector<Vec> images;
  for (int i = 0; i < info.h.dim(); ++i) {
    Rat a;
    Vec x;
    rep_of(info.h.basis[i], a, x);
    // Subtract the V-component: solve the Euclidean projection exactly.
    Mat gram = V.gram();
    Vec rhs(V.dim());
    for (int r = 0; r < V.dim(); ++r) rhs[r] = dot(V.basis[r], x);
    if (V.dim() > 0) {
      auto sol = solve(gram, rhs);
      if (!sol) throw InternalError("degenerate Euclidean Gram matrix");
      for (int r = 0; r < V.dim(); ++r)
        if ((*sol)[r] != 0) x = x - (*sol)[r] * V.basis[r];
    }
    info.psi.push_back(x);
    if (!is_zero(x)) images.push_back(x);
  }
  if (static_cast<int>(span_basis(images).size()) != n - info.m)
    throw NotWeaklyIrreducible("psi is not surjective onto the complement");
  for (int i = 0; i < info.h.dim(); ++i)
    for (int j = i + 1; j < info.h.dim(); ++j) {
      auto c = info.h.coordinates(bracket(info.h.basis[i], info.h.basis[j]));
      if (!c) throw NotWeaklyIrreducible("orthogonal part not bracket-closed");
      Vec v(n);
      for (int t = 0; t < info.h.dim(); ++t)
        if ((*c)[t] != 0) v = v + (*c)[t] * info.psi[t];
      if (!is_zero(v)) throw NotWeaklyIrreducible("psi does not vanish on [h,h]");
    }
  return info;
}

CaseLabel classify_case(const InfinitesimalModel& m) {
  const SpacePtr& sp = m.space;
  int n = sp->dim;
  Inertia sig = sp->signature();
  if (sig.neg != 1 || sig.zero != 0)
    throw SignatureError("classification requires Lorentzian signature");

  CaseLabel out;
  SubalgebraSO g = m.holonomy();
  out.flat_or_symmetric = m.R.is_zero() || m.T.is_zero();
  if (g.dim() == 0) {
    out.case_id = 0;
    out.detail = m.T.is_zero() ? "flat (R = 0, T = 0)" : "symmetric-by-torsion (R = 0)";
    out.flat_or_symmetric = true;
    return out;
  }

  // --- invariant-subspace candidates ---
  std::vector<Subspace> cands;
  auto push = [&](const Subspace& u) {
    if (u.dim() == 0 || u.dim() == n) return;
    for (auto& c : cands)
      if (c == u) return;
    cands.push_back(u);
  };
  for (auto& idxs : m.candidate_splitting) {
    std::vector<Vec> vs;
    for (int i : idxs) vs.push_back(sp->basis_vector(i));
    Subspace u(sp, vs);
    push(u);
    push(u.orthogonal_complement());
  }
  Subspace F = fixed_vectors(g);
  push(F);
  push(F.orthogonal_complement());
  // Flat directions: fixed vectors additionally annihilated by T and R.
  {
    std::vector<Vec> flat;
    for (auto& v : F.basis) {
      bool ok = interior(v, m.T.form).is_zero();
      // R(v, e_j) = 0 for all j.
      for (int j = 0; ok && j < n; ++j) {
        Mat rv(n, n);
        for (int i = 0; i < n; ++i)
          if (v[i] != 0 && i != j) rv = rv + v[i] * m.R.get(i, j);
        if (!rv.is_zero()) ok = false;
      }
      if (ok) flat.push_back(v);
    }
    Subspace S(sp, flat);
    push(S);
    push(S.orthogonal_complement());
  }
  for (int i = 0; i < n; ++i) {
    Subspace o = orbit_span(g, sp->basis_vector(i));
    push(o);
    push(o.orthogonal_complement());
  }
  {
    size_t base = cands.size();
    for (size_t i = 0; i < base; ++i)
      for (size_t j = i + 1; j < base; ++j) {
        push(cands[i].intersect(cands[j]));
        push(cands[i].sum(cands[j]));
      }
  }

  std::vector<Subspace> lcands;
  for (auto& u : cands) {
    if (!u.nondegenerate() || !invariant_under(g, u)) continue;
    if (lorentzian(u) && pos_definite(u.orthogonal_complement()))
      lcands.push_back(u);
    else if (pos_definite(u)) {
      Subspace l = u.orthogonal_complement();
      if (lorentzian(l)) lcands.push_back(l);
    }
  }

  if (lcands.empty()) {
    // No invariant nondegenerate splitting found: weakly irreducible branch.
    if (g.same_span(so_full(sp))) {
      if (n == 3) {
        out.case_id = 1;
        out.detail = "irreducible so(1,2); torsion proportional to the volume form";
        return out;
      }
      out.case_id = 0;
      out.detail = "full so(1,n+1) holonomy in dimension > 3";
      return out;
    }
    try {
      WeakTypeInfo w = weak_type(g);
      out.case_id = 2;
      out.detail = "weakly irreducible of type " + std::to_string(w.type);
      out.weak = std::move(w);
    } catch (const Error& e) {
      out.case_id = 0;
      out.detail = std::string("invariant-subspace search inconclusive: ") + e.what();
    }
    return out;
  }

  Subspace L = *std::min_element(lcands.begin(), lcands.end(),
                                 [](const Subspace& a, const Subspace& b) { return a.dim() < b.dim(); });

  // Refine the Lorentzian factor until the induced action is weakly
  // irreducible (trivial action forces a line).
  for (;;) {
    if (L.dim() == 1) break;
    if (action_is_trivial(g, L)) {
      L = Subspace(sp, {timelike_vector(L)});
      break;
    }
    bool refined = false;
    std::vector<Subspace> subs;
    for (auto& v : L.basis) subs.push_back(orbit_span(g, v));
    {
      // Fixed vectors inside L.
      std::vector<Vec> fl;
      for (auto& v : F.basis)
        if (L.contains(v)) fl.push_back(v);
      subs.emplace_back(sp, fl);
    }
    for (auto& u0 : subs) {
      if (u0.dim() == 0 || u0.dim() >= L.dim()) continue;
      if (!u0.nondegenerate() || !invariant_under(g, u0)) continue;
      Subspace rest = u0.orthogonal_complement().intersect(L);
      if (lorentzian(u0) && pos_definite(rest)) {
        L = u0;
        refined = true;
        break;
      }
      if (pos_definite(u0) && lorentzian(rest) && invariant_under(g, rest)) {
        L = rest;
        refined = true;
        break;
      }
    }
    if (!refined) break;
  }

  Subspace E = L.orthogonal_complement();
  out.L = L;
  out.E = E;

  // Case 3: the torsion splits across L (+) E.
  bool splits = true;
  for (auto& l1 : L.basis)
    for (auto& l2 : L.basis)
      for (auto& e : E.basis)
        if (t_eval(m, l1, l2, e) != 0) splits = false;
  for (auto& l : L.basis)
    for (auto& e1 : E.basis)
      for (auto& e2 : E.basis)
        if (t_eval(m, l, e1, e2) != 0) splits = false;
  if (splits) {
    out.case_id = 3;
    out.detail = "decomposable: T in L^3 L (+) L^3 E, dim L = " + std::to_string(L.dim());
    return out;
  }

  switch (L.dim()) {
    case 1: out.case_id = 4; break;
    case 2: out.case_id = 5; break;
    case 3: out.case_id = 6; break;
    default: out.case_id = 7; break;
  }
  out.detail = "invariant Lorentzian factor of dimension " + std::to_string(L.dim());
  return out;
}

}  // namespace nrh
