#include "nrh/constructions.hpp"

#include <algorithm>

#include "nrh/errors.hpp"

namespace nrh {

namespace {

using PES = PseudoEuclideanSpace;

Mat embed(int N, const Mat& A, int off) {
  Mat m(N, N);
  for (int i = 0; i < A.rows; ++i)
    for (int j = 0; j < A.cols; ++j) m(i + off, j + off) = A(i, j);
  return m;
}

MultiVector shift_mv(SpacePtr big, const MultiVector& t, int off) {
  MultiVector out(big, t.grade);
  for (auto& [idx, v] : t.coeffs) {
    std::vector<int> sh = idx;
    for (int& i : sh) i += off;
    out.add_term(sh, v);
  }
  return out;
}

Mat pair_endo(const SpacePtr& sp, int i, int j) {
  return bivector_endo(MultiVector::blade(sp, {i, j})).M;
}

bool is_skew_plain(const Mat& a) { return a.transposed() == Rat(-1) * a; }
bool is_sym_plain(const Mat& a) { return a.transposed() == a; }

int as_int(const Rat& r, const std::string& name) {
  if (boost::multiprecision::denominator(r) != 1)
    throw FamilyConstraintError("parameter '" + name + "' must be an integer");
  return static_cast<int>(boost::multiprecision::numerator(r));
}

// The base torsion 3-form and curvature of a Riemannian block, pushed into a
// larger space at the given index offset.
struct EmbeddedBase {
  MultiVector torsion_form;                           // grade 3 in the big space
  std::vector<std::tuple<int, int, Mat>> curv_vals;   // shifted pairs + matrices
};

EmbeddedBase embed_base(const SpacePtr& big, const InfinitesimalModel& base, int off) {
  EmbeddedBase out;
  out.torsion_form = shift_mv(big, base.T.form, off);
  for (auto& [ij, m] : base.R.vals)
    out.curv_vals.emplace_back(ij.first + off, ij.second + off, embed(big->dim, m, off));
  return out;
}

InfinitesimalModel resolve_base(const FamilyParams& p) {
  auto sc = [&](const std::string& k, Rat def = Rat(0)) {
    auto it = p.base_scalars.find(k);
    return it == p.base_scalars.end() ? def : it->second;
  };
  if (p.base.empty() || p.base == "flat") return riemannian_flat(p.base_dim);
  if (p.base == "const-curv") return riemannian_constant_curvature(p.base_dim, sc("a", Rat(1)));
  if (p.base == "so3") return riemannian_so3(sc("b", Rat(1)), sc("c", Rat(1)));
  if (p.base == "so3-flat") {
    if (p.base_dim < 3) throw FamilyConstraintError("so3-flat base needs dimension >= 3");
    return model_direct_sum(riemannian_so3(sc("b", Rat(1)), sc("c", Rat(1))),
                            riemannian_flat(p.base_dim - 3));
  }
  throw FamilyConstraintError("unknown Riemannian base id: " + p.base);
}

std::vector<std::string> diag_labels(int d) {
  std::vector<std::string> l{"em"};
  for (int i = 1; i < d; ++i) l.push_back("f" + std::to_string(i));
  return l;
}

}  // namespace

Rat FamilyParams::scalar(const std::string& name, const Rat& def) const {
  auto it = scalars.find(name);
  return it == scalars.end() ? def : it->second;
}

const Mat* FamilyParams::matrix(const std::string& name) const {
  auto it = matrices.find(name);
  return it == matrices.end() ? nullptr : &it->second;
}

// ---- Riemannian mini-catalog ----

InfinitesimalModel riemannian_flat(int d) {
  auto sp = PES::euclidean(d);
  return {sp, CurvatureTensor(sp), TorsionTensor::zero(sp)};
}

InfinitesimalModel riemannian_constant_curvature(int d, const Rat& a) {
  auto sp = PES::euclidean(d);
  CurvatureTensor r(sp);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) r.set(i, j, a * pair_endo(sp, i, j));
  return {sp, std::move(r), TorsionTensor::zero(sp)};
}

InfinitesimalModel riemannian_so3(const Rat& b, const Rat& c) {
  auto sp = PES::euclidean(3);
  CurvatureTensor r(sp);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) r.set(i, j, b * pair_endo(sp, i, j));
  return {sp, std::move(r), TorsionTensor(MultiVector::blade(sp, {0, 1, 2}, c))};
}

InfinitesimalModel model_direct_sum(const InfinitesimalModel& a, const InfinitesimalModel& b) {
  int na = a.space->dim, nb = b.space->dim, n = na + nb;
  Mat G(n, n);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < na; ++j) G(i, j) = a.space->G(i, j);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) G(na + i, na + j) = b.space->G(i, j);
  std::vector<std::string> labels;
  for (auto& l : a.space->labels) labels.push_back(l + ".1");
  for (auto& l : b.space->labels) labels.push_back(l + ".2");
  auto sp = PES::general(std::move(G), std::move(labels));

  TorsionTensor T(shift_mv(sp, a.T.form, 0) + shift_mv(sp, b.T.form, na));
  CurvatureTensor R(sp);
  for (auto& [ij, m] : a.R.vals) R.set(ij.first, ij.second, embed(n, m, 0));
  for (auto& [ij, m] : b.R.vals) R.set(ij.first + na, ij.second + na, embed(n, m, na));
  return {sp, std::move(R), std::move(T)};
}

// ---- Product extension ----

ExtensionResult extend_product(const ExtensionInput& in) {
  const InfinitesimalModel& base = in.base;
  const SpacePtr& sp0 = base.space;
  int n0 = sp0->dim, k = static_cast<int>(in.sigmas.size());
  if (static_cast<int>(in.epsilons.size()) != k)
    throw DimensionError("one metric sign per extension generator is required");
  for (int e : in.epsilons)
    if (e != 1 && e != -1) throw FamilyConstraintError("extension metric signs must be +-1");

  SubalgebraSO b0 = base.holonomy();
  for (int i = 0; i < k; ++i) {
    require_same_space(in.sigmas[i].space, sp0);
    for (int j = i + 1; j < k; ++j)
      if (!bracket(in.sigmas[i], in.sigmas[j]).is_zero())
        throw FamilyConstraintError("extension generators must commute");
    for (auto& b : b0.basis)
      if (!bracket(in.sigmas[i], b).is_zero())
        throw FamilyConstraintError("extension generators must commute with the base holonomy");
    if (!so_action(in.sigmas[i], base.T.form).is_zero())
      throw FamilyConstraintError("extension generators must annihilate the base torsion");
    if (!so_action(in.sigmas[i], base.R).is_zero())
      throw FamilyConstraintError("extension generators must annihilate the base curvature");
  }

  int n = n0 + k;
  Mat G(n, n);
  for (int i = 0; i < n0; ++i)
    for (int j = 0; j < n0; ++j) G(i, j) = sp0->G(i, j);
  for (int i = 0; i < k; ++i) G(n0 + i, n0 + i) = in.epsilons[i];
  std::vector<std::string> labels = sp0->labels;
  for (int i = 1; i <= k; ++i) labels.push_back("V" + std::to_string(i));
  auto sp = PES::general(std::move(G), std::move(labels));

  std::vector<SkewEndomorphism> sig_big;
  for (auto& s : in.sigmas) sig_big.emplace_back(sp, embed(n, s.M, 0));

  MultiVector tf = shift_mv(sp, base.T.form, 0);
  for (int i = 0; i < k; ++i)
    tf = tf + wedge(endo_bivector(sig_big[i]), MultiVector::from_vector(sp, sp->basis_vector(n0 + i)));

  CurvatureTensor R(sp);
  for (auto& [ij, m] : base.R.vals) R.set(ij.first, ij.second, embed(n, m, 0));
  for (int l = 0; l < k; ++l)
    for (int i = 0; i < n0; ++i)
      for (int j = i + 1; j < n0; ++j) {
        Rat f = sig_big[l].form(i, j);
        if (f != 0) R.add(i, j, (Rat(in.epsilons[l]) * f) * sig_big[l].M);
      }

  ExtensionResult out;
  out.model = {sp, std::move(R), TorsionTensor(std::move(tf))};
  auto gens = b0.basis;
  gens.insert(gens.end(), in.sigmas.begin(), in.sigmas.end());
  SubalgebraSO joint(sp0, std::move(gens));
  out.holonomy_overlap = joint.dim() < b0.dim() + SubalgebraSO(sp0, in.sigmas).dim();
  return out;
}

// ---- Weak-irreducibility type builders ----

SubalgebraSO build_weak_type(int type, const SubalgebraSO& h, const Vec& phi,
                             const std::vector<Vec>& psi, int m) {
  const SpacePtr& scr = h.space;
  int n = scr->dim;
  if (inertia(scr->G) != Inertia{n, 0, 0})
    throw FamilyConstraintError("the orthogonal part must act on a Euclidean screen space");
  auto W = PES::witt(n);
  int q = n + 1;
  auto Bpq = pair_endo(W, 0, q);
  auto Bpe = [&](int i) { return pair_endo(W, 0, i + 1); };  // p ^ e_{i+1}

  // Coefficients on the echelon basis of h must kill brackets.
  auto functional_on_commutators = [&](auto&& value_of) {
    int d = h.dim();
    for (int a = 0; a < d; ++a)
      for (int b = a + 1; b < d; ++b) {
        auto c = h.coordinates(bracket(h.basis[a], h.basis[b]));
        if (!c) throw FamilyConstraintError("the orthogonal part is not bracket-closed");
        if (!is_zero(value_of(*c))) return false;
      }
    return true;
  };

  std::vector<SkewEndomorphism> gens;
  auto add = [&](const Mat& mm) { gens.emplace_back(W, mm); };

  switch (type) {
    case 1: {
      add(Bpq);
      for (auto& A : h.basis) add(embed(n + 2, A.M, 1));
      for (int i = 0; i < n; ++i) add(Bpe(i));
      break;
    }
    case 2: {
      for (auto& A : h.basis) add(embed(n + 2, A.M, 1));
      for (int i = 0; i < n; ++i) add(Bpe(i));
      break;
    }
    case 3: {
      if (static_cast<int>(phi.size()) != h.dim() || is_zero(phi))
        throw FamilyConstraintError("type 3 needs a nonzero functional phi on the orthogonal part");
      if (!functional_on_commutators([&](const Vec& c) { return Vec{dot(phi, c)}; }))
        throw FamilyConstraintError("phi must vanish on commutators of the orthogonal part");
      for (int a = 0; a < h.dim(); ++a) add(phi[a] * Bpq + embed(n + 2, h.basis[a].M, 1));
      for (int i = 0; i < n; ++i) add(Bpe(i));
      break;
    }
    case 4: {
      if (m <= 0 || m >= n) throw FamilyConstraintError("type 4 needs 0 < m < n");
      if (static_cast<int>(psi.size()) != h.dim())
        throw FamilyConstraintError("type 4 needs one psi value per orthogonal basis element");
      for (auto& A : h.basis)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            if ((i >= m || j >= m) && A.M(i, j) != 0)
              throw FamilyConstraintError("the orthogonal part must act on the first m directions only");
      std::vector<Vec> tail;
      for (auto& x : psi) {
        if (static_cast<int>(x.size()) != n) throw DimensionError("psi values live in the screen space");
        for (int i = 0; i < m; ++i)
          if (x[i] != 0) throw FamilyConstraintError("psi must take values outside the first m directions");
        tail.push_back(x);
      }
      if (static_cast<int>(span_basis(tail).size()) != n - m)
        throw FamilyConstraintError("psi must be surjective onto the trailing directions");
      if (!functional_on_commutators([&](const Vec& c) {
            Vec v(n);
            for (int a = 0; a < h.dim(); ++a) v = v + c[a] * psi[a];
            return v;
          }))
        throw FamilyConstraintError("psi must vanish on commutators of the orthogonal part");
      for (int a = 0; a < h.dim(); ++a) {
        Mat M = embed(n + 2, h.basis[a].M, 1);
        for (int i = 0; i < n; ++i) M = M + psi[a][i] * Bpe(i);
        add(M);
      }
      for (int i = 0; i < m; ++i) add(Bpe(i));
      break;
    }
    default:
      throw FamilyConstraintError("weak-irreducibility type must be 1..4");
  }
  return SubalgebraSO(W, std::move(gens));
}

// ---- Named families ----

namespace {

// e- ^ theta + omega_E model on R^{1,d-1}: R(X,Y) = C0(X,Y) - theta(X,Y) theta.
InfinitesimalModel timelike_theta_model(const InfinitesimalModel& base, const Mat& theta) {
  int ne = base.space->dim, d = ne + 1;
  std::vector<Rat> diag(d, Rat(1));
  diag[0] = -1;
  auto sp = PES::diagonal(diag, diag_labels(d));
  SkewEndomorphism th(sp, embed(d, theta, 1));
  EmbeddedBase eb = embed_base(sp, base, 1);

  MultiVector tf = wedge(MultiVector::from_vector(sp, sp->basis_vector(0)), endo_bivector(th));
  tf = tf + eb.torsion_form;

  CurvatureTensor R(sp);
  for (auto& [i, j, m] : eb.curv_vals) R.set(i, j, m);
  for (int i = 1; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Rat f = th.form(i, j);
      if (f != 0) R.add(i, j, (-f) * th.M);
    }
  return {sp, std::move(R), TorsionTensor(std::move(tf))};
}

Mat require_matrix(const FamilyParams& p, const std::string& name, int rows) {
  const Mat* m = p.matrix(name);
  if (!m) {
    Mat z(rows, rows);
    return z;
  }
  if (m->rows != rows || m->cols != rows)
    throw DimensionError("matrix parameter '" + name + "' must be " + std::to_string(rows) + "x" +
                         std::to_string(rows));
  return *m;
}

Mat rot_block(int half, const Vec& coeffs) {  // sum_i coeffs[i] f_{2i+1} ^ f_{2i+2}
  Mat J(2 * half, 2 * half);
  for (int i = 0; i < half; ++i) {
    J(2 * i, 2 * i + 1) = -coeffs[i];
    J(2 * i + 1, 2 * i) = coeffs[i];
  }
  return J;
}

}  // namespace

ConstraintReport family_constraint_check(const std::string& family, const FamilyParams& p) {
  ConstraintReport rep;
  auto clause = [&](const std::string& text, bool ok) { rep.clauses.emplace_back(text, ok); };

  if (family == "plane-wave") {
    int n = as_int(p.scalar("n", Rat(2)), "n");
    Mat omega = require_matrix(p, "omega", n), K = require_matrix(p, "K", n);
    clause("omega is skew-symmetric", is_skew_plain(omega));
    clause("K is symmetric", is_sym_plain(K));
    clause("(soft) K has full rank (indecomposability)", rank(K) == n);
  } else if (family == "dimL1") {
    InfinitesimalModel base = resolve_base(p);
    int ne = base.space->dim;
    Mat theta = require_matrix(p, "theta", ne);
    clause("theta is skew-symmetric", is_skew_plain(theta));
    SkewEndomorphism th(base.space, theta, false);
    bool invT = so_action(th, base.T.form).is_zero();
    bool invR = so_action(th, base.R).is_zero();
    clause("theta annihilates the base torsion omega_E", invT);
    clause("theta annihilates the base curvature C0", invR);
    clause("(soft) theta != 0 or base curved (indecomposability)",
           !theta.is_zero() || !base.R.is_zero());
  } else if (family == "dimL2") {
    InfinitesimalModel base = resolve_base(p);
    int d1 = base.space->dim;
    Mat theta = require_matrix(p, "theta", d1);
    clause("theta is skew-symmetric", is_skew_plain(theta));
    SkewEndomorphism th(base.space, theta, false);
    clause("theta annihilates the base torsion omega_E1", so_action(th, base.T.form).is_zero());
    clause("theta annihilates the base curvature C0", so_action(th, base.R).is_zero());
    clause("(soft) v != 0 (nondegenerate L)", p.scalar("cv", Rat(1)) != 0);
  } else if (family == "dimL3") {
    InfinitesimalModel base = resolve_base(p);
    int d1 = base.space->dim, dE = d1 + 1;
    Mat theta = require_matrix(p, "theta", d1), lambda = require_matrix(p, "lambda", dE);
    clause("theta is skew-symmetric", is_skew_plain(theta));
    clause("lambda is skew-symmetric", is_skew_plain(lambda));
    SkewEndomorphism th(base.space, theta, false);
    clause("theta annihilates the base torsion omega_E1", so_action(th, base.T.form).is_zero());
    clause("theta annihilates the base curvature C0", so_action(th, base.R).is_zero());
    // lambda lives on E = E1 (+) R v; its E1 block must also preserve the base.
    Mat lam11(d1, d1);
    for (int i = 0; i < d1; ++i)
      for (int j = 0; j < d1; ++j) lam11(i, j) = lambda(i, j);
    SkewEndomorphism l11(base.space, lam11, false);
    clause("lambda preserves the base torsion omega_E1", so_action(l11, base.T.form).is_zero());
    clause("lambda preserves the base curvature C0", so_action(l11, base.R).is_zero());
    clause("theta and lambda commute", bracket(theta, lam11).is_zero());
  } else if (family == "dimL4") {
    int k = as_int(p.scalar("k", Rat(2)), "k");
    Mat K = require_matrix(p, "K", k), omega = require_matrix(p, "omega", k);
    clause("K is symmetric", is_sym_plain(K));
    clause("omega_k is skew-symmetric", is_skew_plain(omega));
    clause("(soft) im K spans the lightlike block (indecomposability)", rank(K) == k);
  } else if (family == "dim5-heisenberg") {
    clause("(soft) c1 c2 != 0 (weak irreducibility)",
           p.scalar("c1", Rat(1)) != 0 && p.scalar("c2", Rat(1)) != 0);
  } else if (family == "dim5-so2so2") {
    Rat a = p.scalar("a"), b = p.scalar("b"), c1 = p.scalar("c1", Rat(1)), c2 = p.scalar("c2", Rat(1));
    clause("(soft) ab - a c2^2 - b c1^2 = 0 (one-dimensional holonomy)",
           a * b - a * c2 * c2 - b * c1 * c1 == 0);
  } else if (family == "dim5-berger") {
    clause("(soft) b^2 - 3a = 0 (holonomy su(2) rather than u(2))",
           p.scalar("b") * p.scalar("b") - Rat(3) * p.scalar("a") == 0);
  }
  // Remaining families carry no parameter constraints.
  return rep;
}

namespace {

void enforce_hard_clauses(const std::string& family, const FamilyParams& p) {
  ConstraintReport rep = family_constraint_check(family, p);
  for (auto& [text, ok] : rep.clauses)
    if (!ok && text.rfind("(soft)", 0) != 0)
      throw FamilyConstraintError(family + ": " + text);
}

InfinitesimalModel build_dim3(const std::string& family, const FamilyParams& p) {
  if (family == "dim3-rot") {
    auto sp = PES::diagonal({Rat(-1), Rat(1), Rat(1)}, diag_labels(3));
    CurvatureTensor R(sp);
    R.set(1, 2, p.scalar("beta") * pair_endo(sp, 1, 2));
    return {sp, std::move(R), TorsionTensor(MultiVector::blade(sp, {0, 1, 2}))};
  }
  auto sp = PES::witt(1);
  CurvatureTensor R(sp);
  if (family == "dim3-wirr") {
    R.set(2, 1, p.scalar("alpha") * pair_endo(sp, 0, 1));
    return {sp, std::move(R), TorsionTensor(MultiVector::blade(sp, {0, 1, 2}))};
  }
  if (family == "dim3-boost") {
    R.set(0, 2, p.scalar("beta") * pair_endo(sp, 0, 2));
    return {sp, std::move(R), TorsionTensor(MultiVector::blade(sp, {0, 2, 1}))};
  }
  // dim3-symmetric: torsion-free plane wave.
  R.set(2, 1, p.scalar("alpha", Rat(1)) * pair_endo(sp, 0, 1));
  return {sp, std::move(R), TorsionTensor::zero(sp)};
}

InfinitesimalModel build_plane_wave(int n, const Mat& omega, const Mat& K) {
  auto sp = PES::witt(n);
  SkewEndomorphism om(sp, embed(n + 2, omega, 1));
  MultiVector tf = wedge(MultiVector::from_vector(sp, sp->basis_vector(0)), endo_bivector(om));
  CurvatureTensor R(sp);
  for (int i = 1; i <= n; ++i) {
    Mat m(n + 2, n + 2);
    bool nz = false;
    for (int j = 1; j <= n; ++j)
      if (K(j - 1, i - 1) != 0) {
        m = m + K(j - 1, i - 1) * pair_endo(sp, 0, j);
        nz = true;
      }
    if (nz) R.set(n + 1, i, m);
  }
  return {sp, std::move(R), TorsionTensor(std::move(tf))};
}

InfinitesimalModel build_dimL2(const FamilyParams& p) {
  InfinitesimalModel base = resolve_base(p);
  int d1 = base.space->dim, n = d1 + 1, N = n + 2, q = n + 1, vi = n;
  auto sp = PES::witt(n);
  Rat cv = p.scalar("cv", Rat(1)), alpha = p.scalar("alpha");
  SkewEndomorphism th(sp, embed(N, require_matrix(p, "theta", d1), 1));
  EmbeddedBase eb = embed_base(sp, base, 1);
  Rat gvv = cv * cv;

  MultiVector tf = MultiVector::blade(sp, {0, q, vi}, cv);  // p ^ q ^ v
  tf = tf + wedge(endo_bivector(th), MultiVector::from_vector(sp, cv * sp->basis_vector(vi)));
  tf = tf + eb.torsion_form;

  Mat Mpq = pair_endo(sp, 0, q);
  CurvatureTensor R(sp);
  R.set(0, q, alpha * Mpq + (-gvv) * th.M);
  for (auto& [i, j, m] : eb.curv_vals) R.add(i, j, m);
  for (int i = 1; i < vi; ++i)
    for (int j = i + 1; j < vi; ++j) {
      Rat f = th.form(i, j);
      if (f != 0) R.add(i, j, (gvv * f) * Mpq + f * th.M);
    }
  return {sp, std::move(R), TorsionTensor(std::move(tf))};
}

InfinitesimalModel build_dimL3(const FamilyParams& p) {
  InfinitesimalModel base = resolve_base(p);
  int d1 = base.space->dim, n = d1 + 2, N = n + 2, q = n + 1, vi = n;
  auto sp = PES::witt(n);
  Rat cv = p.scalar("cv", Rat(1)), alpha = p.scalar("alpha", Rat(1)), beta = p.scalar("beta");
  // theta acts on E1 = <e2..e_{n-1}>, lambda on E = <e2..e_n>.
  SkewEndomorphism th(sp, embed(N, require_matrix(p, "theta", d1), 2));
  SkewEndomorphism lam(sp, embed(N, require_matrix(p, "lambda", d1 + 1), 2));
  EmbeddedBase eb = embed_base(sp, base, 2);
  Rat gvv = cv * cv;

  MultiVector pvec = MultiVector::from_vector(sp, sp->basis_vector(0));
  MultiVector tf = MultiVector::blade(sp, {0, 1, q}, alpha);          // alpha p ^ e1 ^ q
  tf = tf + MultiVector::blade(sp, {0, 1, vi}, cv);                   // p ^ e1 ^ v
  tf = tf + wedge(pvec, endo_bivector(lam));                          // p ^ lambda
  tf = tf + wedge(endo_bivector(th), MultiVector::from_vector(sp, cv * sp->basis_vector(vi)));
  tf = tf + eb.torsion_form;

  Mat Mpe1 = pair_endo(sp, 0, 1);
  SkewEndomorphism S(sp, gvv * th.M + alpha * lam.M, false);
  CurvatureTensor R(sp);
  Mat rq = beta * Mpe1 + S.M;
  if (!rq.is_zero()) R.set(q, 1, rq);
  for (auto& [i, j, m] : eb.curv_vals) R.add(i, j, m);
  for (int i = 2; i <= vi; ++i)
    for (int j = i + 1; j <= vi; ++j) {
      Rat s = S.form(i, j), f = th.form(i, j);
      Mat m = s * Mpe1 + (gvv * f) * th.M;
      if (!m.is_zero()) R.add(i, j, m);
    }
  return {sp, std::move(R), TorsionTensor(std::move(tf))};
}

InfinitesimalModel build_dimL4(const FamilyParams& p) {
  InfinitesimalModel base = resolve_base(p);
  int k = as_int(p.scalar("k", Rat(2)), "k");
  int d1 = base.space->dim, n = k + d1, N = n + 2, q = n + 1;
  auto sp = PES::witt(n);
  Mat K = require_matrix(p, "K", k), omega = require_matrix(p, "omega", k);
  SkewEndomorphism om(sp, embed(N, omega, 1));
  EmbeddedBase eb = embed_base(sp, base, 1 + k);

  MultiVector tf = wedge(MultiVector::from_vector(sp, sp->basis_vector(0)), endo_bivector(om));
  tf = tf + eb.torsion_form;

  CurvatureTensor R(sp);
  for (int i = 1; i <= k; ++i) {
    Mat m(N, N);
    bool nz = false;
    for (int j = 1; j <= k; ++j)
      if (K(j - 1, i - 1) != 0) {
        m = m + K(j - 1, i - 1) * pair_endo(sp, 0, j);
        nz = true;
      }
    if (nz) R.set(q, i, m);
  }
  for (auto& [i, j, m] : eb.curv_vals) R.set(i, j, m);
  return {sp, std::move(R), TorsionTensor(std::move(tf))};
}

InfinitesimalModel build_dim5(const std::string& family, const FamilyParams& p) {
  if (family == "dim5-berger") {
    Rat a = p.scalar("a"), b = p.scalar("b");
    InfinitesimalModel base = riemannian_flat(4);
    auto es = base.space;
    Mat J = rot_block(2, {Rat(1), Rat(1)});
    CurvatureTensor C0(es);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        Vec Ji = J * es->basis_vector(i), Jj = J * es->basis_vector(j);
        Mat m = a * (pair_endo(es, i, j) +
                     bivector_endo(wedge(MultiVector::from_vector(es, Ji),
                                         MultiVector::from_vector(es, Jj)))
                         .M +
                     (Rat(2) * es->g(Ji, es->basis_vector(j))) * J);
        if (!m.is_zero()) C0.set(i, j, m);
      }
    base.R = std::move(C0);
    return timelike_theta_model(base, b * J);
  }
  // dim5-so2so2 and dim5-heisenberg: product-surface C0 with a rotation pair.
  Rat a = p.scalar("a"), b = p.scalar("b");
  Rat c1 = p.scalar("c1", Rat(1)), c2 = p.scalar("c2", Rat(1));
  if (family == "dim5-heisenberg") a = b = 0;
  InfinitesimalModel base = riemannian_flat(4);
  CurvatureTensor C0(base.space);
  if (a != 0) C0.set(0, 1, a * pair_endo(base.space, 0, 1));
  if (b != 0) C0.set(2, 3, b * pair_endo(base.space, 2, 3));
  base.R = std::move(C0);
  return timelike_theta_model(base, rot_block(2, {c1, c2}));
}

InfinitesimalModel build_dim5_dimL3(const FamilyParams& p) {
  auto sp = PES::witt(3);
  Rat alpha = p.scalar("alpha", Rat(1)), beta = p.scalar("beta");
  Rat a = p.scalar("a", Rat(1)), c = p.scalar("c");
  MultiVector tf = MultiVector::blade(sp, {0, 1, 4}, alpha) + MultiVector::blade(sp, {0, 2, 3}, a);
  Mat Mpe1 = pair_endo(sp, 0, 1), M23 = pair_endo(sp, 2, 3);
  CurvatureTensor R(sp);
  Mat rq = beta * Mpe1 + (alpha * a) * M23;
  if (!rq.is_zero()) R.set(4, 1, rq);
  Mat re = (alpha * a) * Mpe1 + c * M23;
  if (!re.is_zero()) R.set(2, 3, re);
  return {sp, std::move(R), TorsionTensor(std::move(tf))};
}

InfinitesimalModel build_d2n2(const FamilyParams& p) {
  int half = as_int(p.scalar("n", Rat(1)), "n");
  if (half < 1) throw FamilyConstraintError("d2n2: n must be >= 1");
  Rat c = p.scalar("c", Rat(2));
  auto sp = PES::witt(2 * half);
  MultiVector tf(sp, 3);
  for (int i = 0; i < half; ++i) tf.add_term({0, 2 * i + 1, 2 * i + 2}, c);
  return {sp, CurvatureTensor(sp), TorsionTensor(std::move(tf))};
}

}  // namespace

InfinitesimalModel build_family(const std::string& family, const FamilyParams& p) {
  enforce_hard_clauses(family, p);

  if (family.rfind("dim3-", 0) == 0) return build_dim3(family, p);

  if (family == "dim4-plane-wave" || family == "dim4-symmetric") {
    Mat K(2, 2);
    K(0, 0) = p.scalar("lambda1", Rat(1));
    K(1, 1) = p.scalar("lambda2", Rat(-1));
    Mat omega(2, 2);
    if (family == "dim4-plane-wave") {
      omega(0, 1) = -1;
      omega(1, 0) = 1;
    }
    return build_plane_wave(2, omega, K);
  }
  if (family == "dim4-rot") {
    auto sp = PES::witt(2);
    CurvatureTensor R(sp);
    R.set(1, 2, p.scalar("gamma", Rat(1)) * pair_endo(sp, 1, 2));
    return {sp, std::move(R), TorsionTensor(MultiVector::blade(sp, {0, 1, 2}))};
  }
  if (family == "plane-wave") {
    int n = as_int(p.scalar("n", Rat(2)), "n");
    return build_plane_wave(n, require_matrix(p, "omega", n), require_matrix(p, "K", n));
  }
  if (family == "dimL1") {
    InfinitesimalModel base = resolve_base(p);
    return timelike_theta_model(base, require_matrix(p, "theta", base.space->dim));
  }
  if (family == "dimL2") return build_dimL2(p);
  if (family == "dimL3") return build_dimL3(p);
  if (family == "dimL4") return build_dimL4(p);
  if (family == "dim5-berger" || family == "dim5-so2so2" || family == "dim5-heisenberg")
    return build_dim5(family, p);
  if (family == "dim5-dimL2") {
    FamilyParams q;
    q.base = "const-curv";
    q.base_dim = 2;
    q.base_scalars["a"] = p.scalar("c", Rat(1));
    q.scalars["alpha"] = p.scalar("alpha");
    q.scalars["cv"] = p.scalar("cv", Rat(1));
    Mat th(2, 2);
    th(0, 1) = -p.scalar("t", Rat(1));
    th(1, 0) = p.scalar("t", Rat(1));
    q.matrices["theta"] = th;
    return build_dimL2(q);
  }
  if (family == "dim5-dimL3") return build_dim5_dimL3(p);
  if (family == "d2n2") return build_d2n2(p);
  throw FamilyConstraintError("unknown family: " + family);
}

std::vector<std::string> known_families() {
  return {"dim3-wirr",   "dim3-rot",        "dim3-boost",   "dim3-symmetric", "dim4-plane-wave",
          "dim4-rot",    "dim4-symmetric",  "plane-wave",   "d2n2",           "dimL1",
          "dimL2",       "dimL3",           "dimL4",        "dim5-berger",    "dim5-so2so2",
          "dim5-heisenberg", "dim5-dimL2",  "dim5-dimL3"};
}

std::vector<CatalogEntry> catalog(int dim) {
  std::vector<CatalogEntry> out;
  auto add = [&](std::string f, int d, std::vector<std::string> ps, std::string label,
                 std::string desc) {
    out.push_back({std::move(f), d, std::move(ps), std::move(label), std::move(desc)});
  };
  if (dim == 3) {
    add("dim3-symmetric", 3, {"alpha"}, "symmetric", "torsion-free Lorentzian plane wave");
    add("dim3-wirr", 3, {"alpha"}, "weakly-irreducible", "T = p^e^q, R(q,e) = alpha p^e");
    add("dim3-rot", 3, {"beta"}, "Ex-9.4", "T = e-^e1^e2, R(e1,e2) = beta e1^e2");
    add("dim3-boost", 3, {"beta"}, "Ex-9.3", "T = p^q^e, R(p,q) = beta p^q");
  } else if (dim == 4) {
    add("dim4-symmetric", 4, {"lambda1", "lambda2"}, "symmetric", "Cahen-Wallach type, T = 0");
    add("dim4-plane-wave", 4, {"lambda1", "lambda2"}, "plane-wave",
        "T = p^e1^e2, R(q,e_i) = lambda_i p^e_i");
    add("dim4-rot", 4, {"gamma"}, "Ex-9.4", "T = p^e1^e2, R(e1,e2) = gamma e1^e2");
    add("d2n2", 4, {"c"}, "group", "bi-invariant oscillator-group model, R = 0");
  } else if (dim == 5) {
    add("dim5-berger", 5, {"a", "b"}, "Ex-9.4", "Kaehler-type base, theta = b J");
    add("dim5-so2so2", 5, {"a", "b", "c1", "c2"}, "Ex-9.4",
        "product-surface base with a rotation pair");
    add("dim5-heisenberg", 5, {"c1", "c2"}, "Ex-9.4", "flat base, one-dimensional holonomy");
    add("dim5-dimL2", 5, {"alpha", "c", "t"}, "Ex-9.3", "two-dimensional Lorentzian factor");
    add("dim5-dimL3", 5, {"alpha", "beta", "a", "c"}, "Ex-9.2",
        "three-dimensional Lorentzian factor");
  }
  return out;
}

std::vector<Rat> default_grid() {
  return {Rat(-2), Rat(-1), Rat(-1, 2), Rat(0), Rat(1, 2), Rat(1), Rat(2)};
}

}  // namespace nrh
