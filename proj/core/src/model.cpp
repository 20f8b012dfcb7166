#include "nrh/model.hpp"

#include <sstream>

#include "nrh/errors.hpp"

namespace nrh {

namespace {

std::string tuple_str(std::initializer_list<int> idx, const SpacePtr& sp) {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (int i : idx) {
    if (!first) os << ",";
    os << sp->labels[i];
    first = false;
  }
  os << ")";
  return os.str();
}

// Short label for a holonomy basis element, e.g. "p^e1-2 e1^e2".
std::string endo_label(const SkewEndomorphism& x) {
  MultiVector b = endo_bivector(x);
  std::ostringstream os;
  bool first = true;
  for (auto& [idx, v] : b.coeffs) {
    if (!first) os << (v > 0 ? "+" : "");
    if (v == -1)
      os << "-";
    else if (v != 1)
      os << to_string(v) << " ";
    os << x.space->labels[idx[0]] << "^" << x.space->labels[idx[1]];
    first = false;
  }
  if (first) return "0";
  return os.str();
}

}  // namespace

ValidationReport validate(const InfinitesimalModel& m) {
  const SpacePtr& sp = m.space;
  int n = sp->dim;
  ValidationReport rep;
  rep.flat = m.R.is_zero();
  rep.torsion_free = m.T.is_zero();
  SubalgebraSO g = m.holonomy();
  rep.holonomy_dim = g.dim();

  auto add = [&](std::string name, CheckResult c) { rep.checks.emplace_back(std::move(name), std::move(c)); };

  add("curvature_values_skew", {m.R.values_skew(), ""});

  {
    CheckResult c;
    if (!pair_symmetry_check(m.R)) c = {false, "g(R(X,Y)Z,W) != g(R(Z,W)X,Y) at some basis tuple"};
    add("pair_symmetry", c);
  }

  {
    CheckResult c;
    BianchiResidual res = bianchi_residual(m.R, m.T);
    if (!res.is_zero()) {
      auto& [idx, v] = *res.nonzero.begin();
      c = {false, "first failure at " + tuple_str({idx[0], idx[1], idx[2]}, sp)};
    }
    add("first_bianchi", c);
  }

  {
    CheckResult c;
    if (!second_bianchi_check(m.R, m.T)) c = {false, "cyclic R(T(X,Y),Z) != 0"};
    add("second_bianchi", c);
  }

  {
    CheckResult c;
    for (auto& xi : g.basis) {
      CurvatureTensor acted = so_action(xi, m.R);
      if (!acted.is_zero()) {
        c = {false, "xi = " + endo_label(xi)};
        break;
      }
    }
    add("holonomy_annihilates_R", c);
  }

  {
    CheckResult c;
    for (auto& xi : g.basis) {
      if (!so_action(xi, m.T).is_zero()) {
        c = {false, "xi = " + endo_label(xi)};
        break;
      }
    }
    add("holonomy_annihilates_T", c);
  }

  {
    // g.R = 0 forces im R to be a Lie algebra; the Lie closure is computed
    // independently and compared as a consistency check.
    CheckResult c;
    if (!g.bracket_closed())
      c = {false, "span(im R) is not bracket-closed"};
    else if (!lie_closure(sp, g.basis).same_span(g))
      c = {false, "lie_closure(im R) != span(im R)"};
    add("holonomy_closed", c);
  }

  {
    // Natural reductivity: g(T(X,Y),Z) = -g(T(X,Z),Y) on all basis triples.
    CheckResult c;
    for (int i = 0; i < n && c.pass; ++i)
      for (int j = 0; j < n && c.pass; ++j)
        for (int k = 0; k < n; ++k)
          if (m.T.component(i, j, k) != -m.T.component(i, k, j)) {
            c = {false, "at " + tuple_str({i, j, k}, sp)};
            break;
          }
    add("natural_reductivity", c);
  }

  return rep;
}

AbstractLieAlgebra transvection(const InfinitesimalModel& m) {
  const SpacePtr& sp = m.space;
  int n = sp->dim;
  SubalgebraSO g = m.holonomy();
  int k = g.dim();
  std::vector<std::string> labels;
  for (auto& b : g.basis) labels.push_back(endo_label(b));
  for (auto& l : sp->labels) labels.push_back(l);
  AbstractLieAlgebra f(k + n, labels);

  auto g_coords = [&](const SkewEndomorphism& x) {
    auto c = g.coordinates(x);
    if (!c) throw ModelInconsistent("bracket leaves the holonomy algebra");
    return *c;
  };

  // [A, B]: matrix bracket, stays in g for validated models.
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      Vec gc = g_coords(bracket(g.basis[a], g.basis[b]));
      Vec v(k + n);
      for (int i = 0; i < k; ++i) v[i] = gc[i];
      f.set_bracket(a, b, v);
    }
  // [A, X] = A X.
  for (int a = 0; a < k; ++a)
    for (int j = 0; j < n; ++j) {
      Vec img = g.basis[a].M * sp->basis_vector(j);
      Vec v(k + n);
      for (int i = 0; i < n; ++i) v[k + i] = img[i];
      f.set_bracket(a, k + j, v);
    }
  // [X, Y] = -R(X,Y) - T(X,Y).
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      Vec gc = g_coords(m.R.endo(i, j));
      Vec tv = m.T.vec(i, j);
      Vec v(k + n);
      for (int a = 0; a < k; ++a) v[a] = -gc[a];
      for (int a = 0; a < n; ++a) v[k + a] = -tv[a];
      f.set_bracket(k + i, k + j, v);
    }

  if (!f.jacobi_ok()) throw ModelInconsistent("transvection algebra fails the Jacobi identity");
  return f;
}

}  // namespace nrh
