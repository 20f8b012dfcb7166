#include "doctest.h"
#include "nrh/errors.hpp"
#include "nrh/liealg.hpp"
#include "test_helpers.hpp"

using namespace nrh;
using nrhtest::RatGen;

namespace {

SkewEndomorphism pair_gen(const SpacePtr& sp, int i, int j) {
  return bivector_endo(MultiVector::blade(sp, {i, j}));
}

// Canonical so(3): [e1,e2]=e3, [e2,e3]=e1, [e3,e1]=e2.
AbstractLieAlgebra so3_abstract() {
  AbstractLieAlgebra L(3, {"x", "y", "z"});
  L.set_bracket(0, 1, {Rat(0), Rat(0), Rat(1)});
  L.set_bracket(1, 2, {Rat(1), Rat(0), Rat(0)});
  L.set_bracket(2, 0, {Rat(0), Rat(1), Rat(0)});
  return L;
}

}  // namespace

TEST_CASE("lie_closure basics") {
  auto w = PseudoEuclideanSpace::witt(2);
  // p^e1, p^e2 span an abelian algebra already closed under brackets.
  auto a = lie_closure(w, {pair_gen(w, 0, 1), pair_gen(w, 0, 2)});
  CHECK(a.dim() == 2);
  CHECK(bracket(a.basis[0], a.basis[1]).is_zero());

  CHECK(lie_closure(w, {}).dim() == 0);

  auto e = PseudoEuclideanSpace::euclidean(3);
  // e12 and e23 generate all of so(3).
  auto so3 = lie_closure(e, {pair_gen(e, 0, 1), pair_gen(e, 1, 2)});
  CHECK(so3.dim() == 3);
  CHECK(so3.bracket_closed());
  CHECK(so3.contains(pair_gen(e, 0, 2)));
}

TEST_CASE("lie_closure output is bracket closed") {
  RatGen gen(121);
  auto w = PseudoEuclideanSpace::witt(2);
  for (int trial = 0; trial < 10; ++trial) {
    auto a = lie_closure(w, {gen.skew(w), gen.skew(w)});
    CHECK(a.bracket_closed());
    for (auto& x : a.basis)
      for (auto& y : a.basis) CHECK(a.contains(bracket(x, y)));
  }
}

TEST_CASE("so_full dimension") {
  CHECK(so_full(PseudoEuclideanSpace::euclidean(3)).dim() == 3);
  CHECK(so_full(PseudoEuclideanSpace::witt(2)).dim() == 6);
}

TEST_CASE("annihilator") {
  auto e = PseudoEuclideanSpace::euclidean(3);
  auto amb = so_full(e);
  // t = 0 annihilated by everything.
  CHECK(annihilator(amb, MultiVector(e, 3)).dim() == amb.dim());
  // so(3) elements killing e1^e2: only multiples of e1^e2 itself.
  auto ann = annihilator(amb, MultiVector::blade(e, {0, 1}));
  CHECK(ann.dim() == 1);
  CHECK(ann.contains(pair_gen(e, 0, 1)));
  CHECK(ann.bracket_closed());

  // Lemma-3.2 shape: annihilator of p^omega contains p^R^n, excludes p^q.
  auto w = PseudoEuclideanSpace::witt(2);
  auto pomega = wedge(MultiVector::blade(w, {0}), MultiVector::blade(w, {1, 2}));
  auto wann = annihilator(so_full(w), pomega);
  CHECK(wann.contains(pair_gen(w, 0, 1)));
  CHECK(wann.contains(pair_gen(w, 0, 2)));
  CHECK(!wann.contains(pair_gen(w, 0, 3)));
  CHECK(wann.bracket_closed());
}

TEST_CASE("fixed_vectors") {
  auto w = PseudoEuclideanSpace::witt(2);
  SubalgebraSO ptrans(w, {pair_gen(w, 0, 1), pair_gen(w, 0, 2)});
  auto fv = fixed_vectors(ptrans);
  CHECK(fv.dim() == 1);
  CHECK(fv.contains(w->basis_vector(0)));

  CHECK(fixed_vectors(SubalgebraSO(w)).dim() == 4);

  auto e4 = PseudoEuclideanSpace::euclidean(4);
  SubalgebraSO rot(e4, {pair_gen(e4, 0, 1)});
  auto fr = fixed_vectors(rot);
  CHECK(fr.dim() == 2);
  CHECK(fr.contains(e4->basis_vector(2)));
  CHECK(fr.contains(e4->basis_vector(3)));
}

TEST_CASE("structure_report reproduces the displayed Killing matrices") {
  // [A,B]=A, [A,C]=-B, [B,C]=alpha A + C.
  for (Rat alpha : {Rat(1), Rat(-2), Rat(1, 2), Rat(0)}) {
    AbstractLieAlgebra L(3, {"A", "B", "C"});
    L.set_bracket(0, 1, {Rat(1), Rat(0), Rat(0)});
    L.set_bracket(0, 2, {Rat(0), Rat(-1), Rat(0)});
    L.set_bracket(1, 2, {alpha, Rat(0), Rat(1)});
    auto rep = structure_report(L);
    CHECK(rep.jacobi_ok);
    CHECK(rep.killing == nrhtest::rat_matrix(3, 3, {0, 0, 2, 0, 2, 0, 2, 0, -2 * alpha}));
  }

  // [A,B]=C, [A,C]=-gamma B, [B,C]=gamma A.
  for (Rat gamma : {Rat(2), Rat(-1), Rat(1, 2)}) {
    AbstractLieAlgebra L(3, {"A", "B", "C"});
    L.set_bracket(0, 1, {Rat(0), Rat(0), Rat(1)});
    L.set_bracket(0, 2, {Rat(0), -gamma, Rat(0)});
    L.set_bracket(1, 2, {gamma, Rat(0), Rat(0)});
    auto rep = structure_report(L);
    CHECK(rep.jacobi_ok);
    Mat expect(3, 3);
    expect(0, 0) = expect(1, 1) = -2 * gamma;
    expect(2, 2) = -2 * gamma * gamma;
    CHECK(rep.killing == expect);
  }

  // Abelian: zero Killing form, derived series collapses, center everything.
  AbstractLieAlgebra ab(3, {"a", "b", "c"});
  auto rep = structure_report(ab);
  CHECK(rep.killing.is_zero());
  CHECK(rep.center_dim == 3);
  CHECK(rep.derived_series_dims == std::vector<int>{3, 0});
  CHECK(rep.solvable);
  CHECK(rep.nilpotent);
}

TEST_CASE("Killing form is symmetric and ad-invariant") {
  // Checked on algebras with exactly satisfied Jacobi identities.
  std::vector<AbstractLieAlgebra> algs;
  algs.push_back(so3_abstract());
  {
    AbstractLieAlgebra L(3, {"A", "B", "C"});
    L.set_bracket(0, 1, {Rat(1), Rat(0), Rat(0)});
    L.set_bracket(0, 2, {Rat(0), Rat(-1), Rat(0)});
    L.set_bracket(1, 2, {Rat(3, 2), Rat(0), Rat(1)});
    algs.push_back(L);
  }
  for (auto& L : algs) {
    REQUIRE(L.jacobi_ok());
    auto rep = structure_report(L);
    CHECK(rep.killing == rep.killing.transposed());
    // K([x,y],z) + K(y,[x,z]) = 0 on all basis triples.
    auto K = [&](const Vec& x, const Vec& y) {
      Rat s = 0;
      for (int i = 0; i < L.dim; ++i)
        for (int j = 0; j < L.dim; ++j) s += x[i] * rep.killing(i, j) * y[j];
      return s;
    };
    for (int i = 0; i < L.dim; ++i)
      for (int j = 0; j < L.dim; ++j)
        for (int k = 0; k < L.dim; ++k) {
          Vec x(L.dim), y(L.dim), z(L.dim);
          x[i] = y[j] = z[k] = 1;
          CHECK(K(L.bracket_vec(x, y), z) + K(y, L.bracket_vec(x, z)) == 0);
        }
  }
}

TEST_CASE("classify_dim3 canonical presentations") {
  CHECK(classify_dim3(so3_abstract()).label == "so3");

  // sl(2)-type: [H,E]=2E, [H,F]=-2F, [E,F]=H has indefinite Killing form.
  AbstractLieAlgebra sl2(3, {"H", "E", "F"});
  sl2.set_bracket(0, 1, {Rat(0), Rat(2), Rat(0)});
  sl2.set_bracket(0, 2, {Rat(0), Rat(0), Rat(-2)});
  sl2.set_bracket(1, 2, {Rat(1), Rat(0), Rat(0)});
  CHECK(classify_dim3(sl2).label == "so12");

  AbstractLieAlgebra ab(3, {"a", "b", "c"});
  CHECK(classify_dim3(ab).label == "abelian");

  // [A,B]=C, C central: Heisenberg.
  AbstractLieAlgebra h3(3, {"A", "B", "C"});
  h3.set_bracket(0, 1, {Rat(0), Rat(0), Rat(1)});
  CHECK(classify_dim3(h3).label == "heisenberg3");

  AbstractLieAlgebra wrong(4, {"a", "b", "c", "d"});
  CHECK_THROWS_AS(classify_dim3(wrong), DimensionError);
}

TEST_CASE("subalgebra_on and derived_basis") {
  auto L = so3_abstract();
  std::vector<Vec> full;
  for (int i = 0; i < 3; ++i) {
    Vec v(3);
    v[i] = 1;
    full.push_back(v);
  }
  auto d1 = derived_basis(L, full);
  CHECK(d1.size() == 3);  // so(3) is perfect

  // Restriction to the span of x alone would not be closed; use the full
  // algebra and a genuine subalgebra of the solvable example.
  AbstractLieAlgebra solv(3, {"A", "B", "C"});
  solv.set_bracket(0, 1, {Rat(0), Rat(1), Rat(0)});  // [A,B]=B
  auto ds = derived_basis(solv, full);
  CHECK(ds.size() == 1);
  auto sub = subalgebra_on(solv, {full[0], full[1]});
  CHECK(sub.dim == 2);
  CHECK(sub.bracket_vec({Rat(1), Rat(0)}, {Rat(0), Rat(1)}) == Vec{Rat(0), Rat(1)});
}
