#include "doctest.h"
#include "nrh/endo.hpp"
#include "nrh/errors.hpp"
#include "nrh/multivector.hpp"
#include "nrh/subspace.hpp"
#include "test_helpers.hpp"

using namespace nrh;
using nrhtest::RatGen;

TEST_CASE("rref, rank, nullspace, solve") {
  RatGen gen(101);
  for (int trial = 0; trial < 30; ++trial) {
    int r = gen.small_int(1, 5), c = gen.small_int(1, 5);
    Mat m(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) m(i, j) = gen.next();
    int rk = rank(m);
    auto ns = nullspace(m);
    CHECK(rk + static_cast<int>(ns.size()) == c);
    for (auto& x : ns) CHECK(is_zero(m * x));
    // Any m*y is solvable and the solution reproduces the image vector.
    Vec y = gen.vec(c);
    Vec b = m * y;
    auto sol = solve(m, b);
    REQUIRE(sol.has_value());
    CHECK(m * *sol == b);
  }
}

TEST_CASE("inertia by congruence") {
  Mat d(3, 3);
  d(0, 0) = 4;
  d(1, 1) = Rat(-1, 2);
  CHECK(inertia(d) == Inertia{1, 1, 1});
  // Congruence invariance: P^T d P has the same inertia for invertible P.
  Mat p = nrhtest::rat_matrix(3, 3, {1, 2, 0, 0, 1, Rat(1, 3), 1, 0, 1});
  CHECK(inertia(p.transposed() * d * p) == Inertia{1, 1, 1});
  // Hyperbolic plane: [[0,1],[1,0]] has signature (1,1).
  Mat h(2, 2);
  h(0, 1) = h(1, 0) = 1;
  CHECK(inertia(h) == Inertia{1, 1, 0});
}

TEST_CASE("space factories and metric") {
  auto w = PseudoEuclideanSpace::witt(2);
  CHECK(w->dim == 4);
  CHECK(w->labels == std::vector<std::string>{"p", "e1", "e2", "q"});
  CHECK(w->G(0, 3) == 1);
  CHECK(w->G(0, 0) == 0);
  CHECK(w->G(1, 1) == 1);
  CHECK(w->g(w->basis_vector(0), w->basis_vector(3)) == 1);
  // Lorentzian signature (n+1, 1).
  CHECK(w->signature() == Inertia{3, 1, 0});
  CHECK(w->G * w->Ginv == Mat::identity(4));

  auto e = PseudoEuclideanSpace::euclidean(3);
  CHECK(e->signature() == Inertia{3, 0, 0});
  CHECK(e->frame == FrameKind::orthonormal);

  CHECK_THROWS_AS(PseudoEuclideanSpace::diagonal({Rat(1), Rat(0)}), Error);
}

TEST_CASE("wedge on basis blades") {
  auto sp = PseudoEuclideanSpace::euclidean(3);
  auto e1 = MultiVector::blade(sp, {0}), e2 = MultiVector::blade(sp, {1});
  auto w = wedge(e1, e2);
  CHECK(w.coeff({0, 1}) == 1);
  CHECK(w.coeff({1, 0}) == -1);
  CHECK(wedge(e1, e1).is_zero());

  auto witt = PseudoEuclideanSpace::witt(2);
  auto pe1 = MultiVector::blade(witt, {0, 1});
  auto e2q = MultiVector::blade(witt, {2, 3});
  CHECK(wedge(pe1, e2q).coeff({0, 1, 2, 3}) == 1);
}

TEST_CASE("wedge above the dimension is zero, not an error") {
  auto sp = PseudoEuclideanSpace::euclidean(2);
  auto a = MultiVector::blade(sp, {0, 1});
  auto b = MultiVector::blade(sp, {0});
  CHECK(wedge(a, b).is_zero());
}

TEST_CASE("wedge is associative and graded-commutative") {
  auto sp = PseudoEuclideanSpace::witt(2);
  RatGen gen(202);
  for (int trial = 0; trial < 20; ++trial) {
    auto a = gen.multivector(sp, 1);
    auto b = gen.multivector(sp, 1);
    auto c = gen.multivector(sp, 2);
    CHECK(wedge(wedge(a, b), c) == wedge(a, wedge(b, c)));
    // deg 1 * deg 2: a^c = (-1)^{1*2} c^a = c^a
    CHECK(wedge(a, c) == wedge(c, a));
    CHECK(wedge(a, b) == -wedge(b, a));
  }
}

TEST_CASE("bivector_endo on basis cases") {
  // Witt R^{1,2}: (p^e)q = g(p,q)e - g(e,q)p = e.
  auto w = PseudoEuclideanSpace::witt(1);
  auto pe = bivector_endo(MultiVector::blade(w, {0, 1}));
  CHECK(pe.apply(w->basis_vector(2)) == w->basis_vector(1));
  CHECK(is_zero(pe.apply(w->basis_vector(0))));

  // Orthonormal R^2: e1^e2 is the rotation generator [[0,-1],[1,0]].
  auto e = PseudoEuclideanSpace::euclidean(2);
  auto rot = bivector_endo(MultiVector::blade(e, {0, 1}));
  CHECK(rot.M == nrhtest::rat_matrix(2, 2, {0, -1, 1, 0}));

  CHECK_THROWS_AS(bivector_endo(MultiVector::blade(e, {0})), GradeError);
}

TEST_CASE("bivector <-> endomorphism round trip") {
  RatGen gen(303);
  for (auto sp : {PseudoEuclideanSpace::witt(2), PseudoEuclideanSpace::euclidean(4),
                  PseudoEuclideanSpace::diagonal({Rat(-1), Rat(-1), Rat(1), Rat(1)})}) {
    for (int trial = 0; trial < 34; ++trial) {
      auto b = gen.multivector(sp, 2);
      CHECK(endo_bivector(bivector_endo(b)) == b);
      auto xi = gen.skew(sp);
      CHECK(bivector_endo(endo_bivector(xi)).M == xi.M);
    }
  }
}

TEST_CASE("bracket of endos matches the induced bivector bracket") {
  auto sp = PseudoEuclideanSpace::witt(2);
  RatGen gen(404);
  for (int trial = 0; trial < 15; ++trial) {
    auto x = gen.skew(sp), y = gen.skew(sp);
    // [x, y] as an endo corresponds to the so-action of x on the bivector of y.
    CHECK(endo_bivector(bracket(x, y)) == so_action(x, endo_bivector(y)));
  }
}

TEST_CASE("so_action kills the metric") {
  RatGen gen(505);
  for (auto sp : {PseudoEuclideanSpace::witt(2), PseudoEuclideanSpace::euclidean(3)}) {
    for (int trial = 0; trial < 20; ++trial) {
      CHECK(so_action_on_metric(gen.skew(sp)).is_zero());
    }
  }
}

TEST_CASE("so_action Leibniz rule over wedge") {
  auto sp = PseudoEuclideanSpace::witt(2);
  RatGen gen(606);
  for (int trial = 0; trial < 25; ++trial) {
    auto xi = gen.skew(sp);
    auto a = gen.multivector(sp, gen.small_int(1, 2));
    auto b = gen.multivector(sp, gen.small_int(1, 2));
    CHECK(so_action(xi, wedge(a, b)) == wedge(so_action(xi, a), b) + wedge(a, so_action(xi, b)));
  }
}

TEST_CASE("(p^q) acting on p^omega gives -p^omega") {
  auto sp = PseudoEuclideanSpace::witt(3);
  RatGen gen(707);
  auto p = MultiVector::blade(sp, {0});
  auto pq = bivector_endo(MultiVector::blade(sp, {0, 4}));
  for (int trial = 0; trial < 10; ++trial) {
    // omega supported on the screen directions e1..e3.
    MultiVector omega(sp, 2);
    for (int i = 1; i <= 3; ++i)
      for (int j = i + 1; j <= 3; ++j) omega.add_term({i, j}, gen.next());
    auto t = wedge(p, omega);
    CHECK(so_action(pq, t) == -t);
  }
}

TEST_CASE("(p^V) acting on q^eta produces the p^q^eta(V) term") {
  auto sp = PseudoEuclideanSpace::witt(3);
  int n = 3, qi = 4;
  RatGen gen(808);
  for (int trial = 0; trial < 10; ++trial) {
    Vec V(sp->dim);
    for (int i = 1; i <= n; ++i) V[i] = gen.next();
    MultiVector eta(sp, 2);
    for (int i = 1; i <= n; ++i)
      for (int j = i + 1; j <= n; ++j) eta.add_term({i, j}, gen.next());
    auto pV = bivector_endo(wedge(MultiVector::blade(sp, {0}), MultiVector::from_vector(sp, V)));
    auto acted = so_action(pV, wedge(MultiVector::blade(sp, {qi}), eta));
    // Terms containing both p and q must assemble to p ^ q ^ eta(V).
    auto etaV = interior(V, eta);
    auto expected = wedge(MultiVector::blade(sp, {0, qi}), etaV);
    for (int i = 1; i <= n; ++i) CHECK(acted.coeff({0, i, qi}) == expected.coeff({0, i, qi}));
  }
}

TEST_CASE("interior product") {
  auto e = PseudoEuclideanSpace::euclidean(3);
  CHECK(interior(e->basis_vector(0), MultiVector::blade(e, {0, 1})) ==
        MultiVector::blade(e, {1}));

  auto w = PseudoEuclideanSpace::witt(2);
  // p is isotropic: contracting p into p^omega gives zero.
  MultiVector pom = wedge(MultiVector::blade(w, {0}), MultiVector::blade(w, {1, 2}));
  CHECK(interior(w->basis_vector(0), pom).is_zero());
  // g(q,p) = 1: q contracted into p^e1^e2 recovers e1^e2.
  CHECK(interior(w->basis_vector(3), MultiVector::blade(w, {0, 1, 2})) ==
        MultiVector::blade(w, {1, 2}));

  RatGen gen(909);
  for (int trial = 0; trial < 15; ++trial) {
    auto t = gen.multivector(w, 3);
    Vec v = gen.vec(w->dim);
    CHECK(interior(v, interior(v, t)).is_zero());
  }
  CHECK_THROWS_AS(interior(w->basis_vector(0), MultiVector::scalar(w, 1)), GradeError);
}

TEST_CASE("covariant components via Gram determinants") {
  auto w = PseudoEuclideanSpace::witt(1);
  // p^e^q lowered on (p,e,q): det of the Witt Gram block.
  auto vol = MultiVector::blade(w, {0, 1, 2});
  CHECK(vol.covariant_component({0, 1, 2}) == -1);
  CHECK(vol.covariant_component({1, 0, 2}) == 1);
  // Lowering a screen bivector in a Euclidean block is the identity on coeffs.
  auto e = PseudoEuclideanSpace::euclidean(3);
  auto b = MultiVector::blade(e, {0, 2}, Rat(5, 3));
  CHECK(b.covariant_component({0, 2}) == Rat(5, 3));
}

TEST_CASE("flatten/unflatten round trip") {
  auto sp = PseudoEuclideanSpace::witt(2);
  RatGen gen(111);
  for (int grade = 0; grade <= 4; ++grade) {
    auto m = gen.multivector(sp, grade);
    CHECK(MultiVector::unflatten(sp, grade, m.flatten()) == m);
  }
}

TEST_CASE("grade errors and space mismatch") {
  auto a = PseudoEuclideanSpace::euclidean(2);
  auto b = PseudoEuclideanSpace::euclidean(3);
  CHECK_THROWS_AS(wedge(MultiVector::blade(a, {0}), MultiVector::blade(b, {0})), SpaceMismatch);
  CHECK_THROWS_AS(MultiVector(a, 5), GradeError);
  CHECK_THROWS_AS(MultiVector(a, -1), GradeError);
  // Grade above dim is the zero space, allowed.
  CHECK(MultiVector(a, 3).is_zero());
}

TEST_CASE("skew endomorphism constructor enforces skewness") {
  auto sp = PseudoEuclideanSpace::witt(1);
  Mat bad = Mat::identity(3);
  CHECK_THROWS_AS(SkewEndomorphism(sp, bad), Error);
}

TEST_CASE("subspaces: complement, intersection, Gram") {
  auto sp = PseudoEuclideanSpace::witt(2);
  Subspace screen(sp, {sp->basis_vector(1), sp->basis_vector(2)});
  CHECK(screen.dim() == 2);
  CHECK(screen.nondegenerate());
  Subspace perp = screen.orthogonal_complement();
  CHECK(perp.dim() == 2);
  CHECK(perp.contains(sp->basis_vector(0)));
  CHECK(perp.contains(sp->basis_vector(3)));

  Subspace pline(sp, {sp->basis_vector(0)});
  CHECK(!pline.nondegenerate());  // isotropic line
  CHECK(pline.orthogonal_complement().contains(pline));
  CHECK(screen.intersect(pline).dim() == 0);
  CHECK(screen.sum(pline).dim() == 3);
}
