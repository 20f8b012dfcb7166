#include "doctest.h"
#include "nrh/errors.hpp"
#include "nrh/liealg.hpp"
#include "nrh/model.hpp"
#include "test_helpers.hpp"

using namespace nrh;

namespace {

SkewEndomorphism pair_gen(const SpacePtr& sp, int i, int j) {
  return bivector_endo(MultiVector::blade(sp, {i, j}));
}

// T = p^e^q, R(q,e) = alpha p^e on the three-dimensional Witt space.
InfinitesimalModel wirr_model(const Rat& alpha) {
  auto sp = PseudoEuclideanSpace::witt(1);
  CurvatureTensor R(sp);
  R.set(2, 1, (pair_gen(sp, 0, 1) * alpha).M);
  return {sp, std::move(R), TorsionTensor(MultiVector::blade(sp, {0, 1, 2}))};
}

// T = p^q^e, R(p,q) = beta p^q: invariant Lorentzian plane spanned by p, q.
InfinitesimalModel boost_model(const Rat& beta) {
  auto sp = PseudoEuclideanSpace::witt(1);
  CurvatureTensor R(sp);
  R.set(0, 2, (pair_gen(sp, 0, 2) * beta).M);
  return {sp, std::move(R), TorsionTensor(MultiVector::blade(sp, {0, 2, 1}))};
}

// diag(-1,1,1) with T = em^f1^f2 and R(f1,f2) = beta f1^f2.
InfinitesimalModel rot_model(const Rat& beta) {
  auto sp = PseudoEuclideanSpace::diagonal({Rat(-1), Rat(1), Rat(1)});
  CurvatureTensor R(sp);
  R.set(1, 2, (pair_gen(sp, 1, 2) * beta).M);
  return {sp, std::move(R), TorsionTensor(MultiVector::blade(sp, {0, 1, 2}))};
}

}  // namespace

TEST_CASE("validate accepts the basic valid models") {
  SUBCASE("flat") {
    auto sp = PseudoEuclideanSpace::euclidean(4);
    InfinitesimalModel m{sp, CurvatureTensor(sp), TorsionTensor::zero(sp)};
    auto rep = validate(m);
    CHECK(rep.pass());
    CHECK(rep.flat);
    CHECK(rep.torsion_free);
    CHECK(rep.holonomy_dim == 0);
    CHECK(rep.find("first_bianchi") != nullptr);
    CHECK(rep.find("no_such_check") == nullptr);
  }

  SUBCASE("weakly irreducible dim 3") {
    auto m = wirr_model(Rat(3, 2));
    auto rep = validate(m);
    CHECK(rep.pass());
    CHECK(!rep.flat);
    CHECK(!rep.torsion_free);
    CHECK(rep.holonomy_dim == 1);
    CHECK(m.holonomy().contains(pair_gen(m.space, 0, 1)));
  }

  SUBCASE("volume torsion with R = 0 is symmetric-by-torsion") {
    auto sp = PseudoEuclideanSpace::euclidean(3);
    InfinitesimalModel m{sp, CurvatureTensor(sp),
                         TorsionTensor(MultiVector::blade(sp, {0, 1, 2}, Rat(2)))};
    CHECK(validate(m).pass());
  }
}

TEST_CASE("validate pinpoints broken invariants") {
  // R(q,e) = p^q does not annihilate itself under its own span: g.R != 0,
  // and the cyclic sum fails.
  auto sp = PseudoEuclideanSpace::witt(1);
  CurvatureTensor R(sp);
  R.set(2, 1, pair_gen(sp, 0, 2).M);
  InfinitesimalModel m{sp, std::move(R), TorsionTensor(MultiVector::blade(sp, {0, 1, 2}))};
  auto rep = validate(m);
  CHECK(!rep.pass());
  REQUIRE(rep.find("holonomy_annihilates_R") != nullptr);
  CHECK(!rep.find("holonomy_annihilates_R")->pass);
  REQUIRE(rep.find("first_bianchi") != nullptr);
  CHECK(!rep.find("first_bianchi")->pass);
  // The report still carries the passing structural checks.
  CHECK(rep.find("curvature_values_skew")->pass);
  CHECK(rep.find("natural_reductivity")->pass);
}

TEST_CASE("transvection of the weakly irreducible dim-3 model") {
  Rat alpha(2);
  auto m = wirr_model(alpha);
  auto f = transvection(m);
  REQUIRE(f.dim == 4);  // g one-dimensional, m three-dimensional
  CHECK(f.jacobi_ok());

  // g-coordinates of p^e in the echelon holonomy basis.
  auto g = m.holonomy();
  auto pe = g.coordinates(pair_gen(m.space, 0, 1));
  REQUIRE(pe.has_value());

  auto unit = [&](int i) {
    Vec v(4);
    v[i] = 1;
    return v;
  };
  // Basis order: [0] = holonomy generator, [1..3] = p, e, q.
  // [p,q] = -e, [p,e] = p, [e,q] = q + alpha p^e.
  Vec expect_pq(4);
  expect_pq[2] = -1;
  CHECK(f.bracket_vec(unit(1), unit(3)) == expect_pq);
  Vec expect_pe(4);
  expect_pe[1] = 1;
  CHECK(f.bracket_vec(unit(1), unit(2)) == expect_pe);
  Vec expect_eq(4);
  expect_eq[0] = alpha * (*pe)[0];
  expect_eq[3] = 1;
  CHECK(f.bracket_vec(unit(2), unit(3)) == expect_eq);
  // [A, X] = A X for the holonomy part.
  Vec ax = f.bracket_vec(unit(0), unit(3));  // A q, in the m-slots
  Vec img = g.basis[0].M * m.space->basis_vector(2);
  CHECK(ax == Vec{Rat(0), img[0], img[1], img[2]});
}

TEST_CASE("transvection of the oscillator-type group model") {
  // R = 0, T = 2 p^e1^e2 on witt(2): f is the four-dimensional oscillator
  // algebra (solvable, not nilpotent, one-dimensional centre).
  auto sp = PseudoEuclideanSpace::witt(2);
  InfinitesimalModel m{sp, CurvatureTensor(sp),
                       TorsionTensor(MultiVector::blade(sp, {0, 1, 2}, Rat(2)))};
  REQUIRE(validate(m).pass());
  auto f = transvection(m);
  REQUIRE(f.dim == 4);
  auto rep = structure_report(f);
  CHECK(rep.jacobi_ok);
  CHECK(rep.solvable);
  CHECK(!rep.nilpotent);
  CHECK(rep.center_dim == 1);
  CHECK(rep.derived_series_dims == std::vector<int>{4, 3, 1, 0});
}

TEST_CASE("transvection rejects inconsistent input") {
  // im R closed but g.R != 0 breaks the Jacobi identity of f.
  auto sp = PseudoEuclideanSpace::witt(1);
  CurvatureTensor R(sp);
  R.set(2, 1, pair_gen(sp, 0, 2).M);
  InfinitesimalModel m{sp, std::move(R), TorsionTensor::zero(sp)};
  CHECK_THROWS_AS(transvection(m), ModelInconsistent);
}

TEST_CASE("weak_type detects all four families") {
  auto w = PseudoEuclideanSpace::witt(2);
  auto rot = pair_gen(w, 1, 2);  // screen rotation e1 -> e2
  auto pe1 = pair_gen(w, 0, 1), pe2 = pair_gen(w, 0, 2);

  SUBCASE("type 1: with the boost direction") {
    SubalgebraSO g(w, {pair_gen(w, 0, 3), rot, pe1, pe2});
    auto info = weak_type(g);
    CHECK(info.type == 1);
    CHECK(info.h.dim() == 1);
    CHECK(info.translational.dim() == 2);
  }

  SUBCASE("type 2: orthogonal part plus full translations") {
    SubalgebraSO g(w, {rot, pe1, pe2});
    auto info = weak_type(g);
    CHECK(info.type == 2);
    CHECK(info.h.dim() == 1);
    CHECK(info.translational.dim() == 2);
  }

  SUBCASE("type 3: boost coupled to the rotation") {
    SkewEndomorphism coupled(w, pair_gen(w, 0, 3).M + rot.M);
    SubalgebraSO g(w, {coupled, pe1, pe2});
    auto info = weak_type(g);
    CHECK(info.type == 3);
    REQUIRE(info.phi.size() == 1);
    CHECK(info.phi[0] == 1);
  }

  SUBCASE("type 4: translation coupled to the rotation") {
    auto w3 = PseudoEuclideanSpace::witt(3);
    SkewEndomorphism coupled(w3, pair_gen(w3, 1, 2).M + pair_gen(w3, 0, 3).M);
    SubalgebraSO g(w3, {coupled, pair_gen(w3, 0, 1), pair_gen(w3, 0, 2)});
    auto info = weak_type(g);
    CHECK(info.type == 4);
    CHECK(info.m == 2);
    REQUIRE(info.psi.size() == 1);
    // psi is reported on the echelon basis of h, which may rescale the
    // generator; only the direction is pinned.
    CHECK(info.psi[0][0] == 0);
    CHECK(info.psi[0][1] == 0);
    CHECK(info.psi[0][2] != 0);
  }
}

TEST_CASE("weak_type rejects non-adapted input") {
  auto e = PseudoEuclideanSpace::euclidean(3);
  CHECK_THROWS_AS(weak_type(so_full(e)), NotAdapted);

  auto w = PseudoEuclideanSpace::witt(1);
  // e^q moves p off its line.
  SubalgebraSO g(w, {pair_gen(w, 1, 2)});
  CHECK_THROWS_AS(weak_type(g), NotAdapted);

  auto w2 = PseudoEuclideanSpace::witt(2);
  // The boost alone comes without the translations types 1 and 3 require.
  CHECK_THROWS_AS(weak_type(SubalgebraSO(w2, {pair_gen(w2, 0, 3)})), NotWeaklyIrreducible);
  // A bare rotation has no translational part at all.
  CHECK_THROWS_AS(weak_type(SubalgebraSO(w2, {pair_gen(w2, 1, 2)})), NotWeaklyIrreducible);
}

TEST_CASE("classify_case across the case list") {
  SUBCASE("case 1: irreducible so(1,2)") {
    auto sp = PseudoEuclideanSpace::diagonal({Rat(-1), Rat(1), Rat(1)});
    CurvatureTensor R(sp);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) R.set(i, j, pair_gen(sp, i, j).M);
    InfinitesimalModel m{sp, std::move(R), TorsionTensor(MultiVector::blade(sp, {0, 1, 2}))};
    auto c = classify_case(m);
    CHECK(c.case_id == 1);
  }

  SUBCASE("case 2: plane-wave type is weakly irreducible of type 2") {
    auto sp = PseudoEuclideanSpace::witt(2);
    CurvatureTensor R(sp);
    R.set(3, 1, pair_gen(sp, 0, 1).M);
    R.set(3, 2, (pair_gen(sp, 0, 2) * Rat(-1)).M);
    auto tf = wedge(MultiVector::blade(sp, {0}), MultiVector::blade(sp, {1, 2}));
    InfinitesimalModel m{sp, std::move(R), TorsionTensor(tf)};
    auto c = classify_case(m);
    CHECK(c.case_id == 2);
    REQUIRE(c.weak.has_value());
    CHECK(c.weak->type == 2);
  }

  SUBCASE("case 2 for the dim-3 weakly irreducible model") {
    auto c = classify_case(wirr_model(Rat(1)));
    CHECK(c.case_id == 2);
  }

  SUBCASE("case 3: torsion split across an invariant splitting") {
    auto line_sp = PseudoEuclideanSpace::diagonal({Rat(-1)});
    InfinitesimalModel line{line_sp, CurvatureTensor(line_sp), TorsionTensor::zero(line_sp)};
    // Curved torsion-carrying Euclidean block.
    auto e3 = PseudoEuclideanSpace::euclidean(3);
    CurvatureTensor R(e3);
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) R.set(i, j, pair_gen(e3, i, j).M);
    InfinitesimalModel block{e3, std::move(R),
                             TorsionTensor(MultiVector::blade(e3, {0, 1, 2}, Rat(2)))};
    // Assemble the direct sum by hand: block metric, block R, block T.
    Mat G(4, 4);
    G(0, 0) = -1;
    for (int i = 1; i < 4; ++i) G(i, i) = 1;
    auto sp = PseudoEuclideanSpace::general(G);
    CurvatureTensor Rs(sp);
    for (auto& [ij, mat] : block.R.vals) {
      Mat big(4, 4);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) big(i + 1, j + 1) = mat(i, j);
      Rs.set(ij.first + 1, ij.second + 1, big);
    }
    InfinitesimalModel m{sp, std::move(Rs),
                         TorsionTensor(MultiVector::blade(sp, {1, 2, 3}, Rat(2)))};
    REQUIRE(validate(m).pass());
    auto c = classify_case(m);
    CHECK(c.case_id == 3);
    REQUIRE(c.L.has_value());
    CHECK(c.L->dim() == 1);
    CHECK(c.E->dim() == 3);
  }

  SUBCASE("case 4: one-dimensional Lorentzian factor, non-split torsion") {
    auto c = classify_case(rot_model(Rat(2)));
    CHECK(c.case_id == 4);
    REQUIRE(c.L.has_value());
    CHECK(c.L->dim() == 1);
  }

  SUBCASE("case 5: invariant Lorentzian plane") {
    auto c = classify_case(boost_model(Rat(1)));
    CHECK(c.case_id == 5);
    REQUIRE(c.L.has_value());
    CHECK(c.L->dim() == 2);
    CHECK(c.L->contains(boost_model(Rat(1)).space->basis_vector(0)));
  }

  SUBCASE("flat and symmetric flags") {
    auto sp = PseudoEuclideanSpace::witt(1);
    InfinitesimalModel flat{sp, CurvatureTensor(sp), TorsionTensor::zero(sp)};
    auto c = classify_case(flat);
    CHECK(c.case_id == 0);
    CHECK(c.flat_or_symmetric);

    // Torsion-free but curved: still classified, flagged as symmetric.
    CurvatureTensor R(sp);
    R.set(2, 1, pair_gen(sp, 0, 1).M);
    InfinitesimalModel sym{sp, std::move(R), TorsionTensor::zero(sp)};
    auto cs = classify_case(sym);
    CHECK(cs.flat_or_symmetric);
    CHECK(cs.case_id == 2);
  }

  SUBCASE("requires Lorentzian signature") {
    auto e = PseudoEuclideanSpace::euclidean(3);
    InfinitesimalModel m{e, CurvatureTensor(e), TorsionTensor::zero(e)};
    CHECK_THROWS_AS(classify_case(m), SignatureError);
  }
}

TEST_CASE("classification is stable under a rational orthogonal basis change") {
  // Rotate the screen of the rot model by the 3-4-5 rotation and rebuild the
  // model in the new basis; the case label must not move.
  auto m = rot_model(Rat(1, 2));
  auto sp = m.space;
  Mat C(3, 3), Cinv(3, 3);
  C(0, 0) = Cinv(0, 0) = 1;
  C(1, 1) = C(2, 2) = Cinv(1, 1) = Cinv(2, 2) = Rat(3, 5);
  C(1, 2) = Cinv(2, 1) = Rat(-4, 5);
  C(2, 1) = Cinv(1, 2) = Rat(4, 5);
  REQUIRE(C * Cinv == Mat::identity(3));

  // New metric C^T G C (= G: the rotation is orthogonal for it).
  auto sp2 = PseudoEuclideanSpace::general(C.transposed() * sp->G * C);

  // Push the torsion 3-vector through the inverse coordinate change.
  MultiVector tf(sp2, 3);
  for (auto& [idx, v] : m.T.form.coeffs) {
    MultiVector term = MultiVector::from_vector(sp2, Cinv * sp->basis_vector(idx[0]));
    term = wedge(term, MultiVector::from_vector(sp2, Cinv * sp->basis_vector(idx[1])));
    term = wedge(term, MultiVector::from_vector(sp2, Cinv * sp->basis_vector(idx[2])));
    tf = tf + term * v;
  }

  // R'(f_i, f_j) = C^{-1} R(C f_i, C f_j) C, expanded over the stored pairs.
  CurvatureTensor R2(sp2);
  for (int i = 0; i < 3; ++i)
    for (int j = i + 1; j < 3; ++j) {
      Mat acc(3, 3);
      for (auto& [ab, mat] : m.R.vals) {
        auto [a, b] = ab;
        acc = acc + (C(a, i) * C(b, j) - C(a, j) * C(b, i)) * mat;
      }
      Mat conj = Cinv * acc * C;
      if (!conj.is_zero()) R2.set(i, j, conj);
    }

  InfinitesimalModel m2{sp2, std::move(R2), TorsionTensor(std::move(tf))};
  CHECK(validate(m2).pass());
  CHECK(classify_case(m2).case_id == classify_case(m).case_id);
  CHECK(classify_case(m2).case_id == 4);
}
