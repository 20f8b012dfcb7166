#pragma once
#include <array>

#include "nrh/liealg.hpp"
#include "nrh/torsion.hpp"

namespace nrh {

// Relative sign between the cyclic curvature sum and the cyclic torsion-square
// sum in the first Bianchi identity, under our storage conventions. Pinned by
// the transvection-algebra oracle (Jacobi identity projected to m) and covered
// by tests on the bi-invariant-group and product-extension models.
inline constexpr int kBianchiSign = 1;

// Bilinear skew map Lambda^2 m -> so(r,s); values stored for i < j.
struct CurvatureTensor {
  SpacePtr space;
  std::map<std::pair<int, int>, Mat> vals;  // i < j, nonzero values only

  CurvatureTensor() = default;
  explicit CurvatureTensor(SpacePtr sp) : space(std::move(sp)) {}

  void set(int i, int j, const Mat& m);            // any order; skew-extended
  void add(int i, int j, const Mat& m);
  Mat get(int i, int j) const;                     // any order
  SkewEndomorphism endo(int i, int j) const { return {space, get(i, j), false}; }
  Vec apply(int i, int j, const Vec& z) const { return get(i, j) * z; }
  bool is_zero() const;
  bool values_skew() const;                        // each value metric-skew

  CurvatureTensor operator+(const CurvatureTensor& o) const;
  CurvatureTensor operator*(const Rat& s) const;
  bool operator==(const CurvatureTensor& o) const;

  // Image span {R(e_i, e_j)} as a subalgebra basis (span only, no closure).
  SubalgebraSO image_span() const;
  Vec flatten() const;
  static CurvatureTensor unflatten(SpacePtr sp, const Vec& data);
};

// (xi . R)(X,Y) = [xi, R(X,Y)] - R(xi X, Y) - R(X, xi Y).
CurvatureTensor so_action(const SkewEndomorphism& xi, const CurvatureTensor& r);

// Trilinear vector-valued residual of the first Bianchi identity with torsion.
struct BianchiResidual {
  std::map<std::array<int, 3>, Vec> nonzero;  // i < j < k
  bool is_zero() const { return nonzero.empty(); }
};
BianchiResidual bianchi_residual(const CurvatureTensor& r, const TorsionTensor& t,
                                 int sign = kBianchiSign);

// g(R(X,Y)Z,W) = g(R(Z,W)X,Y) on all basis 4-tuples.
bool pair_symmetry_check(const CurvatureTensor& r);

// Second Bianchi identity: cyclic-sum R(T(X,Y), Z) = 0 on all basis triples.
bool second_bianchi_check(const CurvatureTensor& r, const TorsionTensor& t);

// R(X,Y) = Rg(X,Y) + 1/4 [T(X),T(Y)] - 1/2 T(T(X)Y).
CurvatureTensor curvature_from_lc(const CurvatureTensor& rg, const TorsionTensor& t);

struct CurvatureSpace {
  SubalgebraSO algebra;
  TorsionTensor torsion;
  std::optional<CurvatureTensor> particular;
  std::vector<CurvatureTensor> homogeneous_basis;  // basis of the T = 0 solution space
  int affine_dim() const { return particular ? static_cast<int>(homogeneous_basis.size()) : -1; }
};

// All R in Lambda^2 (x) g satisfying the first Bianchi identity with torsion T.
CurvatureSpace curvature_space(const SubalgebraSO& g, const TorsionTensor& t);

// Span of images of all curvature tensors with torsion T equals g.
bool berger_check(const SubalgebraSO& g, const TorsionTensor& t);

// Linear map R^k -> h with vanishing cyclic sum of g(P(X)Y, Z).
struct PMap {
  SpacePtr space;
  std::vector<Mat> P;  // P[i] = matrix of P(e_i)
};
std::vector<PMap> p_space(const SubalgebraSO& h);

}  // namespace nrh
