#pragma once
#include <memory>
#include <string>
#include <vector>

#include "nrh/linalg.hpp"

namespace nrh {

enum class FrameKind { witt, orthonormal, general };

struct PseudoEuclideanSpace;
using SpacePtr = std::shared_ptr<const PseudoEuclideanSpace>;

struct PseudoEuclideanSpace {
  int dim = 0;
  Mat G;          // symmetric, nondegenerate
  Mat Ginv;
  std::vector<std::string> labels;
  FrameKind frame = FrameKind::general;

  // Witt frame p, e_1..e_n, q: g(p,q) = 1, g(e_i,e_j) = delta, p,q isotropic.
  static SpacePtr witt(int n);
  // Diagonal metric with the given entries (+-1 for an orthonormal frame).
  static SpacePtr diagonal(std::vector<Rat> entries, std::vector<std::string> labels = {});
  static SpacePtr euclidean(int n);
  static SpacePtr general(Mat G, std::vector<std::string> labels = {});

  Vec basis_vector(int i) const;
  Rat g(const Vec& x, const Vec& y) const;  // x^T G y
  Vec flat(const Vec& x) const { return G * x; }      // index lowering
  Vec sharp(const Vec& w) const { return Ginv * w; }  // index raising
  Inertia signature() const { return inertia(G); }
  int label_index(const std::string& l) const;  // -1 if absent

  bool same(const PseudoEuclideanSpace& o) const { return dim == o.dim && G == o.G; }
};

void require_same_space(const SpacePtr& a, const SpacePtr& b);

}  // namespace nrh
