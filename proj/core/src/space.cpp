#include "nrh/space.hpp"

#include "nrh/errors.hpp"

namespace nrh {

static Mat invert(const Mat& g) {
  int n = g.rows;
  Mat aug(n, 2 * n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) aug(i, j) = g(i, j);
    aug(i, n + i) = 1;
  }
  auto piv = rref(aug);
  if (static_cast<int>(piv.size()) != n || piv.back() >= n)
    throw SingularMetric("metric matrix is singular");
  Mat inv(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

static SpacePtr make(Mat G, std::vector<std::string> labels, FrameKind fk) {
  auto sp = std::make_shared<PseudoEuclideanSpace>();
  sp->dim = G.rows;
  if (G.transposed() != G) throw Error("metric must be symmetric");
  sp->Ginv = invert(G);
  sp->G = std::move(G);
  if (labels.empty())
    for (int i = 0; i < sp->dim; ++i) labels.push_back("b" + std::to_string(i));
  if (static_cast<int>(labels.size()) != sp->dim) throw Error("label count mismatch");
  sp->labels = std::move(labels);
  sp->frame = fk;
  return sp;
}

SpacePtr PseudoEuclideanSpace::witt(int n) {
  Mat G(n + 2, n + 2);
  G(0, n + 1) = G(n + 1, 0) = 1;
  for (int i = 1; i <= n; ++i) G(i, i) = 1;
  std::vector<std::string> labels{"p"};
  for (int i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  labels.push_back("q");
  return make(std::move(G), std::move(labels), FrameKind::witt);
}

SpacePtr PseudoEuclideanSpace::diagonal(std::vector<Rat> entries, std::vector<std::string> labels) {
  int n = static_cast<int>(entries.size());
  Mat G(n, n);
  for (int i = 0; i < n; ++i) G(i, i) = entries[i];
  bool ortho = true;
  for (auto& e : entries)
    if (e != 1 && e != -1) ortho = false;
  return make(std::move(G), std::move(labels), ortho ? FrameKind::orthonormal : FrameKind::general);
}

SpacePtr PseudoEuclideanSpace::euclidean(int n) {
  std::vector<Rat> d(n, Rat(1));
  std::vector<std::string> labels;
  for (int i = 1; i <= n; ++i) labels.push_back("e" + std::to_string(i));
  return diagonal(std::move(d), std::move(labels));
}

SpacePtr PseudoEuclideanSpace::general(Mat G, std::vector<std::string> labels) {
  return make(std::move(G), std::move(labels), FrameKind::general);
}

Vec PseudoEuclideanSpace::basis_vector(int i) const {
  Vec v(dim);
  v[i] = 1;
  return v;
}

Rat PseudoEuclideanSpace::g(const Vec& x, const Vec& y) const { return dot(x, G * y); }

int PseudoEuclideanSpace::label_index(const std::string& l) const {
  for (int i = 0; i < dim; ++i)
    if (labels[i] == l) return i;
  return -1;
}

void require_same_space(const SpacePtr& a, const SpacePtr& b) {
  if (a == b) return;
  if (!a || !b || !a->same(*b)) throw SpaceMismatch("operands live in different spaces");
}

}  // namespace nrh
