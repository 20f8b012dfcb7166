#pragma once
#include <cassert>
#include <initializer_list>
#include <optional>
#include <vector>

#include "nrh/rational.hpp"

namespace nrh {

using Vec = std::vector<Rat>;

// Dense matrix over exact rationals, row-major, column-vector convention
// (endomorphisms act on the left).
struct Mat {
  int rows = 0, cols = 0;
  std::vector<Rat> a;

  Mat() = default;
  Mat(int r, int c) : rows(r), cols(c), a(static_cast<size_t>(r) * c) {}
  static Mat identity(int n);

  Rat& operator()(int i, int j) { return a[static_cast<size_t>(i) * cols + j]; }
  const Rat& operator()(int i, int j) const { return a[static_cast<size_t>(i) * cols + j]; }

  Mat transposed() const;
  bool is_zero() const;
  bool operator==(const Mat& o) const = default;
};

Mat operator+(const Mat& x, const Mat& y);
Mat operator-(const Mat& x, const Mat& y);
Mat operator*(const Mat& x, const Mat& y);
Mat operator*(const Rat& s, const Mat& x);
Vec operator*(const Mat& x, const Vec& v);
Mat bracket(const Mat& x, const Mat& y);  // xy - yx

Vec operator+(const Vec& x, const Vec& y);
Vec operator-(const Vec& x, const Vec& y);
Vec operator*(const Rat& s, const Vec& x);
bool is_zero(const Vec& v);
Rat dot(const Vec& x, const Vec& y);

// In-place reduced row echelon form; returns pivot column indices.
std::vector<int> rref(Mat& m);
int rank(Mat m);

// Basis of the right nullspace {x : m x = 0}, one column vector per basis element.
std::vector<Vec> nullspace(const Mat& m);

// One solution of m x = b, if any.
std::optional<Vec> solve(const Mat& m, const Vec& b);

// Sylvester inertia (n_pos, n_neg, n_zero) of a symmetric matrix, computed
// exactly by symmetric Gaussian reduction (congruence transformations only).
struct Inertia {
  int pos = 0, neg = 0, zero = 0;
  bool operator==(const Inertia&) const = default;
};
Inertia inertia(Mat s);

// Row-span canonicalization: stacks the given row vectors, returns the RREF
// rows (a canonical basis of their span).
std::vector<Vec> span_basis(const std::vector<Vec>& rows);
bool in_span(const std::vector<Vec>& basis, const Vec& v);

}  // namespace nrh
