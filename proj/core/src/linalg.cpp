#include "nrh/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace nrh {

std::optional<Rat> parse_rational(const std::string& s) {
  if (s.empty()) return std::nullopt;
  auto slash = s.find('/');
  try {
    using Int = boost::multiprecision::cpp_int;
    auto check_int = [](const std::string& t) {
      if (t.empty()) return false;
      size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
      if (i == t.size()) return false;
      for (; i < t.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(t[i]))) return false;
      return true;
    };
    if (slash == std::string::npos) {
      if (!check_int(s)) return std::nullopt;
      return Rat(Int(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!check_int(num) || !check_int(den)) return std::nullopt;
    Int d(den);
    if (d == 0) return std::nullopt;
    return Rat(Int(num), d);
  } catch (...) {
    return std::nullopt;
  }
}

Mat Mat::identity(int n) {
  Mat m(n, n);
  for (int i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Mat Mat::transposed() const {
  Mat t(cols, rows);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

bool Mat::is_zero() const {
  return std::all_of(a.begin(), a.end(), [](const Rat& x) { return x == 0; });
}

Mat operator+(const Mat& x, const Mat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  Mat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] += y.a[i];
  return r;
}

Mat operator-(const Mat& x, const Mat& y) {
  assert(x.rows == y.rows && x.cols == y.cols);
  Mat r = x;
  for (size_t i = 0; i < r.a.size(); ++i) r.a[i] -= y.a[i];
  return r;
}

Mat operator*(const Mat& x, const Mat& y) {
  assert(x.cols == y.rows);
  Mat r(x.rows, y.cols);
  for (int i = 0; i < x.rows; ++i)
    for (int k = 0; k < x.cols; ++k) {
      const Rat& xv = x(i, k);
      if (xv == 0) continue;
      for (int j = 0; j < y.cols; ++j)
        if (y(k, j) != 0) r(i, j) += xv * y(k, j);
    }
  return r;
}

Mat operator*(const Rat& s, const Mat& x) {
  Mat r = x;
  for (auto& v : r.a) v *= s;
  return r;
}

Vec operator*(const Mat& x, const Vec& v) {
  assert(static_cast<size_t>(x.cols) == v.size());
  Vec r(x.rows);
  for (int i = 0; i < x.rows; ++i)
    for (int j = 0; j < x.cols; ++j)
      if (x(i, j) != 0 && v[j] != 0) r[i] += x(i, j) * v[j];
  return r;
}

Mat bracket(const Mat& x, const Mat& y) { return x * y - y * x; }

Vec operator+(const Vec& x, const Vec& y) {
  assert(x.size() == y.size());
  Vec r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

Vec operator-(const Vec& x, const Vec& y) {
  assert(x.size() == y.size());
  Vec r = x;
  for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

Vec operator*(const Rat& s, const Vec& x) {
  Vec r = x;
  for (auto& v : r) v *= s;
  return r;
}

bool is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

Rat dot(const Vec& x, const Vec& y) {
  assert(x.size() == y.size());
  Rat s = 0;
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

std::vector<int> rref(Mat& m) {
  std::vector<int> pivots;
  int r = 0;
  for (int c = 0; c < m.cols && r < m.rows; ++c) {
    int p = -1;
    for (int i = r; i < m.rows; ++i)
      if (m(i, c) != 0) { p = i; break; }
    if (p < 0) continue;
    if (p != r)
      for (int j = 0; j < m.cols; ++j) std::swap(m(p, j), m(r, j));
    Rat inv = Rat(1) / m(r, c);
    for (int j = c; j < m.cols; ++j) m(r, j) *= inv;
    for (int i = 0; i < m.rows; ++i) {
      if (i == r || m(i, c) == 0) continue;
      Rat f = m(i, c);
      for (int j = c; j < m.cols; ++j) m(i, j) -= f * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

int rank(Mat m) { return static_cast<int>(rref(m).size()); }

std::vector<Vec> nullspace(const Mat& m) {
  Mat e = m;
  std::vector<int> piv = rref(e);
  std::vector<bool> is_piv(m.cols, false);
  for (int c : piv) is_piv[c] = true;
  std::vector<Vec> basis;
  for (int c = 0; c < m.cols; ++c) {
    if (is_piv[c]) continue;
    Vec v(m.cols);
    v[c] = 1;
    for (size_t r = 0; r < piv.size(); ++r) v[piv[r]] = -e(static_cast<int>(r), c);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<Vec> solve(const Mat& m, const Vec& b) {
  assert(static_cast<size_t>(m.rows) == b.size());
  Mat aug(m.rows, m.cols + 1);
  for (int i = 0; i < m.rows; ++i) {
    for (int j = 0; j < m.cols; ++j) aug(i, j) = m(i, j);
    aug(i, m.cols) = b[i];
  }
  std::vector<int> piv = rref(aug);
  if (!piv.empty() && piv.back() == m.cols) return std::nullopt;  // inconsistent
  Vec x(m.cols);
  for (size_t r = 0; r < piv.size(); ++r) x[piv[r]] = aug(static_cast<int>(r), m.cols);
  return x;
}

Inertia inertia(Mat s) {
  assert(s.rows == s.cols);
  int n = s.rows;
  Inertia res;
  // Symmetric reduction on the trailing block starting at k.
  for (int k = 0; k < n;) {
    // Prefer a nonzero diagonal entry; swap it into position k (congruence).
    if (s(k, k) == 0) {
      for (int i = k + 1; i < n; ++i) {
        if (s(i, i) != 0) {
          for (int j = 0; j < n; ++j) std::swap(s(k, j), s(i, j));
          for (int j = 0; j < n; ++j) std::swap(s(j, k), s(j, i));
          break;
        }
      }
    }
    if (s(k, k) != 0) {
      if (s(k, k) > 0) ++res.pos; else ++res.neg;
      Rat d = s(k, k);
      for (int i = k + 1; i < n; ++i) {
        if (s(i, k) == 0) continue;
        Rat f = s(i, k) / d;
        for (int j = k; j < n; ++j) s(i, j) -= f * s(k, j);
        for (int j = k; j < n; ++j) s(j, i) = s(i, j);
      }
      ++k;
      continue;
    }
    // Zero diagonal: look for s(i,k) != 0 to form a hyperbolic pair.
    int p = -1;
    for (int i = k + 1; i < n; ++i)
      if (s(i, k) != 0) { p = i; break; }
    if (p < 0) { ++res.zero; ++k; continue; }
    // Congruence: add row/col p to row/col k, producing nonzero diagonal.
    for (int j = 0; j < n; ++j) s(k, j) += s(p, j);
    for (int j = 0; j < n; ++j) s(j, k) += s(j, p);
    // s(k,k) is now 2*s(p,k) != 0; loop re-enters the nonzero-diagonal branch.
  }
  return res;
}

std::vector<Vec> span_basis(const std::vector<Vec>& rows) {
  if (rows.empty()) return {};
  size_t n = rows[0].size();
  Mat m(static_cast<int>(rows.size()), static_cast<int>(n));
  for (size_t i = 0; i < rows.size(); ++i) {
    assert(rows[i].size() == n);
    for (size_t j = 0; j < n; ++j) m(static_cast<int>(i), static_cast<int>(j)) = rows[i][j];
  }
  std::vector<int> piv = rref(m);
  std::vector<Vec> basis;
  for (size_t r = 0; r < piv.size(); ++r) {
    Vec v(n);
    for (size_t j = 0; j < n; ++j) v[j] = m(static_cast<int>(r), static_cast<int>(j));
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_span(const std::vector<Vec>& basis, const Vec& v) {
  if (is_zero(v)) return true;
  if (basis.empty()) return false;
  size_t n = v.size();
  Mat m(static_cast<int>(n), static_cast<int>(basis.size()));
  for (size_t j = 0; j < basis.size(); ++j)
    for (size_t i = 0; i < n; ++i) m(static_cast<int>(i), static_cast<int>(j)) = basis[j][i];
  return solve(m, v).has_value();
}

}  // namespace nrh
