#include "nrh/multivector.hpp"

#include <algorithm>

#include "nrh/errors.hpp"

namespace nrh {

namespace {
// Sorts idx ascending; returns permutation sign, or 0 on a repeated index.
int normalize(std::vector<int>& idx) {
  int sign = 1;
  for (size_t i = 1; i < idx.size(); ++i)
    for (size_t j = i; j > 0 && idx[j] < idx[j - 1]; --j) {
      std::swap(idx[j], idx[j - 1]);
      sign = -sign;
    }
  for (size_t i = 1; i < idx.size(); ++i)
    if (idx[i] == idx[i - 1]) return 0;
  return sign;
}
}  // namespace

MultiVector::MultiVector(SpacePtr sp, int k) : space(std::move(sp)), grade(k) {
  // Grades above the dimension are allowed: that exterior power is just {0}.
  if (k < 0 || k > kMaxGrade) throw GradeError("grade must be in 0..4");
}

MultiVector MultiVector::scalar(SpacePtr sp, Rat v) {
  MultiVector m(std::move(sp), 0);
  if (v != 0) m.coeffs[{}] = std::move(v);
  return m;
}

MultiVector MultiVector::from_vector(SpacePtr sp, const Vec& v) {
  MultiVector m(std::move(sp), 1);
  for (int i = 0; i < static_cast<int>(v.size()); ++i)
    if (v[i] != 0) m.coeffs[{i}] = v[i];
  return m;
}

MultiVector MultiVector::blade(SpacePtr sp, std::vector<int> idx, Rat coeff) {
  MultiVector m(std::move(sp), static_cast<int>(idx.size()));
  m.add_term(std::move(idx), std::move(coeff));
  return m;
}

Rat MultiVector::coeff(std::vector<int> idx) const {
  int s = normalize(idx);
  if (s == 0) return 0;
  auto it = coeffs.find(idx);
  return it == coeffs.end() ? Rat(0) : Rat(s) * it->second;
}

void MultiVector::add_term(std::vector<int> idx, Rat v) {
  if (static_cast<int>(idx.size()) != grade) throw GradeError("term grade mismatch");
  for (int i : idx)
    if (i < 0 || i >= space->dim) throw Error("basis index out of range");
  int s = normalize(idx);
  if (s == 0 || v == 0) return;
  Rat& slot = coeffs[idx];
  slot += Rat(s) * v;
  if (slot == 0) coeffs.erase(idx);
}

Vec MultiVector::as_vector() const {
  if (grade != 1) throw GradeError("as_vector requires grade 1");
  Vec v(space->dim);
  for (auto& [idx, c] : coeffs) v[idx[0]] = c;
  return v;
}

Rat MultiVector::covariant_component(const std::vector<int>& idx) const {
  if (static_cast<int>(idx.size()) != grade) throw GradeError("component grade mismatch");
  // t_flat(v_1..v_k) = sum over stored blades (i_1..i_k) of
  // coeff * det[ G(i_r, idx_s) ].
  Rat total = 0;
  int k = grade;
  for (auto& [blade_idx, c] : coeffs) {
    // determinant of the k x k Gram block
    if (k == 0) { total += c; continue; }
    std::vector<int> perm(k);
    for (int i = 0; i < k; ++i) perm[i] = i;
    Rat det = 0;
    // Leibniz expansion; k <= 4 so this is at most 24 terms.
    std::sort(perm.begin(), perm.end());
    do {
      int sign = 1;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          if (perm[i] > perm[j]) sign = -sign;
      Rat prod = Rat(sign);
      for (int r = 0; r < k; ++r) prod *= space->G(blade_idx[r], idx[perm[r]]);
      det += prod;
    } while (std::next_permutation(perm.begin(), perm.end()));
    total += c * det;
  }
  return total;
}

MultiVector MultiVector::operator+(const MultiVector& o) const {
  require_same_space(space, o.space);
  if (grade != o.grade) throw GradeError("grade mismatch in addition");
  MultiVector r = *this;
  for (auto& [idx, c] : o.coeffs) {
    Rat& slot = r.coeffs[idx];
    slot += c;
    if (slot == 0) r.coeffs.erase(idx);
  }
  return r;
}

MultiVector MultiVector::operator-(const MultiVector& o) const { return *this + o * Rat(-1); }

MultiVector MultiVector::operator*(const Rat& s) const {
  MultiVector r(space, grade);
  if (s == 0) return r;
  r.coeffs = coeffs;
  for (auto& [idx, c] : r.coeffs) c *= s;
  return r;
}

bool MultiVector::operator==(const MultiVector& o) const {
  return grade == o.grade && coeffs == o.coeffs && space->same(*o.space);
}

std::vector<std::vector<int>> MultiVector::tuples(int dim, int k) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int start) -> void {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (int i = start; i < dim; ++i) {
      cur.push_back(i);
      self(self, i + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

Vec MultiVector::flatten() const {
  auto ts = tuples(space->dim, grade);
  Vec v(ts.size());
  for (size_t i = 0; i < ts.size(); ++i) {
    auto it = coeffs.find(ts[i]);
    if (it != coeffs.end()) v[i] = it->second;
  }
  return v;
}

MultiVector MultiVector::unflatten(SpacePtr sp, int grade, const Vec& data) {
  MultiVector m(sp, grade);
  auto ts = tuples(sp->dim, grade);
  if (ts.size() != data.size()) throw Error("unflatten size mismatch");
  for (size_t i = 0; i < ts.size(); ++i)
    if (data[i] != 0) m.coeffs[ts[i]] = data[i];
  return m;
}

MultiVector wedge(const MultiVector& a, const MultiVector& b) {
  require_same_space(a.space, b.space);
  int k = a.grade + b.grade;
  if (k > a.space->dim) return MultiVector(a.space, std::min({k, kMaxGrade, a.space->dim}));
  if (k > kMaxGrade) throw GradeError("wedge result grade exceeds 4");
  MultiVector r(a.space, k);
  for (auto& [ia, ca] : a.coeffs)
    for (auto& [ib, cb] : b.coeffs) {
      std::vector<int> idx = ia;
      idx.insert(idx.end(), ib.begin(), ib.end());
      r.add_term(std::move(idx), ca * cb);
    }
  return r;
}

MultiVector contract_covector(const MultiVector& t, const Vec& w) {
  if (t.grade == 0) throw GradeError("cannot contract a scalar");
  MultiVector r(t.space, t.grade - 1);
  for (auto& [idx, c] : t.coeffs) {
    for (size_t pos = 0; pos < idx.size(); ++pos) {
      if (w[idx[pos]] == 0) continue;
      std::vector<int> rest;
      for (size_t j = 0; j < idx.size(); ++j)
        if (j != pos) rest.push_back(idx[j]);
      int sign = (pos % 2 == 0) ? 1 : -1;
      r.add_term(std::move(rest), Rat(sign) * w[idx[pos]] * c);
    }
  }
  return r;
}

MultiVector interior(const Vec& v, const MultiVector& t) {
  return contract_covector(t, t.space->flat(v));
}

}  // namespace nrh
