#pragma once
#include <map>
#include <vector>

#include "nrh/space.hpp"

namespace nrh {

constexpr int kMaxGrade = 4;

// Exterior-algebra element of a single grade, stored contravariantly on
// strictly increasing basis index tuples.
struct MultiVector {
  SpacePtr space;
  int grade = 0;
  std::map<std::vector<int>, Rat> coeffs;  // keys strictly increasing, values nonzero

  MultiVector() = default;
  MultiVector(SpacePtr sp, int k);

  static MultiVector scalar(SpacePtr sp, Rat v);
  static MultiVector from_vector(SpacePtr sp, const Vec& v);
  // Basis blade e_{i1} ^ ... ^ e_{ik} times coeff; indices in any order.
  static MultiVector blade(SpacePtr sp, std::vector<int> idx, Rat coeff = 1);

  bool is_zero() const { return coeffs.empty(); }
  Rat coeff(std::vector<int> idx) const;     // any order, sign-adjusted
  void add_term(std::vector<int> idx, Rat v);  // any order, sign-adjusted
  Vec as_vector() const;                     // grade-1 only

  // Fully covariant component t(e_{i1},...,e_{ik}) (all indices lowered),
  // alternating-determinant convention (no 1/k! factors).
  Rat covariant_component(const std::vector<int>& idx) const;

  MultiVector operator+(const MultiVector& o) const;
  MultiVector operator-(const MultiVector& o) const;
  MultiVector operator*(const Rat& s) const;
  MultiVector operator-() const { return *this * Rat(-1); }
  bool operator==(const MultiVector& o) const;

  // Coordinate vectorization over all strictly increasing tuples of this grade.
  Vec flatten() const;
  static MultiVector unflatten(SpacePtr sp, int grade, const Vec& data);
  static std::vector<std::vector<int>> tuples(int dim, int k);
};

MultiVector wedge(const MultiVector& a, const MultiVector& b);

// Contraction of the first slot with an explicit covector w: (w ⌟ t).
MultiVector contract_covector(const MultiVector& t, const Vec& w);

// Metric interior product: contraction of the first slot with v-flat.
MultiVector interior(const Vec& v, const MultiVector& t);

}  // namespace nrh
