// Exact real numbers of the form sum of rational multiples of square
// roots of integers (elements of a real multiquadratic field). Supports
// exact arithmetic and sign determination without floating point: the
// zero test is a coordinate test in a field basis, and nonzero signs are
// resolved by refining rational enclosures of the square roots.
#pragma once

#include <string>
#include <vector>

#include "okb/rational.hpp"

namespace okb {

class AlgReal {
 public:
  AlgReal() : coords_(1, Rat(0)) {}
  AlgReal(const Rat& r) : coords_(1, r) {}
  AlgReal(long long n) : coords_(1, Rat(n)) {}

  // sqrt(r) for r >= 0. Throws std::domain_error on negative input.
  static AlgReal sqrt_of(const Rat& r);

  AlgReal operator-() const;
  AlgReal operator+(const AlgReal& o) const;
  AlgReal operator-(const AlgReal& o) const;
  AlgReal operator*(const AlgReal& o) const;
  AlgReal operator/(const AlgReal& o) const;

  bool operator==(const AlgReal& o) const { return (*this - o).sign() == 0; }
  bool operator!=(const AlgReal& o) const { return !(*this == o); }
  bool operator<(const AlgReal& o) const { return (*this - o).sign() < 0; }
  bool operator<=(const AlgReal& o) const { return (*this - o).sign() <= 0; }
  bool operator>(const AlgReal& o) const { return (*this - o).sign() > 0; }
  bool operator>=(const AlgReal& o) const { return (*this - o).sign() >= 0; }

  // -1, 0, +1; exact.
  int sign() const;

  bool is_rational() const;
  // Throws std::domain_error when the value is irrational.
  Rat as_rational() const;

  double approx() const;
  std::string str() const;

  const std::vector<Int>& bases() const { return bases_; }
  const std::vector<Rat>& coords() const { return coords_; }

 private:
  // value = sum over masks m of coords_[m] * sqrt(prod_{i in m} bases_[i]);
  // the bases are pairwise multiplicatively independent modulo squares, so
  // the subset square roots form a Q-vector-space basis.
  std::vector<Int> bases_;
  std::vector<Rat> coords_;  // size 2^bases_.size()

  void trim();
  static AlgReal with_basis(std::vector<Int> bases, std::vector<Rat> coords);
  static void unify(const AlgReal& a, const AlgReal& b, AlgReal& ua, AlgReal& ub);
  friend AlgReal alg_test_hook(std::vector<Int>, std::vector<Rat>);
};

inline AlgReal operator+(const Rat& r, const AlgReal& a) { return AlgReal(r) + a; }
inline AlgReal operator*(const Rat& r, const AlgReal& a) { return AlgReal(r) * a; }

}  // namespace okb
