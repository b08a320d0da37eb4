// Dense exact linear algebra over the rationals, at the small sizes the
// polyhedral kernel needs: elimination, solving, null spaces, integer
// Hermite forms for lattice indices, and the signature of a symmetric
// form by congruence diagonalization.
#pragma once

#include <optional>
#include <vector>

#include "okb/rational.hpp"

namespace okb {

using QVec = std::vector<Rat>;
using QMat = std::vector<QVec>;  // row-major
using ZVec = std::vector<Int>;

Rat dot(const QVec& a, const QVec& b);
QVec add(const QVec& a, const QVec& b);
QVec sub(const QVec& a, const QVec& b);
QVec scale(const QVec& a, const Rat& c);

inline bool is_zero(const QVec& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

QVec to_qvec(const ZVec& v);
QVec to_qvec(const std::vector<long long>& v);

// Scales a nonzero rational vector to a primitive integer vector with the
// same direction (gcd of entries 1, first nonzero entry keeps its sign).
ZVec primitive(const QVec& v);

// Row echelon form in place; returns the pivot column of each reduced row.
std::vector<int> row_echelon(QMat& m);

int rank(QMat m);

// Solves a*x = b; empty optional if inconsistent. When the solution space
// is positive-dimensional an arbitrary solution is returned.
std::optional<QVec> solve(QMat a, QVec b);

// Basis of the kernel of a (n columns).
std::vector<QVec> nullspace(QMat a, int n);

// Inverse of a square nonsingular matrix; empty optional when singular.
std::optional<QMat> inverse(QMat a);

Rat determinant(QMat a);

// Index in Z^n of the subgroup generated by the given integer vectors:
// 1 when they generate all of Z^n, 0 when the subgroup has infinite index
// (rank deficient), otherwise the finite index.
Int lattice_index(std::vector<ZVec> gens, int n);

// Signature (#positive, #negative, #zero) of a symmetric rational matrix,
// computed exactly by simultaneous row/column elimination.
struct Signature {
  int positive = 0, negative = 0, zero = 0;
};
Signature symmetric_signature(QMat q);

}  // namespace okb
