// Exact rational polytopes with synchronized V- and H-representations.
// Hulls are computed by incremental (beneath-beyond) insertion with exact
// orientation predicates; lower-dimensional hulls are legal values that
// carry their affine hull. Intended scale is ambient dimension <= 5 and
// a few thousand points.
#pragma once

#include <string>
#include <vector>

#include "okb/linalg.hpp"
#include "okb/rational.hpp"

namespace okb {

// normal . x <= offset, normal a primitive integer vector
struct Halfspace {
  ZVec normal;
  Rat offset;
};

// normal . x == value
struct AffineEq {
  ZVec normal;
  Rat value;
};

struct Polytope {
  int dim = 0;         // ambient dimension
  int affine_dim = 0;  // dimension of the affine hull
  std::vector<QVec> vertices;      // extreme points, lexicographically sorted
  std::vector<Halfspace> facets;   // irredundant within the affine hull
  std::vector<AffineEq> affine_hull;  // empty when full-dimensional

  bool full_dim() const { return affine_dim == dim; }
  bool empty() const { return vertices.empty(); }
  bool contains(const QVec& x) const;
};

// Hull of a nonempty point set. Throws std::invalid_argument on an empty
// input or mismatched coordinate dimensions.
Polytope convex_hull(const std::vector<QVec>& points, int dim);

// The polytope {x : ineqs hold, eqs hold}. Throws std::domain_error when
// the set is unbounded; an infeasible system yields the empty polytope.
Polytope polytope_from_inequalities(int dim, const std::vector<std::pair<QVec, Rat>>& ineqs,
                                    const std::vector<std::pair<QVec, Rat>>& eqs = {});

// Exact Euclidean volume; 0 for polytopes that are not full-dimensional
// (the degeneracy is visible through full_dim()).
Rat polytope_volume(const Polytope& p);

// All integer points of a (bounded) polytope, in lexicographic order.
std::vector<ZVec> lattice_points(const Polytope& p);

Polytope minkowski_sum(const Polytope& p, const Polytope& q);

Polytope scale(const Polytope& p, const Rat& r);        // r >= 0
Polytope translate(const Polytope& p, const QVec& v);
// Image under an invertible linear map given by rows.
Polytope linear_image(const Polytope& p, const QMat& map_rows);

// Set equality, decided by mutual H-representation containment of vertices.
bool polytope_equals(const Polytope& p, const Polytope& q);
bool polytope_subset(const Polytope& p, const Polytope& q);

std::string to_string(const Polytope& p);

}  // namespace okb
