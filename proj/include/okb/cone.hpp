// Pointed rational polyhedral cones with vertex at the origin, kept in a
// synchronized double description (extreme rays + supporting halfspaces).
// Lower-dimensional cones carry the linear equations of their span.
#pragma once

#include <vector>

#include "okb/polytope.hpp"

namespace okb {

struct PolyCone {
  int dim = 0;
  std::vector<ZVec> rays;        // primitive extreme ray generators, sorted
  std::vector<ZVec> halfspaces;  // n . x >= 0, primitive
  std::vector<ZVec> equations;   // n . x == 0; nonempty iff not full-dimensional

  bool is_zero() const { return rays.empty(); }
  bool full_dim() const { return equations.empty(); }
  bool contains(const QVec& x) const;
};

// Cone generated by the given rays. Throws std::domain_error if the
// generators span a line (the cone would not be pointed).
PolyCone cone_from_rays(const std::vector<QVec>& gens, int dim);
PolyCone cone_from_rays_z(const std::vector<ZVec>& gens, int dim);

// Cone {x : n . x >= 0 for all given normals}. Throws std::domain_error
// when that set contains a line.
PolyCone cone_from_halfspaces(const std::vector<QVec>& normals, int dim);

// A rational linear subspace given by a basis.
struct LinearSubspace {
  int ambient_dim = 0;
  std::vector<QVec> basis;  // linearly independent
};

// Slice {x in C : x[axis] = height} projected to the remaining
// coordinates. Throws std::domain_error when the slice is unbounded.
Polytope cone_slice(const PolyCone& c, int height_axis, const Rat& height);

// C intersected with span(L), expressed in the coordinates of L's basis.
PolyCone cone_meet_subspace(const PolyCone& c, const LinearSubspace& l);

// Coordinates of L back into the ambient space.
QVec subspace_lift(const LinearSubspace& l, const QVec& coords);

bool cone_contains_cone(const PolyCone& outer, const PolyCone& inner);
bool cone_equals(const PolyCone& a, const PolyCone& b);

// Cone over a polytope placed at height 1 on a fresh last coordinate.
PolyCone cone_over_polytope(const Polytope& p);

}  // namespace okb
