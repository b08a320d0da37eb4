#include "okb/cone.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace okb {

namespace {

ZVec primitive_dir(const QVec& v) { return primitive(v); }

// Extreme rays of {t : rows . t >= 0} in R^k, assuming the set contains no
// line. Rays are found as one-dimensional intersections of k-1 active
// constraints.
std::vector<QVec> enumerate_rays(const std::vector<QVec>& rows, int k) {
  std::vector<QVec> rays;
  auto feasible = [&](const QVec& r) {
    for (const auto& a : rows)
      if (dot(a, r) < 0) return false;
    return true;
  };
  if (k == 0) return rays;
  if (k == 1) {
    for (int s = -1; s <= 1; s += 2) {
      QVec r{Rat(s)};
      if (!is_zero(r) && feasible(r)) rays.push_back(r);
    }
    return rays;
  }
  int m = static_cast<int>(rows.size());
  std::vector<int> subset(k - 1);
  std::vector<ZVec> seen;
  std::function<void(int, int)> rec = [&](int pos, int start) {
    if (pos == k - 1) {
      QMat act;
      for (int i : subset) act.push_back(rows[i]);
      auto ns = nullspace(act, k);
      if (ns.size() != 1) return;
      for (int s = 0; s < 2; ++s) {
        QVec r = s ? scale(ns[0], Rat(-1)) : ns[0];
        if (!feasible(r)) continue;
        ZVec key = primitive_dir(r);
        if (std::find(seen.begin(), seen.end(), key) == seen.end()) {
          seen.push_back(key);
          rays.push_back(to_qvec(key));
        }
      }
      return;
    }
    for (int i = start; i < m; ++i) {
      subset[pos] = i;
      rec(pos + 1, i + 1);
    }
  };
  rec(0, 0);
  return rays;
}

}  // namespace

bool PolyCone::contains(const QVec& x) const {
  for (const auto& e : equations)
    if (dot(to_qvec(e), x) != 0) return false;
  for (const auto& h : halfspaces)
    if (dot(to_qvec(h), x) < 0) return false;
  return true;
}

PolyCone cone_from_rays(const std::vector<QVec>& gens, int dim) {
  PolyCone c;
  c.dim = dim;
  std::vector<QVec> nz;
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != dim) throw std::invalid_argument("ray dimension mismatch");
    if (!is_zero(g)) nz.push_back(g);
  }
  if (nz.empty()) {
    for (int i = 0; i < dim; ++i) {
      ZVec e(dim, Int(0));
      e[i] = 1;
      c.equations.push_back(e);
    }
    return c;
  }

  // halfspaces/equations: the facets through the origin of conv({0} u gens)
  std::vector<QVec> pts = nz;
  pts.push_back(QVec(dim, Rat(0)));
  Polytope hull = convex_hull(pts, dim);
  for (const auto& e : hull.affine_hull) {
    if (e.value != 0) throw std::logic_error("cone affine hull misses the origin");
    c.equations.push_back(e.normal);
  }
  for (const auto& f : hull.facets) {
    if (f.offset != 0) continue;  // far facet, not a face of the cone
    ZVec h = f.normal;
    for (auto& x : h) x = -x;  // hull stores n.x <= 0, cone wants n.x >= 0
    c.halfspaces.push_back(h);
  }

  // pointedness: the lineality space of the H-description must vanish
  {
    QMat rows;
    for (const auto& h : c.halfspaces) rows.push_back(to_qvec(h));
    for (const auto& e : c.equations) rows.push_back(to_qvec(e));
    if (!nullspace(rows, dim).empty()) throw std::domain_error("cone not pointed");
  }

  // extreme rays, recomputed canonically from the H-description inside the
  // linear span
  QMat eqrows;
  for (const auto& e : c.equations) eqrows.push_back(to_qvec(e));
  QMat span_basis_rows;
  if (eqrows.empty()) {
    span_basis_rows.assign(dim, QVec(dim, Rat(0)));
    for (int i = 0; i < dim; ++i) span_basis_rows[i][i] = 1;
  } else {
    for (auto& v : nullspace(eqrows, dim)) span_basis_rows.push_back(v);
  }
  int k = static_cast<int>(span_basis_rows.size());
  std::vector<QVec> red;
  for (const auto& h : c.halfspaces) {
    QVec row(k);
    for (int j = 0; j < k; ++j) row[j] = dot(to_qvec(h), span_basis_rows[j]);
    red.push_back(row);
  }
  for (const auto& t : enumerate_rays(red, k)) {
    QVec amb(dim, Rat(0));
    for (int j = 0; j < k; ++j) amb = add(amb, scale(span_basis_rows[j], t[j]));
    c.rays.push_back(primitive_dir(amb));
  }
  std::sort(c.rays.begin(), c.rays.end());
  std::sort(c.halfspaces.begin(), c.halfspaces.end());
  std::sort(c.equations.begin(), c.equations.end());
  return c;
}

PolyCone cone_from_rays_z(const std::vector<ZVec>& gens, int dim) {
  std::vector<QVec> q;
  for (const auto& g : gens) q.push_back(to_qvec(g));
  return cone_from_rays(q, dim);
}

PolyCone cone_from_halfspaces(const std::vector<QVec>& normals, int dim) {
  QMat rows = normals;
  if (!nullspace(rows, dim).empty()) throw std::domain_error("cone not pointed");
  auto rays = enumerate_rays(normals, dim);
  return cone_from_rays(rays, dim);
}

Polytope cone_slice(const PolyCone& c, int height_axis, const Rat& height) {
  std::vector<std::pair<QVec, Rat>> ineqs;
  std::vector<std::pair<QVec, Rat>> eqs;
  for (const auto& h : c.halfspaces) ineqs.push_back({scale(to_qvec(h), Rat(-1)), Rat(0)});
  for (const auto& e : c.equations) eqs.push_back({to_qvec(e), Rat(0)});
  QVec axis(c.dim, Rat(0));
  axis[height_axis] = 1;
  eqs.push_back({axis, height});
  Polytope sliced;
  try {
    sliced = polytope_from_inequalities(c.dim, ineqs, eqs);
  } catch (const std::domain_error&) {
    throw std::domain_error("cone not graded along axis");
  }
  if (sliced.empty()) {
    Polytope e;
    e.dim = c.dim - 1;
    e.affine_dim = -1;
    return e;
  }
  std::vector<QVec> projected;
  for (const auto& v : sliced.vertices) {
    QVec w;
    for (int i = 0; i < c.dim; ++i)
      if (i != height_axis) w.push_back(v[i]);
    projected.push_back(w);
  }
  return convex_hull(projected, c.dim - 1);
}

PolyCone cone_meet_subspace(const PolyCone& c, const LinearSubspace& l) {
  if (l.ambient_dim != c.dim) throw std::invalid_argument("subspace dimension mismatch");
  int k = static_cast<int>(l.basis.size());
  std::vector<QVec> rows;
  for (const auto& h : c.halfspaces) {
    QVec row(k);
    for (int j = 0; j < k; ++j) row[j] = dot(to_qvec(h), l.basis[j]);
    rows.push_back(row);
  }
  for (const auto& e : c.equations) {
    QVec row(k);
    for (int j = 0; j < k; ++j) row[j] = dot(to_qvec(e), l.basis[j]);
    rows.push_back(row);
    rows.push_back(scale(row, Rat(-1)));
  }
  return cone_from_halfspaces(rows, k);
}

QVec subspace_lift(const LinearSubspace& l, const QVec& coords) {
  QVec x(l.ambient_dim, Rat(0));
  for (size_t j = 0; j < l.basis.size(); ++j) x = add(x, scale(l.basis[j], coords[j]));
  return x;
}

bool cone_contains_cone(const PolyCone& outer, const PolyCone& inner) {
  for (const auto& r : inner.rays)
    if (!outer.contains(to_qvec(r))) return false;
  return true;
}

bool cone_equals(const PolyCone& a, const PolyCone& b) {
  return cone_contains_cone(a, b) && cone_contains_cone(b, a);
}

PolyCone cone_over_polytope(const Polytope& p) {
  std::vector<QVec> rays;
  for (const auto& v : p.vertices) {
    QVec r = v;
    r.push_back(Rat(1));
    rays.push_back(r);
  }
  return cone_from_rays(rays, p.dim + 1);
}

}  // namespace okb
