#include "okb/polytope.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

namespace okb {

namespace {

bool lex_less(const QVec& a, const QVec& b) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return a[i] < b[i];
  }
  return false;
}

std::pair<ZVec, Rat> primitive_halfspace(const QVec& n, const Rat& c) {
  // scale by a positive rational so the normal becomes primitive integral
  Int l = common_denominator(n);
  ZVec w(n.size());
  Int g = 0;
  for (size_t i = 0; i < n.size(); ++i) {
    w[i] = num(Rat(n[i] * l));
    g = gcd(g, w[i]);
  }
  for (auto& x : w) x /= g;
  return {w, c * Rat(l, g)};
}

// Hyperplane through k affinely independent points of R^k: returns (n, c)
// with n . p_i = c for all of them.
std::pair<QVec, Rat> hyperplane_through(const std::vector<QVec>& pts, const std::vector<int>& idx) {
  int k = static_cast<int>(pts[idx[0]].size());
  QMat rows;
  for (size_t i = 1; i < idx.size(); ++i) rows.push_back(sub(pts[idx[i]], pts[idx[0]]));
  auto basis = nullspace(rows, k);
  if (basis.size() != 1) throw std::logic_error("degenerate facet simplex");
  return {basis[0], dot(basis[0], pts[idx[0]])};
}

struct SimpFacet {
  std::vector<int> vs;  // k vertex indices, sorted
  QVec normal;          // normal . x <= offset for the hull
  Rat offset;
};

// Beneath-beyond hull of full-dimensional points in R^k, k >= 1. Returns
// the simplicial boundary facets and an interior reference point.
struct HullCore {
  std::vector<SimpFacet> facets;
  QVec interior;
};

HullCore hull_full_dim(const std::vector<QVec>& pts, const std::vector<int>& init) {
  int k = static_cast<int>(pts[0].size());
  HullCore core;

  if (k == 1) {
    int lo = 0, hi = 0;
    for (size_t i = 1; i < pts.size(); ++i) {
      if (pts[i][0] < pts[lo][0]) lo = static_cast<int>(i);
      if (pts[i][0] > pts[hi][0]) hi = static_cast<int>(i);
    }
    core.facets.push_back({{hi}, {Rat(1)}, pts[hi][0]});
    core.facets.push_back({{lo}, {Rat(-1)}, -pts[lo][0]});
    core.interior = {(pts[lo][0] + pts[hi][0]) / 2};
    return core;
  }

  QVec centroid(k, Rat(0));
  for (int i : init) centroid = add(centroid, pts[i]);
  centroid = scale(centroid, Rat(1, static_cast<int>(init.size())));
  core.interior = centroid;

  // initial simplex: one facet per dropped vertex
  for (size_t drop = 0; drop < init.size(); ++drop) {
    std::vector<int> vs;
    for (size_t i = 0; i < init.size(); ++i)
      if (i != drop) vs.push_back(init[i]);
    auto [n, c] = hyperplane_through(pts, vs);
    if (dot(n, centroid) > c) {
      n = scale(n, Rat(-1));
      c = -c;
    }
    std::sort(vs.begin(), vs.end());
    core.facets.push_back({vs, n, c});
  }

  std::set<int> in_simplex(init.begin(), init.end());
  for (int ip = 0; ip < static_cast<int>(pts.size()); ++ip) {
    if (in_simplex.count(ip)) continue;
    const QVec& p = pts[ip];
    std::vector<int> visible;
    for (int f = 0; f < static_cast<int>(core.facets.size()); ++f)
      if (dot(core.facets[f].normal, p) > core.facets[f].offset) visible.push_back(f);
    if (visible.empty()) continue;  // inside or on the boundary

    // ridges of visible facets that are shared with a non-visible facet
    std::map<std::vector<int>, int> ridge_count;
    for (int f : visible) {
      const auto& vs = core.facets[f].vs;
      for (size_t drop = 0; drop < vs.size(); ++drop) {
        std::vector<int> ridge;
        for (size_t i = 0; i < vs.size(); ++i)
          if (i != drop) ridge.push_back(vs[i]);
        ridge_count[ridge]++;
      }
    }
    std::vector<SimpFacet> fresh;
    for (const auto& [ridge, count] : ridge_count) {
      if (count != 1) continue;  // interior to the visible region
      std::vector<int> vs = ridge;
      vs.push_back(ip);
      std::sort(vs.begin(), vs.end());
      auto [n, c] = hyperplane_through(pts, vs);
      if (dot(n, centroid) > c) {
        n = scale(n, Rat(-1));
        c = -c;
      }
      fresh.push_back({vs, n, c});
    }
    std::vector<SimpFacet> kept;
    std::set<int> dead(visible.begin(), visible.end());
    for (int f = 0; f < static_cast<int>(core.facets.size()); ++f)
      if (!dead.count(f)) kept.push_back(std::move(core.facets[f]));
    for (auto& f : fresh) kept.push_back(std::move(f));
    core.facets = std::move(kept);
  }
  return core;
}

// Affine hull of a point set: base point index 0, indices of an affinely
// independent spanning subset, and the direction basis they span.
struct AffineData {
  std::vector<int> independent;  // indices, first is the base point
  QMat basis;                    // rows: directions p_i - p_0
};

AffineData affine_hull_of(const std::vector<QVec>& pts) {
  AffineData ad;
  ad.independent.push_back(0);
  QMat echelon;
  for (int i = 1; i < static_cast<int>(pts.size()); ++i) {
    QVec d = sub(pts[i], pts[0]);
    QMat test = echelon;
    test.push_back(d);
    if (rank(test) > static_cast<int>(echelon.size())) {
      echelon.push_back(d);
      ad.independent.push_back(i);
      ad.basis.push_back(sub(pts[i], pts[0]));
    }
  }
  return ad;
}

}  // namespace

bool Polytope::contains(const QVec& x) const {
  if (empty()) return false;
  for (const auto& e : affine_hull)
    if (dot(to_qvec(e.normal), x) != e.value) return false;
  for (const auto& f : facets)
    if (dot(to_qvec(f.normal), x) > f.offset) return false;
  return true;
}

Polytope convex_hull(const std::vector<QVec>& points, int dim) {
  if (points.empty()) throw std::invalid_argument("empty point set");
  for (const auto& p : points)
    if (static_cast<int>(p.size()) != dim)
      throw std::invalid_argument("point dimension mismatch");

  std::vector<QVec> pts = points;
  std::sort(pts.begin(), pts.end(), lex_less);
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());

  Polytope out;
  out.dim = dim;

  AffineData ad = affine_hull_of(pts);
  int k = static_cast<int>(ad.basis.size());
  out.affine_dim = k;

  // affine hull equations: directions orthogonal to the basis
  {
    QMat bt = ad.basis;  // rows are directions; we need n with basis . n = 0
    for (const auto& nvec : nullspace(bt, dim)) {
      auto [n, c] = primitive_halfspace(nvec, dot(nvec, pts[0]));
      out.affine_hull.push_back({n, c});
    }
  }

  if (k == 0) {
    out.vertices = {pts[0]};
    return out;
  }

  // coordinates within the affine hull (ambient coordinates already work
  // when the point set is full-dimensional)
  std::vector<QVec> local;
  if (k == dim) {
    local = pts;
  } else {
    local.resize(pts.size());
    QMat bt_cols(dim, QVec(k));  // basis directions as columns
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < dim; ++i) bt_cols[i][j] = ad.basis[j][i];
    for (size_t i = 0; i < pts.size(); ++i) {
      auto y = solve(bt_cols, sub(pts[i], pts[0]));
      if (!y) throw std::logic_error("point outside its own affine hull");
      local[i] = *y;
    }
  }
  std::vector<int> init;
  for (int idx : ad.independent) init.push_back(idx);

  HullCore core = hull_full_dim(local, init);

  // facets: merge coplanar simplicial facets by their supporting hyperplane
  std::map<std::pair<ZVec, Rat>, std::vector<int>> merged;
  for (const auto& f : core.facets) {
    auto key = primitive_halfspace(f.normal, f.offset);
    auto& lst = merged[key];
    for (int v : f.vs) lst.push_back(v);
  }

  // extreme points: candidates are simplicial facet vertices; a candidate
  // is a vertex iff its active facet normals span the full local space
  std::set<int> candidates;
  for (const auto& f : core.facets) candidates.insert(f.vs.begin(), f.vs.end());
  std::vector<int> vertex_ids;
  for (int cnd : candidates) {
    QMat active;
    for (const auto& [key, vs] : merged) {
      if (dot(to_qvec(key.first), local[cnd]) == key.second) active.push_back(to_qvec(key.first));
    }
    if (rank(active) == k) vertex_ids.push_back(cnd);
  }
  for (int v : vertex_ids) out.vertices.push_back(pts[v]);
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);

  // lift facet inequalities back to ambient coordinates: solve basis^T a~ = a
  QMat basis_rows = ad.basis;  // k x dim; we need ambient n with (n . basis_j) = a_j
  for (const auto& [key, vs] : merged) {
    QVec a = to_qvec(key.first);
    if (k == dim) {
      out.facets.push_back({key.first, key.second});
      continue;
    }
    auto ambient = solve(basis_rows, a);  // rows: basis_j . x = a_j
    if (!ambient) throw std::logic_error("facet lift failed");
    Rat c = key.second + dot(*ambient, pts[0]);
    auto [n, cc] = primitive_halfspace(*ambient, c);
    out.facets.push_back({n, cc});
  }
  std::sort(out.facets.begin(), out.facets.end(), [](const Halfspace& a, const Halfspace& b) {
    if (a.normal != b.normal) return a.normal < b.normal;
    return a.offset < b.offset;
  });
  return out;
}

Rat polytope_volume(const Polytope& p) {
  if (!p.full_dim() || p.empty()) return Rat(0);
  int d = p.dim;
  if (d == 0) return Rat(0);
  std::vector<QVec> pts = p.vertices;
  AffineData ad = affine_hull_of(pts);
  HullCore core = hull_full_dim(pts, ad.independent);
  Rat vol = 0;
  Int dfact = 1;
  for (int i = 2; i <= d; ++i) dfact *= i;
  for (const auto& f : core.facets) {
    QMat m;
    for (int v : f.vs) m.push_back(sub(pts[v], core.interior));
    vol += abs(determinant(m));
  }
  return vol / Rat(dfact);
}

Polytope polytope_from_inequalities(int dim, const std::vector<std::pair<QVec, Rat>>& ineqs,
                                    const std::vector<std::pair<QVec, Rat>>& eqs) {
  Polytope empty_poly;
  empty_poly.dim = dim;
  empty_poly.affine_dim = -1;

  // reduce by the equality constraints: x = x0 + N t
  QVec x0(dim, Rat(0));
  QMat ncols;  // dim x k, columns a basis of the equality kernel
  int k = dim;
  if (!eqs.empty()) {
    QMat em;
    QVec ev;
    for (const auto& [a, b] : eqs) {
      em.push_back(a);
      ev.push_back(b);
    }
    auto sol = solve(em, ev);
    if (!sol) return empty_poly;
    x0 = *sol;
    auto kernel = nullspace(em, dim);
    k = static_cast<int>(kernel.size());
    ncols.assign(dim, QVec(k, Rat(0)));
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < dim; ++i) ncols[i][j] = kernel[j][i];
  } else {
    ncols.assign(dim, QVec(dim, Rat(0)));
    for (int i = 0; i < dim; ++i) ncols[i][i] = 1;
  }

  // inequalities in the reduced coordinates
  std::vector<std::pair<QVec, Rat>> red;
  for (const auto& [a, b] : ineqs) {
    QVec at(k, Rat(0));
    for (int j = 0; j < k; ++j)
      for (int i = 0; i < dim; ++i) at[j] += a[i] * ncols[i][j];
    red.push_back({at, b - dot(a, x0)});
  }

  auto lift = [&](const QVec& t) {
    QVec x = x0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < k; ++j) x[i] += ncols[i][j] * t[j];
    return x;
  };

  if (k == 0) {
    for (const auto& [a, b] : red)
      if (b < 0) return empty_poly;
    return convex_hull({x0}, dim);
  }

  // unboundedness = nontrivial recession cone {A t <= 0}
  {
    QMat rows;
    for (const auto& [a, b] : red) rows.push_back(a);
    if (!nullspace(rows, k).empty()) throw std::domain_error("polytope required: unbounded set");
    int m = static_cast<int>(red.size());
    std::vector<int> subset(std::max(0, k - 1));
    std::function<bool(int, int)> ray_search = [&](int pos, int start) -> bool {
      if (pos == k - 1) {
        QMat act;
        for (int i : subset) act.push_back(red[i].first);
        auto ns = nullspace(act, k);
        if (ns.size() != 1) return false;
        for (int dir = 0; dir < 2; ++dir) {
          QVec r = dir ? scale(ns[0], Rat(-1)) : ns[0];
          bool ok = true;
          for (const auto& [a, b] : red)
            if (dot(a, r) > 0) {
              ok = false;
              break;
            }
          if (ok) return true;
        }
        return false;
      }
      for (int i = start; i < m; ++i) {
        subset[pos] = i;
        if (ray_search(pos + 1, i + 1)) return true;
      }
      return false;
    };
    if (k >= 1 && ray_search(0, 0)) throw std::domain_error("polytope required: unbounded set");
  }

  // basic feasible solutions = vertices
  std::vector<QVec> verts;
  int m = static_cast<int>(red.size());
  std::vector<int> subset(k);
  std::function<void(int, int)> enumerate = [&](int pos, int start) {
    if (pos == k) {
      QMat act;
      QVec rhs;
      for (int i : subset) {
        act.push_back(red[i].first);
        rhs.push_back(red[i].second);
      }
      if (rank(act) != k) return;
      auto t = solve(act, rhs);
      if (!t) return;
      for (const auto& [a, b] : red)
        if (dot(a, *t) > b) return;
      verts.push_back(lift(*t));
      return;
    }
    for (int i = start; i < m; ++i) {
      subset[pos] = i;
      enumerate(pos + 1, i + 1);
    }
  };
  enumerate(0, 0);
  if (verts.empty()) return empty_poly;
  return convex_hull(verts, dim);
}

std::vector<ZVec> lattice_points(const Polytope& p) {
  std::vector<ZVec> out;
  if (p.empty()) return out;
  int d = p.dim;
  std::vector<Int> lo(d), hi(d);
  for (int i = 0; i < d; ++i) {
    Rat mn = p.vertices[0][i], mx = p.vertices[0][i];
    for (const auto& v : p.vertices) {
      mn = std::min(mn, v[i]);
      mx = std::max(mx, v[i]);
    }
    lo[i] = rat_ceil(mn);
    hi[i] = rat_floor(mx);
    if (lo[i] > hi[i]) return out;
  }
  ZVec cur = lo;
  while (true) {
    QVec q(d);
    for (int i = 0; i < d; ++i) q[i] = Rat(cur[i]);
    if (p.contains(q)) out.push_back(cur);
    int i = d - 1;
    while (i >= 0) {
      if (cur[i] < hi[i]) {
        ++cur[i];
        for (int j = i + 1; j < d; ++j) cur[j] = lo[j];
        break;
      }
      --i;
    }
    if (i < 0) break;
  }
  return out;
}

Polytope minkowski_sum(const Polytope& p, const Polytope& q) {
  if (p.dim != q.dim) throw std::invalid_argument("minkowski_sum: dimension mismatch");
  if (p.empty() || q.empty()) {
    Polytope e;
    e.dim = p.dim;
    e.affine_dim = -1;
    return e;
  }
  std::vector<QVec> sums;
  for (const auto& a : p.vertices)
    for (const auto& b : q.vertices) sums.push_back(add(a, b));
  return convex_hull(sums, p.dim);
}

Polytope scale(const Polytope& p, const Rat& r) {
  if (r < 0) throw std::invalid_argument("scale: negative factor");
  if (r == 0) {
    if (p.empty()) return p;
    return convex_hull({QVec(p.dim, Rat(0))}, p.dim);
  }
  Polytope out = p;
  for (auto& v : out.vertices) v = okb::scale(v, r);
  for (auto& f : out.facets) f.offset *= r;
  for (auto& e : out.affine_hull) e.value *= r;
  return out;
}

Polytope translate(const Polytope& p, const QVec& v) {
  Polytope out = p;
  for (auto& w : out.vertices) w = add(w, v);
  std::sort(out.vertices.begin(), out.vertices.end(), lex_less);
  for (auto& f : out.facets) f.offset += dot(to_qvec(f.normal), v);
  for (auto& e : out.affine_hull) e.value += dot(to_qvec(e.normal), v);
  return out;
}

Polytope linear_image(const Polytope& p, const QMat& map_rows) {
  if (p.empty()) {
    Polytope e;
    e.dim = static_cast<int>(map_rows.size());
    e.affine_dim = -1;
    return e;
  }
  std::vector<QVec> imgs;
  for (const auto& v : p.vertices) {
    QVec w(map_rows.size());
    for (size_t i = 0; i < map_rows.size(); ++i) w[i] = dot(map_rows[i], v);
    imgs.push_back(w);
  }
  return convex_hull(imgs, static_cast<int>(map_rows.size()));
}

bool polytope_subset(const Polytope& p, const Polytope& q) {
  if (p.empty()) return true;
  if (q.empty()) return false;
  for (const auto& v : p.vertices)
    if (!q.contains(v)) return false;
  return true;
}

bool polytope_equals(const Polytope& p, const Polytope& q) {
  return polytope_subset(p, q) && polytope_subset(q, p);
}

std::string to_string(const Polytope& p) {
  std::ostringstream os;
  os << "polytope dim=" << p.dim << " affdim=" << p.affine_dim << " V={";
  for (const auto& v : p.vertices) {
    os << "(";
    for (size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << rat_str(v[i]);
    os << ")";
  }
  os << "}";
  return os.str();
}

}  // namespace okb
