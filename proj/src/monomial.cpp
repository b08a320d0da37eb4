#include "okb/monomial.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

#include "okb/cone.hpp"

namespace okb {

namespace {

using LL = std::vector<long long>;

LL plus(const LL& a, const LL& b) {
  LL r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool dominates(const LL& a, const LL& b) {  // a >= b componentwise
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] < b[i]) return false;
  return true;
}

bool in_ideal(const LL& v, const ExponentSet& gens) {
  for (const auto& g : gens)
    if (dominates(v, g)) return true;
  return false;
}

}  // namespace

std::vector<long long> lex_valuation(const Monomial& m) {
  if (m.exponents.empty()) throw std::invalid_argument("empty monomial");
  for (long long e : m.exponents)
    if (e < 0) throw std::invalid_argument("negative exponent");
  return LL(m.exponents.begin() + 1, m.exponents.end());
}

std::vector<Monomial> degree_monomials(int proj_dim, long long m) {
  std::vector<Monomial> out;
  LL tail(proj_dim, 0);  // (a_1, ..., a_d), enumerated in lex order
  std::function<void(int, long long)> rec = [&](int pos, long long used) {
    if (pos == proj_dim) {
      Monomial mo;
      mo.exponents.push_back(m - used);
      mo.exponents.insert(mo.exponents.end(), tail.begin(), tail.end());
      out.push_back(mo);
      return;
    }
    for (long long e = 0; used + e <= m; ++e) {
      tail[pos] = e;
      rec(pos + 1, used + e);
    }
    tail[pos] = 0;
  };
  rec(0, 0);
  return out;
}

std::vector<std::vector<long long>> subspace_valuation_image(const GeneralSubspace& w) {
  auto cols = degree_monomials(w.proj_dim, w.degree);
  for (const auto& row : w.coefficients)
    if (row.size() != cols.size())
      throw std::invalid_argument("coefficient row length does not match the monomial count");
  QMat m = w.coefficients;
  auto pivots = row_echelon(m);
  std::vector<LL> image;
  for (int p : pivots) image.push_back(lex_valuation(cols[p]));
  std::sort(image.begin(), image.end());
  return image;
}

MonomialSeries MonomialSeries::from_levels(
    int dim, std::map<int, std::vector<std::vector<long long>>> levels, int max_degree,
    int multiplicativity_check_limit) {
  MonomialSeries s;
  s.dim_ = dim;
  s.max_degree_ = max_degree;
  for (auto& [m, pts] : levels) {
    if (m < 0 || m > max_degree) throw std::invalid_argument("series degree out of range");
    for (auto& p : pts) {
      if (static_cast<int>(p.size()) != dim) throw std::invalid_argument("exponent dimension mismatch");
      long long total = 0;
      for (long long e : p) {
        if (e < 0) throw std::invalid_argument("negative exponent");
        total += e;
      }
      if (total > m) throw std::invalid_argument("exponent degree exceeds the level");
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  if (levels.count(0)) {
    const auto& l0 = levels.at(0);
    if (!(l0.empty() || (l0.size() == 1 && std::all_of(l0[0].begin(), l0[0].end(),
                                                       [](long long x) { return x == 0; }))))
      throw std::invalid_argument("W_0 must be the constants");
    levels.erase(0);
  }
  s.levels_ = std::move(levels);

  int cap = std::min(max_degree, multiplicativity_check_limit);
  for (int k = 1; k <= cap; ++k)
    for (int l = k; k + l <= cap; ++l) {
      auto ik = s.levels_.find(k), il = s.levels_.find(l), it = s.levels_.find(k + l);
      if (ik == s.levels_.end() || il == s.levels_.end()) continue;
      const auto& target = it == s.levels_.end() ? std::vector<LL>{} : it->second;
      for (const auto& a : ik->second)
        for (const auto& b : il->second)
          if (!std::binary_search(target.begin(), target.end(), plus(a, b)))
            throw std::invalid_argument("series is not multiplicative");
    }
  return s;
}

const std::vector<std::vector<long long>>& MonomialSeries::level(int m) const {
  static const std::vector<LL> empty;
  if (m < 0 || m > max_degree_) throw std::domain_error("degree out of range");
  auto it = levels_.find(m);
  return it == levels_.end() ? empty : it->second;
}

MonomialSeries series_from_body(const Polytope& k, int max_degree) {
  int d = k.dim;
  for (const auto& v : k.vertices) {
    Rat total = 0;
    for (const auto& c : v) {
      if (c < 0) throw std::invalid_argument("rescale K into the simplex first");
      total += c;
    }
    if (total > 1) throw std::invalid_argument("rescale K into the simplex first");
  }
  if (!k.full_dim()) throw std::invalid_argument("body must have nonempty interior");

  std::map<int, std::vector<LL>> levels;
  for (int m = 1; m <= max_degree; ++m) {
    std::vector<LL> pts;
    for (const auto& z : lattice_points(scale(k, Rat(m)))) {
      LL p;
      for (const auto& c : z) p.push_back(c.convert_to<long long>());
      pts.push_back(p);
    }
    levels[m] = std::move(pts);
  }
  MonomialSeries s = MonomialSeries::from_levels(d, std::move(levels), max_degree);
  s.source_body_ = k;
  return s;
}

namespace {

// Largest normalized violation of q's H-representation by p's vertices;
// an exact lower bound for the L-infinity Hausdorff distance.
Rat directed_facet_gap(const Polytope& p, const Polytope& q) {
  Rat worst = 0;
  for (const auto& v : p.vertices) {
    for (const auto& f : q.facets) {
      Rat excess = dot(to_qvec(f.normal), v) - f.offset;
      if (excess <= 0) continue;
      Rat norm1 = 0;
      for (const auto& c : f.normal) norm1 += Rat(abs(c));
      worst = std::max(worst, Rat(excess / norm1));
    }
    for (const auto& e : q.affine_hull) {
      Rat excess = abs(dot(to_qvec(e.normal), v) - e.value);
      if (excess == 0) continue;
      Rat norm1 = 0;
      for (const auto& c : e.normal) norm1 += Rat(abs(c));
      worst = std::max(worst, Rat(excess / norm1));
    }
  }
  return worst;
}

}  // namespace

SeriesBodyResult series_okounkov_body(const MonomialSeries& w, int m_max,
                                      const Polytope* reference) {
  int d = w.dim();
  std::vector<QVec> pts;
  for (int m = 1; m <= std::min(m_max, w.max_degree()); ++m) {
    for (const auto& p : w.level(m)) {
      QVec q(d);
      for (int i = 0; i < d; ++i) q[i] = Rat(p[i], m);
      pts.push_back(q);
    }
  }
  if (pts.empty()) throw std::domain_error("series has no sections up to m_max");
  SeriesBodyResult res;
  Polytope hull = convex_hull(pts, d);
  res.body = hull;

  if (w.source_body()) {
    const Polytope& k = *w.source_body();
    for (int m = 1; m <= std::min(m_max, w.max_degree()); ++m) {
      bool lattice = true;
      for (const auto& v : k.vertices)
        for (const auto& c : v)
          if (!is_integer(Rat(c * m))) lattice = false;
      if (!lattice) continue;
      res.body = k;
      res.exact = true;
      if (!polytope_subset(hull, k))
        throw std::logic_error("series data escapes its source body");
      break;
    }
  }

  if (reference) {
    SeriesBodyDiagnostics diag;
    diag.subset_of_reference = polytope_subset(res.body, *reference);
    diag.contains_reference = polytope_subset(*reference, res.body);
    diag.facet_gap =
        std::max(directed_facet_gap(res.body, *reference), directed_facet_gap(*reference, res.body));
    res.diagnostics = diag;
  }
  return res;
}

bool ideal_is_m_primary(const ExponentSet& gens, int dim) {
  for (int axis = 0; axis < dim; ++axis) {
    bool pure = false;
    for (const auto& g : gens) {
      bool only_axis = g[axis] > 0;
      for (int i = 0; i < dim && only_axis; ++i)
        if (i != axis && g[i] != 0) only_axis = false;
      if (only_axis) pure = true;
    }
    if (!pure) return false;
  }
  return true;
}

namespace {

LL primary_box(const ExponentSet& gens, int dim) {
  LL box(dim, 0);
  for (int axis = 0; axis < dim; ++axis) {
    long long best = -1;
    for (const auto& g : gens) {
      bool only_axis = g[axis] > 0;
      for (int i = 0; i < dim && only_axis; ++i)
        if (i != axis && g[i] != 0) only_axis = false;
      if (only_axis && (best < 0 || g[axis] < best)) best = g[axis];
    }
    box[axis] = best;
  }
  return box;
}

void validate_gens(const ExponentSet& gens, int dim) {
  if (gens.empty()) throw std::invalid_argument("empty generator set");
  for (const auto& g : gens) {
    if (static_cast<int>(g.size()) != dim) throw std::invalid_argument("exponent dimension mismatch");
    for (long long e : g)
      if (e < 0) throw std::invalid_argument("negative exponent");
  }
}

}  // namespace

long long ideal_colength(const ExponentSet& gens, int dim) {
  validate_gens(gens, dim);
  if (!ideal_is_m_primary(gens, dim)) throw std::domain_error("ideal is not m-primary");
  LL box = primary_box(gens, dim);
  long long count = 0;
  LL cur(dim, 0);
  while (true) {
    if (!in_ideal(cur, gens)) ++count;
    int i = dim - 1;
    while (i >= 0) {
      if (cur[i] + 1 < box[i]) {
        ++cur[i];
        for (int j = i + 1; j < dim; ++j) cur[j] = 0;
        break;
      }
      --i;
    }
    if (i < 0) break;
  }
  return count;
}

Rat ideal_multiplicity(const ExponentSet& gens, int dim) {
  validate_gens(gens, dim);
  if (!ideal_is_m_primary(gens, dim)) throw std::domain_error("ideal is not m-primary");
  LL box = primary_box(gens, dim);

  // H-representation of the Newton polyhedron conv(gens) + R_{>=0}^d via
  // its homogenization cone spanned by (g, 1) and (e_i, 0)
  std::vector<QVec> rays;
  for (const auto& g : gens) {
    QVec r = to_qvec(g);
    r.push_back(Rat(1));
    rays.push_back(r);
  }
  for (int i = 0; i < dim; ++i) {
    QVec r(dim + 1, Rat(0));
    r[i] = 1;
    rays.push_back(r);
  }
  PolyCone cone = cone_from_rays(rays, dim + 1);

  std::vector<std::pair<QVec, Rat>> ineqs;
  for (const auto& h : cone.halfspaces) {
    // h . (x, 1) >= 0  ->  -h_x . x <= h_last
    QVec a(dim);
    for (int i = 0; i < dim; ++i) a[i] = -Rat(h[i]);
    ineqs.push_back({a, Rat(h[dim])});
  }
  Rat box_vol = 1;
  for (int i = 0; i < dim; ++i) {
    QVec lo(dim, Rat(0)), hi(dim, Rat(0));
    lo[i] = -1;
    hi[i] = 1;
    ineqs.push_back({lo, Rat(0)});
    ineqs.push_back({hi, Rat(box[i])});
    box_vol *= Rat(box[i]);
  }
  Polytope clipped = polytope_from_inequalities(dim, ineqs);
  Rat complement = box_vol - polytope_volume(clipped);
  Int dfact = 1;
  for (int i = 2; i <= dim; ++i) dfact *= i;
  return complement * Rat(dfact);
}

MonomialIdealFamily MonomialIdealFamily::from_ideals(int dim, std::map<int, ExponentSet> ideals,
                                                     int max_index, int check_limit) {
  MonomialIdealFamily f;
  f.dim_ = dim;
  f.max_index_ = max_index;
  for (auto& [k, gens] : ideals) {
    if (k < 1 || k > max_index) throw std::invalid_argument("family index out of range");
    validate_gens(gens, dim);
    if (!ideal_is_m_primary(gens, dim)) throw std::domain_error("ideal is not m-primary");
    std::sort(gens.begin(), gens.end());
  }
  f.ideals_ = std::move(ideals);
  int cap = std::min(max_index, check_limit);
  for (int k = 1; k <= cap; ++k)
    for (int l = k; k + l <= cap; ++l) {
      auto ik = f.ideals_.find(k), il = f.ideals_.find(l), it = f.ideals_.find(k + l);
      if (ik == f.ideals_.end() || il == f.ideals_.end() || it == f.ideals_.end()) continue;
      for (const auto& a : ik->second)
        for (const auto& b : il->second)
          if (!in_ideal(plus(a, b), it->second))
            throw std::invalid_argument("family is not graded: a_k * a_l escapes a_{k+l}");
    }
  return f;
}

const ExponentSet& MonomialIdealFamily::ideal(int k) const {
  auto it = ideals_.find(k);
  if (it == ideals_.end()) throw std::domain_error("family index out of range");
  return it->second;
}

FamilySequences family_multiplicity_check(const MonomialIdealFamily& f, int m_max) {
  FamilySequences out;
  int d = f.dim();
  Int dfact = 1;
  for (int i = 2; i <= d; ++i) dfact *= i;
  for (int m = 1; m <= std::min(m_max, f.max_index()); ++m) {
    Int md = 1;
    for (int i = 0; i < d; ++i) md *= m;
    out.colength_scaled.push_back({m, Rat(dfact * Int(ideal_colength(f.ideal(m), d)), md)});
    out.multiplicity_scaled.push_back({m, ideal_multiplicity(f.ideal(m), d) / Rat(md)});
  }
  return out;
}

}  // namespace okb
