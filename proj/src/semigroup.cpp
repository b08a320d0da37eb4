#include "okb/semigroup.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <sstream>
#include <unordered_set>

namespace okb {

namespace {

bool leq_componentwise(const LPoint& a, const LPoint& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

LPoint minus(const LPoint& a, const LPoint& b) {
  LPoint r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

LPoint plus(const LPoint& a, const LPoint& b) {
  LPoint r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

bool all_zero(const LPoint& a) {
  return std::all_of(a.begin(), a.end(), [](long long x) { return x == 0; });
}

// Packs small nonnegative points into one integer for fast set membership;
// returns false when the coordinates are too large to pack.
bool pack_points(const std::vector<LPoint>& pts, long long bound, int d,
                 std::function<long long(const LPoint&)>& encoder) {
  long double capacity = 1.0L;
  for (int i = 0; i < d; ++i) capacity *= static_cast<long double>(bound);
  if (capacity > 4.0e18L) return false;
  encoder = [bound, d](const LPoint& p) {
    long long code = 0;
    for (int i = 0; i < d; ++i) code = code * bound + p[i];
    return code;
  };
  (void)pts;
  return true;
}

}  // namespace

GradedSemigroup GradedSemigroup::from_generators(int value_dim, int grading_dim,
                                                 std::vector<LPoint> generators) {
  if (value_dim < 0 || grading_dim < 1) throw std::invalid_argument("bad semigroup dimensions");
  GradedSemigroup g;
  g.value_dim_ = value_dim;
  g.grading_dim_ = grading_dim;
  g.explicit_mode_ = false;
  for (auto& gen : generators) {
    if (static_cast<int>(gen.size()) != value_dim + grading_dim)
      throw std::invalid_argument("generator dimension mismatch");
    for (long long c : gen)
      if (c < 0) throw std::invalid_argument("generator with negative coordinate");
    if (all_zero(gen)) continue;
    g.generators_.push_back(gen);
  }
  std::sort(g.generators_.begin(), g.generators_.end());
  g.generators_.erase(std::unique(g.generators_.begin(), g.generators_.end()),
                      g.generators_.end());
  return g;
}

GradedSemigroup GradedSemigroup::from_slices(int value_dim,
                                             std::map<int, std::vector<LPoint>> slices,
                                             int max_degree, int additivity_check_limit) {
  GradedSemigroup g;
  g.value_dim_ = value_dim;
  g.grading_dim_ = 1;
  g.explicit_mode_ = true;
  g.max_degree_ = max_degree;
  for (auto& [deg, pts] : slices) {
    if (deg < 0 || deg > max_degree) throw std::invalid_argument("slice degree out of range");
    for (auto& p : pts) {
      if (static_cast<int>(p.size()) != value_dim)
        throw std::invalid_argument("slice point dimension mismatch");
      for (long long c : p)
        if (c < 0) throw std::invalid_argument("slice point with negative coordinate");
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  }
  if (slices.count(0)) {
    const auto& s0 = slices.at(0);
    if (!(s0.empty() || (s0.size() == 1 && all_zero(s0[0]))))
      throw std::invalid_argument("degree-0 slice must be {0}");
    slices.erase(0);
  }
  g.explicit_ = std::move(slices);

  // additivity up to the configured horizon
  int cap = std::min(max_degree, additivity_check_limit);
  for (int k = 1; k <= cap; ++k) {
    for (int l = k; k + l <= cap; ++l) {
      auto ik = g.explicit_.find(k), il = g.explicit_.find(l), is = g.explicit_.find(k + l);
      if (ik == g.explicit_.end() || il == g.explicit_.end()) continue;
      const auto& target = is == g.explicit_.end() ? std::vector<LPoint>{} : is->second;
      for (const auto& a : ik->second)
        for (const auto& b : il->second) {
          LPoint s = plus(a, b);
          if (!std::binary_search(target.begin(), target.end(), s)) {
            std::ostringstream os;
            os << "additivity fails: slice(" << k << ") + slice(" << l << ") is not inside slice("
               << k + l << ")";
            throw std::invalid_argument(os.str());
          }
        }
    }
  }
  return g;
}

std::vector<LPoint> GradedSemigroup::multi_slice(const LPoint& degree) const {
  if (static_cast<int>(degree.size()) != grading_dim_)
    throw std::invalid_argument("degree vector dimension mismatch");
  for (long long c : degree)
    if (c < 0) throw std::invalid_argument("negative degree");

  if (explicit_mode_) {
    long long m = degree[0];
    if (m > max_degree_) throw std::domain_error("degree out of range");
    if (m == 0) return {LPoint(value_dim_, 0)};
    auto it = explicit_.find(static_cast<int>(m));
    return it == explicit_.end() ? std::vector<LPoint>{} : it->second;
  }

  for (const auto& gen : generators_) {
    bool zero_grade = true;
    for (int i = 0; i < grading_dim_; ++i)
      if (gen[value_dim_ + i] != 0) zero_grade = false;
    if (zero_grade) throw std::domain_error("semigroup has a nonzero generator of degree zero");
  }

  std::lock_guard<std::mutex> lock(memo_->mutex);
  auto& slice_memo = memo_->slices;
  std::function<const std::vector<LPoint>&(const LPoint&)> go =
      [&](const LPoint& deg) -> const std::vector<LPoint>& {
    auto it = slice_memo.find(deg);
    if (it != slice_memo.end()) return it->second;
    std::set<LPoint> acc;
    if (all_zero(deg)) {
      acc.insert(LPoint(value_dim_, 0));
    } else {
      for (const auto& gen : generators_) {
        LPoint ggrade(gen.begin() + value_dim_, gen.end());
        if (all_zero(ggrade) || !leq_componentwise(ggrade, deg)) continue;
        LPoint gval(gen.begin(), gen.begin() + value_dim_);
        for (const auto& v : go(minus(deg, ggrade))) acc.insert(plus(v, gval));
      }
    }
    auto& stored = slice_memo[deg];
    stored.assign(acc.begin(), acc.end());
    return stored;
  };
  return go(degree);
}

std::vector<LPoint> GradedSemigroup::slice(long long m) const {
  if (grading_dim_ != 1) throw std::invalid_argument("slice(m) requires grading dimension 1");
  return multi_slice({m});
}

AdmissibilityReport check_admissibility(const GradedSemigroup& g) {
  AdmissibilityReport rep;
  int d = g.value_dim(), r = g.grading_dim();
  if (g.explicit_mode()) {
    rep.has_zero = true;  // enforced at construction
    rep.is_bounded = true;
    rep.bound_is_certified = false;  // only inspected up to the declared degree
    Rat b = 0;
    std::vector<ZVec> pts;
    for (int m = 1; m <= g.max_degree(); ++m) {
      std::vector<LPoint> s;
      try {
        s = g.slice(m);
      } catch (const std::domain_error&) {
        break;
      }
      for (const auto& p : s) {
        ZVec zp;
        for (long long c : p) {
          b = std::max(b, Rat(c, m));
          zp.push_back(Int(c));
        }
        zp.push_back(Int(m));
        pts.push_back(zp);
      }
    }
    rep.bound = b;
    rep.generates_full_group = lattice_index(pts, d + 1) == 1;
    return rep;
  }

  rep.has_zero = true;
  Rat b = 0;
  std::vector<ZVec> gens_z;
  for (const auto& gen : g.generators()) {
    long long grade_total = 0;
    for (int i = 0; i < r; ++i) grade_total += gen[d + i];
    if (grade_total == 0) rep.has_zero = false;
    ZVec z;
    for (long long c : gen) z.push_back(Int(c));
    gens_z.push_back(z);
    if (grade_total > 0)
      for (int i = 0; i < d; ++i) b = std::max(b, Rat(gen[i], grade_total));
  }
  rep.is_bounded = rep.has_zero;  // finitely many generators, all of positive degree
  rep.bound = b;
  rep.generates_full_group = lattice_index(gens_z, d + r) == 1;
  return rep;
}

BodyResult okounkov_body(const GradedSemigroup& g, int m_max) {
  if (g.grading_dim() != 1)
    throw std::invalid_argument("okounkov_body requires grading dimension 1");
  auto rep = check_admissibility(g);
  if (!rep.ok()) throw InadmissibleError(rep);

  int d = g.value_dim();
  BodyResult out;
  if (!g.explicit_mode()) {
    std::vector<QVec> rays;
    for (const auto& gen : g.generators()) rays.push_back(to_qvec(gen));
    out.body = cone_slice(cone_from_rays(rays, d + 1), d, Rat(1));
    out.exact = true;
    return out;
  }

  std::vector<QVec> scaled;
  for (int m = 1; m <= std::min(m_max, g.max_degree()); ++m) {
    for (const auto& p : g.slice(m)) {
      QVec q(d);
      for (int i = 0; i < d; ++i) q[i] = Rat(p[i], m);
      scaled.push_back(q);
    }
  }
  if (scaled.empty()) throw std::domain_error("no slice points up to m_max");
  Polytope hull = convex_hull(scaled, d);
  if (!g.known_closure_rays().empty()) {
    std::vector<QVec> rays;
    for (const auto& r : g.known_closure_rays()) rays.push_back(to_qvec(r));
    out.body = cone_slice(cone_from_rays(rays, d + 1), d, Rat(1));
    out.exact = true;
    if (!polytope_subset(hull, out.body))
      throw std::logic_error("slice data escapes the declared closure cone");
    return out;
  }
  out.body = hull;
  out.exact = false;
  return out;
}

DensityResult density_sequence(const GradedSemigroup& g, int m_max) {
  auto rep = check_admissibility(g);
  if (!rep.ok()) throw InadmissibleError(rep);
  DensityResult res;
  int d = g.value_dim();
  for (long long m = 1; m <= m_max; ++m) {
    Int md = 1;
    for (int i = 0; i < d; ++i) md *= m;
    res.ratios.push_back({m, Rat(Int(g.slice(m).size()), md)});
  }
  auto body = okounkov_body(g, m_max);
  res.target_volume = polytope_volume(body.body);
  res.target_exact = body.exact;
  return res;
}

long long fujita_sumset_count(const GradedSemigroup& g, long long p, long long k) {
  if (k < 1) throw std::invalid_argument("k must be positive");
  auto base = g.slice(p);
  if (base.empty()) throw std::domain_error("empty degree slice");
  int d = g.value_dim();

  long long maxc = 1;
  for (const auto& pt : base)
    for (long long c : pt) maxc = std::max(maxc, c);
  long long bound = k * maxc + 1;

  std::function<long long(const LPoint&)> enc;
  if (pack_points(base, bound, d, enc)) {
    std::unordered_set<long long> cur;
    for (const auto& pt : base) cur.insert(enc(pt));
    std::vector<LPoint> cur_pts = base;
    for (long long step = 1; step < k; ++step) {
      std::unordered_set<long long> next;
      std::vector<LPoint> next_pts;
      next.reserve(cur_pts.size() * 2);
      for (const auto& s : cur_pts)
        for (const auto& b : base) {
          LPoint t = plus(s, b);
          if (next.insert(enc(t)).second) next_pts.push_back(t);
        }
      cur_pts = std::move(next_pts);
    }
    return static_cast<long long>(cur_pts.size());
  }
  std::set<LPoint> cur(base.begin(), base.end());
  for (long long step = 1; step < k; ++step) {
    std::set<LPoint> next;
    for (const auto& s : cur)
      for (const auto& b : base) next.insert(plus(s, b));
    cur = std::move(next);
  }
  return static_cast<long long>(cur.size());
}

Rat fujita_gap(const GradedSemigroup& g, long long p, long long k) {
  long long n = fujita_sumset_count(g, p, k);
  Int denomi = 1;
  for (int i = 0; i < g.value_dim(); ++i) denomi *= Int(k) * Int(p);
  return Rat(Int(n), denomi);
}

namespace {

// Shared machinery for the translate search: semigroup membership and
// cone membership bitmaps over [0, box]^k.
struct BoxData {
  int k;
  long long box;
  std::vector<long long> strides;
  std::vector<char> member;     // semigroup membership
  std::vector<LPoint> in_cone;  // integer points of the spanned cone

  long long index(const LPoint& p) const {
    long long idx = 0;
    for (int i = 0; i < k; ++i) idx += p[i] * strides[i];
    return idx;
  }
};

BoxData build_box(const GradedSemigroup& g, long long box) {
  if (g.explicit_mode())
    throw std::invalid_argument("translate search requires a generator source");
  int k = g.value_dim() + g.grading_dim();
  BoxData bd;
  bd.k = k;
  bd.box = box;
  long double total = 1;
  for (int i = 0; i < k; ++i) total *= static_cast<long double>(box + 1);
  if (total > 2.0e8L) throw std::invalid_argument("verification box too large");
  bd.strides.resize(k);
  long long s = 1;
  for (int i = k - 1; i >= 0; --i) {
    bd.strides[i] = s;
    s *= box + 1;
  }
  bd.member.assign(static_cast<size_t>(s), 0);

  // all semigroup elements inside the box (partial sums stay in the box)
  std::deque<LPoint> queue;
  LPoint zero(k, 0);
  bd.member[bd.index(zero)] = 1;
  queue.push_back(zero);
  while (!queue.empty()) {
    LPoint cur = queue.front();
    queue.pop_front();
    for (const auto& gen : g.generators()) {
      LPoint nxt = plus(cur, gen);
      bool ok = true;
      for (long long c : nxt)
        if (c > box) ok = false;
      if (!ok) continue;
      auto& cell = bd.member[bd.index(nxt)];
      if (!cell) {
        cell = 1;
        queue.push_back(nxt);
      }
    }
  }

  std::vector<QVec> rays;
  for (const auto& gen : g.generators()) rays.push_back(to_qvec(gen));
  PolyCone sigma = cone_from_rays(rays, k);
  LPoint cur(k, 0);
  while (true) {
    if (sigma.contains(to_qvec(cur))) bd.in_cone.push_back(cur);
    int i = k - 1;
    while (i >= 0) {
      if (cur[i] < box) {
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = 0;
        break;
      }
      --i;
    }
    if (i < 0) break;
  }
  return bd;
}

bool translate_ok(const BoxData& bd, const LPoint& z) {
  for (const auto& q : bd.in_cone) {
    LPoint w = plus(z, q);
    bool inside = true;
    for (long long c : w)
      if (c > bd.box) inside = false;
    if (!inside) continue;
    if (!bd.member[bd.index(w)]) return false;
  }
  return true;
}

}  // namespace

TranslateResult khovanskii_translate(const GradedSemigroup& g, long long box) {
  std::vector<ZVec> gens_z;
  for (const auto& gen : g.generators()) {
    ZVec z;
    for (long long c : gen) z.push_back(Int(c));
    gens_z.push_back(z);
  }
  int k = g.value_dim() + g.grading_dim();
  if (lattice_index(gens_z, k) != 1)
    throw std::domain_error("statement (*) fails if the semigroup does not generate Z^k");

  BoxData bd = build_box(g, box);
  TranslateResult res;
  res.box = box;
  LPoint z(k, 0);
  while (true) {
    if (translate_ok(bd, z)) {
      res.z = z;
      return res;
    }
    int i = k - 1;
    while (i >= 0) {
      if (z[i] < box) {
        ++z[i];
        for (int j = i + 1; j < k; ++j) z[j] = 0;
        break;
      }
      --i;
    }
    if (i < 0) break;
  }
  return res;
}

bool khovanskii_verify(const GradedSemigroup& g, const LPoint& z, long long box) {
  BoxData bd = build_box(g, box);
  return translate_ok(bd, z);
}

FiberCheckResult ray_fiber_check(const GradedSemigroup& g, const LPoint& a, long long box) {
  if (g.explicit_mode())
    throw std::invalid_argument("ray_fiber_check requires a generator source");
  int d = g.value_dim(), r = g.grading_dim();
  if (static_cast<int>(a.size()) != r) throw std::invalid_argument("ray dimension mismatch");
  if (all_zero(a)) throw std::invalid_argument("zero ray");

  FiberCheckResult res;

  // interior-of-support test, via the exact H-description of the support
  std::vector<QVec> grade_rays;
  for (const auto& gen : g.generators())
    grade_rays.push_back(to_qvec(LPoint(gen.begin() + d, gen.end())));
  PolyCone supp = cone_from_rays(grade_rays, r);
  bool interior = supp.full_dim();
  if (interior)
    for (const auto& h : supp.halfspaces)
      if (dot(to_qvec(h), to_qvec(a)) <= 0) interior = false;

  // slice of the full cone along R^d x R.a, in coordinates (x, t)
  std::vector<QVec> rays;
  for (const auto& gen : g.generators()) rays.push_back(to_qvec(gen));
  PolyCone sigma = cone_from_rays(rays, d + r);
  LinearSubspace l;
  l.ambient_dim = d + r;
  for (int i = 0; i < d; ++i) {
    QVec e(d + r, Rat(0));
    e[i] = 1;
    l.basis.push_back(e);
  }
  QVec ar(d + r, Rat(0));
  for (int i = 0; i < r; ++i) ar[d + i] = Rat(a[i]);
  l.basis.push_back(ar);
  res.sliced_cone = cone_meet_subspace(sigma, l);

  // enumerate the fiber semigroup up to grading box*a
  LPoint cap(r);
  for (int i = 0; i < r; ++i) cap[i] = box * a[i];
  std::set<LPoint> visited;
  std::deque<LPoint> queue;
  LPoint zero(d + r, 0);
  visited.insert(zero);
  queue.push_back(zero);
  std::vector<QVec> fiber_rays;
  while (!queue.empty()) {
    LPoint cur = queue.front();
    queue.pop_front();
    for (const auto& gen : g.generators()) {
      LPoint nxt = plus(cur, gen);
      LPoint grade(nxt.begin() + d, nxt.end());
      if (!leq_componentwise(grade, cap)) continue;
      if (!visited.insert(nxt).second) continue;
      queue.push_back(nxt);
    }
  }
  for (const auto& pt : visited) {
    LPoint grade(pt.begin() + d, pt.end());
    if (all_zero(grade)) continue;
    // grade must be j*a for an integer j
    long long j = 0;
    bool j_set = false, on_ray = true;
    for (int i = 0; i < r; ++i) {
      if (a[i] == 0) {
        if (grade[i] != 0) on_ray = false;
        continue;
      }
      long long q = grade[i] / a[i];
      if (q * a[i] != grade[i]) on_ray = false;
      if (!j_set) {
        j = q;
        j_set = true;
      } else if (q != j) {
        on_ray = false;
      }
    }
    if (!on_ray || j == 0) continue;
    QVec v(d + 1);
    for (int i = 0; i < d; ++i) v[i] = Rat(pt[i]);
    v[d] = Rat(j);
    fiber_rays.push_back(v);
  }
  res.fiber_empty = fiber_rays.empty();
  res.fiber_cone = cone_from_rays(fiber_rays, d + 1);

  if (!interior) {
    res.outcome = FiberOutcome::HypothesisNotMet;
    return res;
  }
  res.outcome = cone_equals(res.fiber_cone, res.sliced_cone) ? FiberOutcome::Equal
                                                             : FiberOutcome::NotEqual;
  return res;
}

GradedSemigroup curve_semigroup(long long c, long long g, int max_degree) {
  if (g < 0) throw std::invalid_argument("negative genus");
  if (c < 2 * g + 1) throw std::invalid_argument("degree too small");
  std::map<int, std::vector<LPoint>> slices;
  for (int m = 1; m <= max_degree; ++m) {
    std::vector<LPoint> pts;
    for (long long k = 0; k <= m * c - g; ++k) pts.push_back({k});
    slices[m] = std::move(pts);
  }
  GradedSemigroup sg = GradedSemigroup::from_slices(1, std::move(slices), max_degree);
  sg.closure_rays_ = {{0, 1}, {c, 1}};
  return sg;
}

bool check_additivity_full(const GradedSemigroup& g, std::string* first_failure) {
  if (!g.explicit_mode()) return true;
  for (int k = 1; k <= g.max_degree(); ++k)
    for (int l = k; k + l <= g.max_degree(); ++l) {
      auto sk = g.slice(k), sl = g.slice(l), st = g.slice(k + l);
      for (const auto& x : sk)
        for (const auto& y : sl) {
          LPoint s = plus(x, y);
          if (!std::binary_search(st.begin(), st.end(), s)) {
            if (first_failure) {
              std::ostringstream os;
              os << "slice(" << k << ") + slice(" << l << ") escapes slice(" << k + l << ")";
              *first_failure = os.str();
            }
            return false;
          }
        }
    }
  return true;
}

}  // namespace okb
