#include "okb/toric.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace okb {

namespace {

QMat chart_matrix(const ToricModel& t, const FlagChart& chart) {
  QMat v;
  for (int idx : chart.ordered_rays) v.push_back(to_qvec(t.rays[idx]));
  return v;
}

Rat pair_ray(const ZVec& ray, const QVec& u) { return dot(to_qvec(ray), u); }

}  // namespace

ToricModel make_toric_model(int rank, std::vector<ZVec> rays,
                            std::vector<std::vector<int>> max_cones) {
  ToricModel t;
  t.rank = rank;
  for (const auto& r : rays) {
    if (static_cast<int>(r.size()) != rank) throw std::invalid_argument("ray dimension mismatch");
    Int g = 0;
    for (const auto& c : r) g = gcd(g, c);
    if (g != 1) throw std::invalid_argument("fan ray is not primitive");
  }
  t.rays = std::move(rays);
  for (auto& cone : max_cones) {
    std::set<int> uniq(cone.begin(), cone.end());
    if (static_cast<int>(uniq.size()) != static_cast<int>(cone.size()))
      throw std::invalid_argument("maximal cone repeats a ray");
    for (int i : cone)
      if (i < 0 || i >= static_cast<int>(t.rays.size()))
        throw std::invalid_argument("maximal cone ray index out of range");
    if (static_cast<int>(cone.size()) != rank)
      throw std::invalid_argument("fan not smooth: maximal cone is not simplicial");
    QMat m;
    for (int i : cone) m.push_back(to_qvec(t.rays[i]));
    Rat det = determinant(m);
    if (det != 1 && det != -1)
      throw std::invalid_argument("fan not smooth: maximal cone is not unimodular");
  }
  t.max_cones = std::move(max_cones);
  return t;
}

void validate_chart(const ToricModel& t, const FlagChart& chart) {
  if (static_cast<int>(chart.ordered_rays.size()) != t.rank)
    throw std::invalid_argument("chart must order exactly d rays");
  std::set<int> want(chart.ordered_rays.begin(), chart.ordered_rays.end());
  bool listed = false;
  for (const auto& cone : t.max_cones)
    if (std::set<int>(cone.begin(), cone.end()) == want) listed = true;
  if (!listed) throw std::invalid_argument("chart rays are not a maximal cone of the fan");
}

Polytope divisor_polytope(const ToricModel& t, const InvariantDivisor& d) {
  if (d.coeffs.size() != t.rays.size())
    throw std::invalid_argument("divisor needs one coefficient per ray");
  std::vector<std::pair<QVec, Rat>> ineqs;
  for (size_t i = 0; i < t.rays.size(); ++i) {
    // <u, v_i> >= -a_i  ->  -v_i . u <= a_i
    ineqs.push_back({scale(to_qvec(t.rays[i]), Rat(-1)), d.coeffs[i]});
  }
  try {
    return polytope_from_inequalities(t.rank, ineqs);
  } catch (const std::domain_error&) {
    throw std::domain_error("divisor not big / complete fan required");
  }
}

NormalizedDivisor normalize_on_chart(const ToricModel& t, const InvariantDivisor& d,
                                     const FlagChart& chart) {
  validate_chart(t, chart);
  QMat v = chart_matrix(t, chart);
  QVec rhs;
  for (int idx : chart.ordered_rays) rhs.push_back(-d.coeffs[idx]);
  auto u = solve(v, rhs);
  if (!u) throw std::logic_error("unimodular chart system must be solvable");
  NormalizedDivisor out;
  out.u = *u;
  out.divisor.coeffs.resize(t.rays.size());
  for (size_t i = 0; i < t.rays.size(); ++i)
    out.divisor.coeffs[i] = d.coeffs[i] + pair_ray(t.rays[i], *u);
  return out;
}

ToricBody toric_okounkov_body(const ToricModel& t, const InvariantDivisor& d,
                              const FlagChart& chart) {
  auto norm = normalize_on_chart(t, d, chart);
  Polytope p = divisor_polytope(t, norm.divisor);
  ToricBody out;
  out.big = p.full_dim();
  if (p.empty()) {
    out.body = p;
    return out;
  }
  out.body = linear_image(p, chart_matrix(t, chart));
  return out;
}

long long ehrhart_count(const ToricModel& t, const InvariantDivisor& d, long long m) {
  InvariantDivisor md;
  for (const auto& c : d.coeffs) md.coeffs.push_back(c * m);
  return static_cast<long long>(lattice_points(divisor_polytope(t, md)).size());
}

OrthantReport global_orthant_check(const ToricModel& t, const FlagChart& chart,
                                   const std::vector<InvariantDivisor>& samples) {
  validate_chart(t, chart);
  QMat v = chart_matrix(t, chart);
  OrthantReport rep;
  std::set<int> in_chart(chart.ordered_rays.begin(), chart.ordered_rays.end());

  for (const auto& e : samples) {
    OrthantSample s;
    s.divisor_coeffs = e.coeffs;
    s.effective = std::all_of(e.coeffs.begin(), e.coeffs.end(), [](const Rat& c) { return c >= 0; });

    // u with <u, v_i> = e_i on the chart rays
    QVec rhs;
    for (int idx : chart.ordered_rays) rhs.push_back(e.coeffs[idx]);
    auto u = solve(v, rhs);
    if (!u) throw std::logic_error("unimodular chart system must be solvable");

    // class coordinates: coefficients of E - div(chi^u) away from the chart
    QVec class_part;
    for (size_t i = 0; i < t.rays.size(); ++i)
      if (!in_chart.count(static_cast<int>(i)))
        class_part.push_back(e.coeffs[i] - pair_ray(t.rays[i], *u));

    // membership of (u, [E]) in the global cone, per the defining
    // semigroup: u must lie in the polytope of the normalized divisor
    InvariantDivisor normalized;
    normalized.coeffs.resize(t.rays.size());
    {
      size_t off = 0;
      for (size_t i = 0; i < t.rays.size(); ++i)
        normalized.coeffs[i] =
            in_chart.count(static_cast<int>(i)) ? Rat(0) : class_part[off++];
    }
    s.in_global_cone = true;
    for (size_t i = 0; i < t.rays.size(); ++i)
      if (pair_ray(t.rays[i], *u) < -normalized.coeffs[i]) s.in_global_cone = false;

    // the splitting recomposes E from (phi(u), class coordinates)
    {
      bool ok = true;
      for (size_t i = 0; i < t.rays.size(); ++i) {
        Rat rebuilt = pair_ray(t.rays[i], *u) + normalized.coeffs[i];
        if (rebuilt != e.coeffs[i]) ok = false;
      }
      s.splitting_consistent = ok;
    }

    // fiber of the global cone over the class vs the chart-mapped body
    Polytope pd = divisor_polytope(t, normalized);
    if (pd.full_dim()) {
      s.fiber_checked = true;
      std::vector<std::pair<QVec, Rat>> ineqs;
      auto vinv = inverse(v);
      if (!vinv) throw std::logic_error("chart matrix must be invertible");
      for (size_t i = 0; i < t.rays.size(); ++i) {
        // psi(x, c)_i = <V^{-1} x, v_i> + c_i >= 0
        QVec row(t.rank, Rat(0));
        for (int a = 0; a < t.rank; ++a) {
          Rat coef = 0;
          for (int b = 0; b < t.rank; ++b) coef += Rat(t.rays[i][b]) * (*vinv)[b][a];
          row[a] = -coef;
        }
        ineqs.push_back({row, normalized.coeffs[i]});
      }
      Polytope fiber = polytope_from_inequalities(t.rank, ineqs);
      ToricBody body = toric_okounkov_body(t, e, chart);
      s.fiber_matches = polytope_equals(fiber, body.body);
    }

    if (s.in_global_cone != s.effective || !s.splitting_consistent ||
        (s.fiber_checked && !s.fiber_matches))
      rep.all_consistent = false;
    rep.samples.push_back(std::move(s));
  }
  return rep;
}

}  // namespace okb
