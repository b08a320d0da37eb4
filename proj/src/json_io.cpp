#include "okb/json_io.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace okb {

namespace {

Int int_from_json(const Json& j) {
  if (j.is_string()) return Int(j.get<std::string>());
  if (j.is_number_integer()) return Int(j.get<long long>());
  throw std::invalid_argument("expected an integer (number or decimal string)");
}

long long ll_from_json(const Json& j) {
  return int_from_json(j).convert_to<long long>();
}

std::string approx_string(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

Json rat_to_json(const Rat& r) { return Json::array({num(r).str(), den(r).str()}); }

Rat rat_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw std::invalid_argument("rational must be [num, den]");
    Int n = int_from_json(j[0]), d = int_from_json(j[1]);
    if (d == 0) throw std::invalid_argument("zero denominator");
    return Rat(n, d);
  }
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long long>());
  throw std::invalid_argument("expected a rational");
}

Json qvec_to_json(const QVec& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(rat_to_json(c));
  return out;
}

QVec qvec_from_json(const Json& j) {
  QVec v;
  for (const auto& c : j) v.push_back(rat_from_json(c));
  return v;
}

Json zvec_to_json(const ZVec& v) {
  Json out = Json::array();
  for (const auto& c : v) out.push_back(c.str());
  return out;
}

Json polytope_to_json(const Polytope& p) {
  Json out;
  out["dim"] = p.dim;
  out["affine_dim"] = p.affine_dim;
  out["full_dim"] = p.full_dim();
  Json verts = Json::array();
  for (const auto& v : p.vertices) verts.push_back(qvec_to_json(v));
  out["vertices"] = verts;
  Json facets = Json::array();
  for (const auto& f : p.facets) {
    Json jf;
    jf["normal"] = zvec_to_json(f.normal);
    jf["offset"] = rat_to_json(f.offset);
    facets.push_back(jf);
  }
  out["facets"] = facets;
  Json eqs = Json::array();
  for (const auto& e : p.affine_hull) {
    Json je;
    je["normal"] = zvec_to_json(e.normal);
    je["value"] = rat_to_json(e.value);
    eqs.push_back(je);
  }
  out["affine_hull"] = eqs;
  return out;
}

Json cone_to_json(const PolyCone& c) {
  Json out;
  out["dim"] = c.dim;
  Json rays = Json::array();
  for (const auto& r : c.rays) rays.push_back(zvec_to_json(r));
  out["rays"] = rays;
  Json hs = Json::array();
  for (const auto& h : c.halfspaces) hs.push_back(zvec_to_json(h));
  out["halfspaces"] = hs;
  Json eqs = Json::array();
  for (const auto& e : c.equations) eqs.push_back(zvec_to_json(e));
  out["equations"] = eqs;
  return out;
}

GradedSemigroup semigroup_from_json(const Json& j) {
  int d = j.at("value_dim").get<int>();
  int r = j.value("grading_dim", 1);
  if (j.contains("generators")) {
    std::vector<LPoint> gens;
    for (const auto& g : j.at("generators")) {
      LPoint p;
      for (const auto& c : g) p.push_back(ll_from_json(c));
      gens.push_back(p);
    }
    return GradedSemigroup::from_generators(d, r, gens);
  }
  if (j.contains("slices")) {
    if (r != 1) throw std::invalid_argument("explicit slices require grading_dim 1");
    std::map<int, std::vector<LPoint>> slices;
    for (const auto& [key, arr] : j.at("slices").items()) {
      std::vector<LPoint> pts;
      for (const auto& q : arr) {
        LPoint p;
        for (const auto& c : q) p.push_back(ll_from_json(c));
        pts.push_back(p);
      }
      slices[std::stoi(key)] = pts;
    }
    return GradedSemigroup::from_slices(d, slices, j.at("max_degree").get<int>());
  }
  throw std::invalid_argument("semigroup needs \"generators\" or \"slices\"");
}

Json admissibility_to_json(const AdmissibilityReport& r) {
  Json out;
  out["has_zero"] = r.has_zero;
  out["is_bounded"] = r.is_bounded;
  out["bound"] = rat_to_json(r.bound);
  out["bound_is_certified"] = r.bound_is_certified;
  out["generates_full_group"] = r.generates_full_group;
  out["admissible"] = r.ok();
  return out;
}

ToricModel toric_from_json(const Json& j) {
  int rank = j.at("rank").get<int>();
  std::vector<ZVec> rays;
  for (const auto& r : j.at("rays")) {
    ZVec v;
    for (const auto& c : r) v.push_back(int_from_json(c));
    rays.push_back(v);
  }
  std::vector<std::vector<int>> cones;
  for (const auto& c : j.at("max_cones")) cones.push_back(c.get<std::vector<int>>());
  return make_toric_model(rank, rays, cones);
}

FlagChart chart_from_json(const Json& j) {
  FlagChart chart;
  chart.ordered_rays = j.get<std::vector<int>>();
  return chart;
}

InvariantDivisor divisor_from_json(const Json& j) {
  InvariantDivisor d;
  d.coeffs = qvec_from_json(j);
  return d;
}

SurfaceModel surface_from_json(const Json& j) {
  int rank = j.at("rank").get<int>();
  QMat form;
  for (const auto& row : j.at("Q")) form.push_back(qvec_from_json(row));
  QVec h = qvec_from_json(j.at("h"));
  std::string mode = j.at("mode").get<std::string>();
  std::vector<QVec> curves;
  if (j.contains("curves"))
    for (const auto& c : j.at("curves")) curves.push_back(qvec_from_json(c));
  if (mode == "quadric")
    return make_surface_model(rank, form, h, SurfaceMode::Quadric, curves);
  if (mode == "curves")
    return make_surface_model(rank, form, h, SurfaceMode::NegativeCurves, curves);
  throw std::invalid_argument("mode must be \"quadric\" or \"curves\"");
}

FlagData flag_from_json(const Json& j, const SurfaceModel& s) {
  FlagData f;
  f.curve = qvec_from_json(j.at("curve"));
  if (j.contains("point_multiplicities"))
    for (const auto& [key, v] : j.at("point_multiplicities").items()) {
      int idx = std::stoi(key);
      if (idx < 0 || idx >= static_cast<int>(s.curves.size()))
        throw std::invalid_argument("multiplicity refers to an unknown curve");
      f.point_multiplicities[idx] = ll_from_json(v);
    }
  return f;
}

Json mu_to_json(const MuResult& mu) {
  Json out;
  if (mu.value.is_rational()) {
    out["kind"] = "rational";
    out["value"] = rat_to_json(mu.value.as_rational());
  } else {
    out["kind"] = "quadratic";
    out["quadratic"] = {{"a", rat_to_json(mu.quad_a)},
                        {"b", rat_to_json(mu.quad_b)},
                        {"c", rat_to_json(mu.quad_c)}};
    out["root"] = "smallest beyond the final chamber start";
    out["approx"] = approx_string(mu.value.approx());
    out["approx_is_inexact"] = true;
  }
  return out;
}

Json body_to_json(const SurfaceBody& b) {
  Json out;
  out["a"] = rat_to_json(b.a);
  out["mu"] = mu_to_json(b.mu);
  Json alpha = Json::array(), beta = Json::array();
  for (const auto& p : b.pieces) {
    alpha.push_back({{"t0", rat_to_json(p.t0)},
                     {"slope", rat_to_json(p.alpha_slope)},
                     {"intercept", rat_to_json(p.alpha_icept)}});
    beta.push_back({{"t0", rat_to_json(p.t0)},
                    {"slope", rat_to_json(p.beta_slope)},
                    {"intercept", rat_to_json(p.beta_icept)}});
  }
  out["alpha"] = alpha;
  out["beta"] = beta;
  return out;
}

MonomialIdealFamily family_from_json(const Json& j) {
  int d = j.at("vars").get<int>();
  std::map<int, ExponentSet> ideals;
  int max_index = 0;
  for (const auto& [key, arr] : j.at("ideals").items()) {
    int k = std::stoi(key);
    ExponentSet gens;
    for (const auto& g : arr) {
      std::vector<long long> e;
      for (const auto& c : g) e.push_back(ll_from_json(c));
      gens.push_back(e);
    }
    ideals[k] = gens;
    max_index = std::max(max_index, k);
  }
  return MonomialIdealFamily::from_ideals(d, ideals, max_index);
}

ExponentSet exponents_from_json(const Json& j, int dim) {
  ExponentSet out;
  for (const auto& g : j) {
    std::vector<long long> e;
    for (const auto& c : g) e.push_back(ll_from_json(c));
    if (static_cast<int>(e.size()) != dim) throw std::invalid_argument("exponent dimension mismatch");
    out.push_back(e);
  }
  return out;
}

std::vector<QVec> polygon_cycle(const Polytope& p) {
  if (p.dim != 2) throw std::invalid_argument("polygon output requires dimension 2");
  std::vector<QVec> verts = p.vertices;
  if (verts.size() <= 2) return verts;
  // exact counterclockwise order around the lowest-then-leftmost vertex
  auto lowest = std::min_element(verts.begin(), verts.end(), [](const QVec& a, const QVec& b) {
    if (a[1] != b[1]) return a[1] < b[1];
    return a[0] < b[0];
  });
  QVec base = *lowest;
  verts.erase(lowest);
  std::sort(verts.begin(), verts.end(), [&](const QVec& a, const QVec& b) {
    Rat cross = (a[0] - base[0]) * (b[1] - base[1]) - (a[1] - base[1]) * (b[0] - base[0]);
    if (cross != 0) return cross > 0;
    // collinear: nearer first
    Rat da = (a[0] - base[0]) * (a[0] - base[0]) + (a[1] - base[1]) * (a[1] - base[1]);
    Rat db = (b[0] - base[0]) * (b[0] - base[0]) + (b[1] - base[1]) * (b[1] - base[1]);
    return da < db;
  });
  verts.insert(verts.begin(), base);
  return verts;
}

std::string polygon_csv(const Polytope& p) {
  std::ostringstream os;
  os << "x,y\n";
  for (const auto& v : polygon_cycle(p)) os << rat_str(v[0]) << "," << rat_str(v[1]) << "\n";
  return os.str();
}

std::string polygon_svg(const Polytope& p) {
  auto cyc = polygon_cycle(p);
  double minx = 0, miny = 0, maxx = 1, maxy = 1;
  bool first = true;
  for (const auto& v : cyc) {
    double x = static_cast<double>(v[0]), y = static_cast<double>(v[1]);
    if (first) {
      minx = maxx = x;
      miny = maxy = y;
      first = false;
    }
    minx = std::min(minx, x);
    maxx = std::max(maxx, x);
    miny = std::min(miny, y);
    maxy = std::max(maxy, y);
  }
  double w = std::max(maxx - minx, 1e-9), h = std::max(maxy - miny, 1e-9);
  double pad = 0.05 * std::max(w, h);
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << approx_string(minx - pad) << " "
     << approx_string(-(maxy + pad)) << " " << approx_string(w + 2 * pad) << " "
     << approx_string(h + 2 * pad) << "\">\n";
  os << "  <polygon points=\"";
  for (size_t i = 0; i < cyc.size(); ++i) {
    if (i) os << " ";
    os << approx_string(static_cast<double>(cyc[i][0])) << ","
       << approx_string(-static_cast<double>(cyc[i][1]));
  }
  os << "\" fill=\"#c8d8f0\" stroke=\"#203050\" stroke-width=\""
     << approx_string(0.01 * std::max(w, h)) << "\"/>\n</svg>\n";
  return os.str();
}

namespace {

Polytope rational_truncation(const SurfaceBody& b) {
  if (b.mu.value.is_rational()) return body_to_polytope(b);
  // largest breakpoint is always rational; fall back to it
  Rat cut = b.pieces.back().t0;
  return body_to_polytope(truncate_body(b, cut));
}

}  // namespace

std::string body_csv(const SurfaceBody& b) { return polygon_csv(rational_truncation(b)); }

std::string body_svg(const SurfaceBody& b) { return polygon_svg(rational_truncation(b)); }

}  // namespace okb
