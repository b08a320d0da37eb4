// okbody: command-line front end for the exact limit-body library.
// One job per invocation; inputs are JSON documents, outputs are JSON
// (plus CSV/SVG for two-dimensional bodies). Exit codes: 0 success,
// 2 validation error, 3 mathematical-hypothesis failure, 64 usage.
#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>

#include "okb/json_io.hpp"

namespace fs = std::filesystem;
using namespace okb;

namespace {

struct Job {
  std::string command;
  std::string input;
  std::string output;
  long long m_max = 0;
  long long p = 0;
  long long k = 0;
  std::string t;  // rational, parsed on demand
  long long box = 0;
  long long grid = 50;
  std::string format = "json";
  std::string schema;
};

Json read_input(const Job& job) {
  if (job.input.empty()) throw std::invalid_argument("--input is required for this command");
  std::ifstream in(job.input);
  if (!in) throw std::invalid_argument("cannot open input file: " + job.input);
  Json j;
  in >> j;
  return j;
}

void write_file(const std::string& path, const std::string& payload) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::invalid_argument("cannot open output file: " + path);
  out << payload;
}

// Emit a result: JSON to --output (or stdout); CSV/SVG siblings for
// two-dimensional polygon data when available.
void emit(const Job& job, const Json& result, const std::string& csv = "",
          const std::string& svg = "") {
  std::string dumped = result.dump(2) + "\n";
  if (job.format == "csv" && !csv.empty()) {
    if (job.output.empty())
      std::cout << csv;
    else
      write_file(job.output, csv);
    return;
  }
  if (job.format == "svg" && !svg.empty()) {
    if (job.output.empty())
      std::cout << svg;
    else
      write_file(job.output, svg);
    return;
  }
  if (job.output.empty()) {
    std::cout << dumped;
    return;
  }
  write_file(job.output, dumped);
  if (!csv.empty() || !svg.empty()) {
    fs::path base(job.output);
    fs::path stem = base.parent_path() / base.stem();
    if (!csv.empty()) write_file(stem.string() + ".csv", csv);
    if (!svg.empty()) write_file(stem.string() + ".svg", svg);
  }
}

Rat opt_rat(const std::string& text, const char* what) {
  if (text.empty()) throw std::invalid_argument(std::string("--t is required for ") + what);
  return parse_rat(text);
}

int run_hull(const Job& job) {
  Json in = read_input(job);
  int dim = in.at("dim").get<int>();
  std::vector<QVec> pts;
  for (const auto& p : in.at("points")) pts.push_back(qvec_from_json(p));
  Polytope hull = convex_hull(pts, dim);
  Json out;
  out["polytope"] = polytope_to_json(hull);
  out["volume"] = rat_to_json(polytope_volume(hull));
  if (hull.dim == 2 && hull.affine_dim == 2)
    emit(job, out, polygon_csv(hull), polygon_svg(hull));
  else
    emit(job, out);
  return 0;
}

int run_semigroup_body(const Job& job) {
  if (job.m_max < 1) throw std::invalid_argument("--m-max must be at least 1");
  auto g = semigroup_from_json(read_input(job));
  auto body = okounkov_body(g, static_cast<int>(job.m_max));
  Json out;
  out["body"] = polytope_to_json(body.body);
  out["exact"] = body.exact;
  out["volume"] = rat_to_json(polytope_volume(body.body));
  if (body.body.dim == 2 && body.body.affine_dim == 2)
    emit(job, out, polygon_csv(body.body), polygon_svg(body.body));
  else
    emit(job, out);
  return 0;
}

int run_semigroup_density(const Job& job) {
  if (job.m_max < 1) throw std::invalid_argument("--m-max must be at least 1");
  auto g = semigroup_from_json(read_input(job));
  auto dens = density_sequence(g, static_cast<int>(job.m_max));
  Json out;
  Json seq = Json::array();
  for (const auto& [m, ratio] : dens.ratios) seq.push_back({{"m", m}, {"ratio", rat_to_json(ratio)}});
  out["ratios"] = seq;
  out["target_volume"] = rat_to_json(dens.target_volume);
  out["target_exact"] = dens.target_exact;
  emit(job, out);
  return 0;
}

int run_semigroup_fujita(const Job& job) {
  if (job.p < 1 || job.k < 1) throw std::invalid_argument("--p and --k must be at least 1");
  auto g = semigroup_from_json(read_input(job));
  Json out;
  out["count"] = fujita_sumset_count(g, job.p, job.k);
  out["ratio"] = rat_to_json(fujita_gap(g, job.p, job.k));
  out["p"] = job.p;
  out["k"] = job.k;
  emit(job, out);
  return 0;
}

int run_semigroup_translate(const Job& job) {
  if (job.box < 1) throw std::invalid_argument("--box must be at least 1");
  auto g = semigroup_from_json(read_input(job));
  auto res = khovanskii_translate(g, job.box);
  Json out;
  out["box"] = res.box;
  out["verification"] = "box-limited";
  if (!res.z) {
    out["found"] = false;
    emit(job, out);
    throw std::domain_error("no translate found within the box");
  }
  out["found"] = true;
  Json z = Json::array();
  for (long long c : *res.z) z.push_back(c);
  out["z"] = z;
  emit(job, out);
  return 0;
}

int run_monomial_body(const Job& job) {
  if (job.m_max < 1) throw std::invalid_argument("--m-max must be at least 1");
  Json in = read_input(job);
  std::vector<QVec> pts;
  for (const auto& p : in.at("vertices")) pts.push_back(qvec_from_json(p));
  if (pts.empty()) throw std::invalid_argument("body needs vertices");
  Polytope k = convex_hull(pts, static_cast<int>(pts[0].size()));
  auto series = series_from_body(k, static_cast<int>(job.m_max));
  auto body = series_okounkov_body(series, static_cast<int>(job.m_max), &k);
  Json out;
  out["body"] = polytope_to_json(body.body);
  out["exact"] = body.exact;
  out["diagnostics"] = {{"subset_of_reference", body.diagnostics->subset_of_reference},
                        {"contains_reference", body.diagnostics->contains_reference},
                        {"facet_gap", rat_to_json(body.diagnostics->facet_gap)}};
  if (body.body.dim == 2 && body.body.affine_dim == 2)
    emit(job, out, polygon_csv(body.body), polygon_svg(body.body));
  else
    emit(job, out);
  return 0;
}

int run_monomial_mult(const Job& job) {
  Json in = read_input(job);
  Json out;
  if (in.contains("ideals")) {
    auto fam = family_from_json(in);
    int horizon = job.m_max > 0 ? static_cast<int>(job.m_max) : fam.max_index();
    auto seq = family_multiplicity_check(fam, horizon);
    Json colength = Json::array(), mult = Json::array();
    for (const auto& [m, v] : seq.colength_scaled)
      colength.push_back({{"m", m}, {"value", rat_to_json(v)}});
    for (const auto& [p, v] : seq.multiplicity_scaled)
      mult.push_back({{"p", p}, {"value", rat_to_json(v)}});
    out["colength_scaled"] = colength;
    out["multiplicity_scaled"] = mult;
  } else {
    int d = in.at("vars").get<int>();
    auto gens = exponents_from_json(in.at("generators"), d);
    out["colength"] = ideal_colength(gens, d);
    out["multiplicity"] = rat_to_json(ideal_multiplicity(gens, d));
  }
  emit(job, out);
  return 0;
}

int run_toric_body(const Job& job) {
  Json in = read_input(job);
  auto fan = toric_from_json(in.at("fan"));
  auto divisor = divisor_from_json(in.at("divisor"));
  auto chart = chart_from_json(in.at("chart"));
  auto body = toric_okounkov_body(fan, divisor, chart);
  if (!body.big) throw std::domain_error("divisor class is not big");
  Json out;
  out["body"] = polytope_to_json(body.body);
  out["volume"] = rat_to_json(polytope_volume(body.body));
  if (body.body.dim == 2)
    emit(job, out, polygon_csv(body.body), polygon_svg(body.body));
  else
    emit(job, out);
  return 0;
}

int run_toric_count(const Job& job) {
  if (job.m_max < 1) throw std::invalid_argument("--m-max must be at least 1");
  Json in = read_input(job);
  auto fan = toric_from_json(in.at("fan"));
  auto divisor = divisor_from_json(in.at("divisor"));
  Json counts = Json::array();
  for (long long m = 1; m <= job.m_max; ++m)
    counts.push_back({{"m", m}, {"count", ehrhart_count(fan, divisor, m)}});
  Json out;
  out["counts"] = counts;
  emit(job, out);
  return 0;
}

int run_surface_zariski(const Job& job) {
  Json in = read_input(job);
  auto model = surface_from_json(in.at("model"));
  QVec d = qvec_from_json(in.at("divisor"));
  auto z = zariski_decomposition(model, d);
  Json out;
  out["positive"] = qvec_to_json(z.positive);
  Json neg = Json::object();
  for (const auto& [j, c] : z.negative) neg[std::to_string(j)] = rat_to_json(c);
  out["negative"] = neg;
  out["big"] = z.big;
  out["volume"] = rat_to_json(z.big ? self_intersect(model, z.positive) : Rat(0));
  emit(job, out);
  return 0;
}

int run_surface_body(const Job& job) {
  Json in = read_input(job);
  auto model = surface_from_json(in.at("model"));
  QVec d = qvec_from_json(in.at("divisor"));
  auto flag = flag_from_json(in.at("flag"), model);
  auto body = okounkov_body_surface(model, d, flag);
  Json out = body_to_json(body);
  emit(job, out, body_csv(body), body_svg(body));
  return 0;
}

int run_surface_slice(const Job& job) {
  Json in = read_input(job);
  auto model = surface_from_json(in.at("model"));
  QVec d = qvec_from_json(in.at("divisor"));
  auto flag = flag_from_json(in.at("flag"), model);
  Rat t = opt_rat(job.t, "surface-slice");
  auto rep = slice_check(model, d, flag, t);
  Json out;
  out["t"] = rat_to_json(t);
  out["shifted_body_matches"] = rep.shifted_body_matches;
  out["fiber_matches"] = rep.fiber_matches;
  out["fiber"] = {{"alpha", rat_to_json(rep.fiber.alpha)}, {"beta", rat_to_json(rep.fiber.beta)}};
  emit(job, out);
  return 0;
}

int run_surface_derivative(const Job& job) {
  Json in = read_input(job);
  auto model = surface_from_json(in.at("model"));
  QVec d = qvec_from_json(in.at("divisor"));
  auto flag = flag_from_json(in.at("flag"), model);
  Json out;
  out["derivative"] = rat_to_json(volume_derivative(model, d, flag));
  auto interval = restricted_interval(model, d, flag);
  out["restricted_interval"] = {{"alpha", rat_to_json(interval.alpha)},
                                {"beta", rat_to_json(interval.beta)}};
  emit(job, out);
  return 0;
}

int run_cutkosky(const Job& job) {
  Json in = read_input(job);
  auto model = surface_from_json(in.at("model"));
  QVec a = qvec_from_json(in.at("A"));
  QVec b1 = qvec_from_json(in.at("B1"));
  QVec b2 = qvec_from_json(in.at("B2"));
  Rat t = job.t.empty() ? Rat(0) : parse_rat(job.t);
  auto mu = cutkosky_mu(model, a, b1, b2, t);
  Json out;
  out["t"] = rat_to_json(t);
  out["valid"] = mu.valid;
  if (mu.value.is_rational()) {
    out["mu"] = {{"kind", "rational"}, {"value", rat_to_json(mu.value.as_rational())}};
  } else {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", mu.value.approx());
    out["mu"] = {{"kind", "quadratic"}, {"approx", std::string(buf)}, {"approx_is_inexact", true}};
  }
  emit(job, out);
  return 0;
}

// Bundled data for the figure gallery: the quadric trapezoid, a chambered
// body with nonzero lower boundary, and the mu(t) sampling.
int run_gallery(const Job& job) {
  fs::path dir = job.output.empty() ? fs::path("gallery") : fs::path(job.output);
  fs::create_directories(dir);

  QMat q{{Rat(1), Rat(0), Rat(0)}, {Rat(0), Rat(-1), Rat(0)}, {Rat(0), Rat(0), Rat(-1)}};
  auto quadric = make_surface_model(3, q, {Rat(1), Rat(0), Rat(0)}, SurfaceMode::Quadric);
  FlagData flag{{Rat(2), Rat(1), Rat(1)}, {}};
  auto trapezoid = okounkov_body_surface(quadric, {Rat(3), Rat(1), Rat(0)}, flag);
  write_file((dir / "abelian_body.json").string(), body_to_json(trapezoid).dump(2) + "\n");
  write_file((dir / "abelian_body.csv").string(), body_csv(trapezoid));
  write_file((dir / "abelian_body.svg").string(), body_svg(trapezoid));

  std::vector<QVec> curves{{Rat(0), Rat(1), Rat(0)}, {Rat(0), Rat(0), Rat(1)},
                           {Rat(1), Rat(-1), Rat(-1)}};
  auto chambered = make_surface_model(3, q, {Rat(3), Rat(-1), Rat(-1)},
                                      SurfaceMode::NegativeCurves, curves);
  FlagData flag2{{Rat(2), Rat(-1), Rat(-1)}, {{0, 1}}};
  auto bent = okounkov_body_surface(chambered, {Rat(3), Rat(-1), Rat(-1)}, flag2);
  write_file((dir / "chambered_body.json").string(), body_to_json(bent).dump(2) + "\n");
  write_file((dir / "chambered_body.csv").string(), body_csv(bent));
  write_file((dir / "chambered_body.svg").string(), body_svg(bent));

  QVec a{Rat(3), Rat(1), Rat(1)}, b1{Rat(2), Rat(1), Rat(0)}, b2{Rat(2), Rat(0), Rat(1)};
  std::ostringstream csv;
  csv << "t,mu_approx\n";
  Json samples = Json::array();
  long long n = job.grid > 0 ? job.grid : 50;
  for (long long i = 0; i < n; ++i) {
    Rat t(i, 100);
    auto mu = cutkosky_mu(quadric, a, b1, b2, t);
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", mu.value.approx());
    csv << rat_str(t) << "," << buf << "\n";
    Json s;
    s["t"] = rat_to_json(t);
    s["mu_approx"] = std::string(buf);
    s["rational"] = mu.value.is_rational();
    if (mu.value.is_rational()) s["mu"] = rat_to_json(mu.value.as_rational());
    samples.push_back(s);
  }
  Json mu_json;
  mu_json["A"] = qvec_to_json(a);
  mu_json["B1"] = qvec_to_json(b1);
  mu_json["B2"] = qvec_to_json(b2);
  mu_json["samples"] = samples;
  write_file((dir / "cutkosky_mu.json").string(), mu_json.dump(2) + "\n");
  write_file((dir / "cutkosky_mu.csv").string(), csv.str());

  Json out;
  out["directory"] = dir.string();
  out["files"] = {"abelian_body.json",   "abelian_body.csv",   "abelian_body.svg",
                  "chambered_body.json", "chambered_body.csv", "chambered_body.svg",
                  "cutkosky_mu.json",    "cutkosky_mu.csv"};
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_validate(const Job& job) {
  Json in = read_input(job);
  Json checks = Json::array();
  bool valid = true;
  auto record = [&](const std::string& name, bool passed, const std::string& detail) {
    checks.push_back({{"name", name}, {"passed", passed}, {"detail", detail}});
    if (!passed) valid = false;
  };

  try {
    if (job.schema == "semigroup") {
      auto g = semigroup_from_json(in);
      record("construction", true, "");
      auto rep = check_admissibility(g);
      record("has_zero", rep.has_zero, "");
      record("bounded", rep.is_bounded, rat_str(rep.bound));
      record("generates_full_group", rep.generates_full_group, "");
      if (g.explicit_mode()) {
        std::string why;
        bool ok = check_additivity_full(g, &why);
        record("additivity", ok, why);
      }
    } else if (job.schema == "toric") {
      toric_from_json(in);
      record("construction", true, "");
    } else if (job.schema == "surface") {
      auto s = surface_from_json(in);
      record("construction", true, "");
      record("signature", true, "(1," + std::to_string(s.rank - 1) + ")");
    } else if (job.schema == "monomial-family") {
      family_from_json(in);
      record("construction", true, "");
    } else {
      throw std::invalid_argument("unknown schema: " + job.schema);
    }
  } catch (const std::exception& e) {
    record("construction", false, e.what());
  }

  Json out;
  out["valid"] = valid;
  out["checks"] = checks;
  emit(job, out);
  return 0;
}

int dispatch(const Job& job) {
  if (job.command == "hull") return run_hull(job);
  if (job.command == "semigroup-body") return run_semigroup_body(job);
  if (job.command == "semigroup-density") return run_semigroup_density(job);
  if (job.command == "semigroup-fujita") return run_semigroup_fujita(job);
  if (job.command == "semigroup-translate") return run_semigroup_translate(job);
  if (job.command == "monomial-body") return run_monomial_body(job);
  if (job.command == "monomial-mult") return run_monomial_mult(job);
  if (job.command == "toric-body") return run_toric_body(job);
  if (job.command == "toric-count") return run_toric_count(job);
  if (job.command == "surface-zariski") return run_surface_zariski(job);
  if (job.command == "surface-body") return run_surface_body(job);
  if (job.command == "surface-slice") return run_surface_slice(job);
  if (job.command == "surface-derivative") return run_surface_derivative(job);
  if (job.command == "cutkosky") return run_cutkosky(job);
  if (job.command == "gallery") return run_gallery(job);
  if (job.command == "validate") return run_validate(job);
  return 64;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Newton-Okounkov body computations"};
  app.require_subcommand(0, 1);

  Job job;
  const std::vector<std::string> commands{
      "hull",          "semigroup-body",    "semigroup-density", "semigroup-fujita",
      "semigroup-translate", "monomial-body", "monomial-mult",   "toric-body",
      "toric-count",   "surface-zariski",   "surface-body",      "surface-slice",
      "surface-derivative",  "cutkosky",      "gallery",         "validate"};
  for (const auto& name : commands) {
    auto* sub = app.add_subcommand(name);
    sub->add_option("--input", job.input);
    sub->add_option("--output", job.output);
    sub->add_option("--m-max", job.m_max);
    sub->add_option("--p", job.p);
    sub->add_option("--k", job.k);
    sub->add_option("--t", job.t);
    sub->add_option("--box", job.box);
    sub->add_option("--grid", job.grid);
    sub->add_option("--format", job.format)->check(CLI::IsMember({"json", "csv", "svg"}));
    sub->add_option("--schema", job.schema);
    sub->callback([&job, name]() { job.command = name; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "unknown or malformed command\n" << app.help() << "\n";
    return 64;
  }
  if (job.command.empty()) {
    std::cerr << app.help() << "\n";
    return 64;
  }

  try {
    return dispatch(job);
  } catch (const InadmissibleError& e) {
    Json err;
    err["error"] = {{"kind", "hypothesis"},
                    {"message", e.what()},
                    {"report", admissibility_to_json(e.report)}};
    std::cout << err.dump(2) << "\n";
    return 3;
  } catch (const std::domain_error& e) {
    Json err;
    err["error"] = {{"kind", "hypothesis"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 3;
  } catch (const std::invalid_argument& e) {
    Json err;
    err["error"] = {{"kind", "validation"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  } catch (const Json::exception& e) {
    Json err;
    err["error"] = {{"kind", "validation"}, {"message", e.what()}};
    std::cout << err.dump(2) << "\n";
    return 2;
  }
}
