#include "okb/surface.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace okb {

namespace {

QVec sub_scaled(const QVec& a, const QVec& b, const Rat& s) {
  QVec r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - s * b[i];
  return r;
}

struct SymbolicChamber {
  std::vector<int> support;       // curve indices with coefficients n(t) = n0 + t*n1
  QVec n0, n1;                    // aligned with support
  QVec p0, p1;                    // P(t) = p0 + t*p1
  std::optional<Rat> valid_until; // first support change (relative t); none = stable
};

const int kPivotCap = 128;

}  // namespace

SurfaceModel make_surface_model(int rank, QMat form, QVec ample, SurfaceMode mode,
                                std::vector<QVec> curves) {
  if (static_cast<int>(form.size()) != rank) throw std::invalid_argument("form size mismatch");
  for (const auto& row : form)
    if (static_cast<int>(row.size()) != rank) throw std::invalid_argument("form row mismatch");
  for (int i = 0; i < rank; ++i)
    for (int j = i + 1; j < rank; ++j)
      if (form[i][j] != form[j][i]) throw std::invalid_argument("intersection form not symmetric");
  Signature sig = symmetric_signature(form);
  if (sig.positive != 1 || sig.negative != rank - 1 || sig.zero != 0)
    throw std::invalid_argument("intersection form does not have signature (1, rank-1)");

  SurfaceModel s;
  s.rank = rank;
  s.form = std::move(form);
  s.ample = std::move(ample);
  s.mode = mode;
  if (static_cast<int>(s.ample.size()) != rank)
    throw std::invalid_argument("reference class dimension mismatch");
  if (self_intersect(s, s.ample) <= 0)
    throw std::invalid_argument("reference class must have positive self-intersection");
  if (mode == SurfaceMode::NegativeCurves) {
    for (const auto& c : curves) {
      if (static_cast<int>(c.size()) != rank)
        throw std::invalid_argument("curve class dimension mismatch");
      if (intersect(s, s.ample, c) <= 0)
        throw std::invalid_argument("reference class must meet every listed curve positively");
    }
    s.curves = std::move(curves);
  } else if (!curves.empty()) {
    throw std::invalid_argument("quadric mode carries no curve list");
  }
  return s;
}

Rat intersect(const SurfaceModel& s, const QVec& a, const QVec& b) {
  Rat total = 0;
  for (int i = 0; i < s.rank; ++i)
    for (int j = 0; j < s.rank; ++j) total += a[i] * s.form[i][j] * b[j];
  return total;
}

ZariskiDecomposition zariski_decomposition(const SurfaceModel& s, const QVec& d) {
  ZariskiDecomposition z;
  if (s.mode == SurfaceMode::Quadric) {
    z.positive = d;
    z.big = self_intersect(s, d) > 0 && intersect(s, d, s.ample) > 0;
    return z;
  }

  int nc = static_cast<int>(s.curves.size());
  std::set<int> support;
  for (int j = 0; j < nc; ++j)
    if (intersect(s, d, s.curves[j]) < 0) support.insert(j);

  QVec coeffs;
  for (int round = 0; round <= nc + 1; ++round) {
    std::vector<int> sup(support.begin(), support.end());
    coeffs.assign(sup.size(), Rat(0));
    if (!sup.empty()) {
      QMat gram(sup.size(), QVec(sup.size()));
      QVec rhs(sup.size());
      for (size_t i = 0; i < sup.size(); ++i) {
        rhs[i] = intersect(s, d, s.curves[sup[i]]);
        for (size_t j = 0; j < sup.size(); ++j)
          gram[i][j] = intersect(s, s.curves[sup[i]], s.curves[sup[j]]);
      }
      if (rank(gram) != static_cast<int>(sup.size()))
        throw std::domain_error("model curves inconsistent");
      auto sol = solve(gram, rhs);
      if (!sol) throw std::domain_error("model curves inconsistent");
      coeffs = *sol;
    }
    QVec p = d;
    for (size_t i = 0; i < sup.size(); ++i) p = sub_scaled(p, s.curves[sup[i]], coeffs[i]);
    bool grew = false;
    for (int j = 0; j < nc; ++j) {
      if (support.count(j)) continue;
      if (intersect(s, p, s.curves[j]) < 0) {
        support.insert(j);
        grew = true;
      }
    }
    if (grew) continue;

    // verify the decomposition exactly
    if (!sup.empty()) {
      QMat gram(sup.size(), QVec(sup.size()));
      for (size_t i = 0; i < sup.size(); ++i)
        for (size_t j = 0; j < sup.size(); ++j)
          gram[i][j] = intersect(s, s.curves[sup[i]], s.curves[sup[j]]);
      Signature sig = symmetric_signature(gram);
      if (sig.negative != static_cast<int>(sup.size()))
        throw std::domain_error("model curves inconsistent");
    }
    for (const auto& c : coeffs)
      if (c < 0) throw std::domain_error("model curves inconsistent");
    for (size_t i = 0; i < sup.size(); ++i)
      if (intersect(s, p, s.curves[sup[i]]) != 0)
        throw std::domain_error("model curves inconsistent");
    if (self_intersect(s, p) < 0 || intersect(s, p, s.ample) < 0)
      throw std::domain_error("model curves inconsistent");

    z.positive = p;
    for (size_t i = 0; i < sup.size(); ++i)
      if (coeffs[i] > 0) z.negative[sup[i]] = coeffs[i];
    z.big = self_intersect(s, p) > 0 && intersect(s, p, s.ample) > 0;
    return z;
  }
  throw std::domain_error("model curves inconsistent");
}

bool is_big(const SurfaceModel& s, const QVec& d) {
  if (s.mode == SurfaceMode::Quadric)
    return self_intersect(s, d) > 0 && intersect(s, d, s.ample) > 0;
  return zariski_decomposition(s, d).big;
}

bool is_pseudoeffective(const SurfaceModel& s, const QVec& d) {
  if (s.mode == SurfaceMode::Quadric)
    return self_intersect(s, d) >= 0 && intersect(s, d, s.ample) >= 0;
  try {
    zariski_decomposition(s, d);
    return true;
  } catch (const std::domain_error&) {
    return false;
  }
}

VolumeResult surface_volume(const SurfaceModel& s, const QVec& d) {
  auto z = zariski_decomposition(s, d);
  VolumeResult out;
  out.big = z.big;
  out.value = z.big ? self_intersect(s, z.positive) : Rat(0);
  return out;
}

namespace {

// Symbolic decomposition of X + t*V for small t >= 0, found by pivoting
// from the static support at X. Throws "model curves inconsistent" when
// pivoting cycles.
SymbolicChamber chamber_piece(const SurfaceModel& s, const QVec& x, const QVec& v) {
  SymbolicChamber ch;
  if (s.mode == SurfaceMode::Quadric) {
    ch.p0 = x;
    ch.p1 = v;
    return ch;
  }
  auto z = zariski_decomposition(s, x);
  std::set<int> support;
  for (const auto& [j, c] : z.negative) support.insert(j);

  int nc = static_cast<int>(s.curves.size());
  for (int round = 0; round < kPivotCap; ++round) {
    std::vector<int> sup(support.begin(), support.end());
    QVec n0(sup.size(), Rat(0)), n1(sup.size(), Rat(0));
    if (!sup.empty()) {
      QMat gram(sup.size(), QVec(sup.size()));
      QVec rhs0(sup.size()), rhs1(sup.size());
      for (size_t i = 0; i < sup.size(); ++i) {
        rhs0[i] = intersect(s, x, s.curves[sup[i]]);
        rhs1[i] = intersect(s, v, s.curves[sup[i]]);
        for (size_t j = 0; j < sup.size(); ++j)
          gram[i][j] = intersect(s, s.curves[sup[i]], s.curves[sup[j]]);
      }
      if (rank(gram) != static_cast<int>(sup.size()))
        throw std::domain_error("model curves inconsistent");
      n0 = *solve(gram, rhs0);
      n1 = *solve(QMat(gram), rhs1);
    }
    QVec p0 = x, p1 = v;
    for (size_t i = 0; i < sup.size(); ++i) {
      p0 = sub_scaled(p0, s.curves[sup[i]], n0[i]);
      p1 = sub_scaled(p1, s.curves[sup[i]], n1[i]);
    }

    // first-order feasibility at t = 0+
    bool changed = false;
    for (size_t i = 0; i < sup.size() && !changed; ++i) {
      if (n0[i] < 0) throw std::domain_error("model curves inconsistent");
      if (n0[i] == 0 && n1[i] < 0) {
        support.erase(sup[i]);
        changed = true;
      }
    }
    for (int m = 0; m < nc && !changed; ++m) {
      if (support.count(m)) continue;
      Rat v0 = intersect(s, p0, s.curves[m]);
      Rat v1 = intersect(s, p1, s.curves[m]);
      if (v0 < 0 || (v0 == 0 && v1 < 0)) {
        support.insert(m);
        changed = true;
      }
    }
    if (changed) continue;

    ch.support = sup;
    ch.n0 = n0;
    ch.n1 = n1;
    ch.p0 = p0;
    ch.p1 = p1;
    // first support change: a coefficient or an excluded pairing hits zero
    std::optional<Rat> until;
    auto consider = [&](const Rat& val, const Rat& slope) {
      if (slope >= 0 || val < 0) return;
      Rat root = -val / slope;
      if (root > 0 && (!until || root < *until)) until = root;
    };
    for (size_t i = 0; i < sup.size(); ++i) consider(n0[i], n1[i]);
    for (int m = 0; m < nc; ++m) {
      if (support.count(m)) continue;
      consider(intersect(s, p0, s.curves[m]), intersect(s, p1, s.curves[m]));
    }
    ch.valid_until = until;
    return ch;
  }
  throw std::domain_error("model curves inconsistent");
}

struct SweepPiece {
  Rat t0;
  std::vector<int> support;
  QVec n0, n1;  // coefficients at absolute parameter: n(t) = n0 + t*n1
  QVec p0, p1;  // P(t) = p0 + t*p1
};

struct Sweep {
  std::vector<SweepPiece> pieces;
  MuResult mu;
};

// Chambers of D - t*C for t in [0, mu); assumes D big and C . h > 0.
Sweep run_sweep(const SurfaceModel& s, const QVec& d, const QVec& c) {
  if (intersect(s, c, s.ample) <= 0)
    throw std::domain_error("unbounded direction: flag class must meet the reference class");
  if (!is_big(s, d)) throw std::domain_error("divisor not big");

  Sweep sw;
  Rat t_cur = 0;
  QVec neg_c = scale(c, Rat(-1));
  for (int guard = 0; guard < 512; ++guard) {
    QVec x = sub_scaled(d, c, t_cur);
    SymbolicChamber ch = chamber_piece(s, x, neg_c);

    // absolute-parameter forms: value(t) = value0 + (t - t_cur)*value1
    SweepPiece piece;
    piece.t0 = t_cur;
    piece.support = ch.support;
    piece.n1 = ch.n1;
    piece.n0 = ch.n0;
    for (size_t i = 0; i < piece.n0.size(); ++i) piece.n0[i] -= t_cur * piece.n1[i];
    piece.p1 = ch.p1;
    piece.p0 = ch.p0;
    for (size_t i = 0; i < piece.p0.size(); ++i) piece.p0[i] -= t_cur * piece.p1[i];

    // end of bigness inside this chamber: q(P(t)) = 0 or P(t).h = 0
    Rat qa = self_intersect(s, piece.p1);
    Rat qb = 2 * intersect(s, piece.p0, piece.p1);
    Rat qc = self_intersect(s, piece.p0);
    std::optional<AlgReal> big_end;
    {
      // smallest root > t_cur of qa t^2 + qb t + qc = 0
      if (qa == 0) {
        if (qb != 0) {
          Rat root = -qc / qb;
          if (root > t_cur) big_end = AlgReal(root);
        }
      } else {
        Rat disc = qb * qb - 4 * qa * qc;
        if (disc >= 0) {
          AlgReal sq = AlgReal::sqrt_of(disc);
          AlgReal twoa = AlgReal(Rat(2) * qa);
          AlgReal r1 = (AlgReal(-qb) - sq) / twoa;
          AlgReal r2 = (AlgReal(-qb) + sq) / twoa;
          if (r1 > r2) std::swap(r1, r2);
          AlgReal tc{t_cur};
          if (r1 > tc)
            big_end = r1;
          else if (r2 > tc)
            big_end = r2;
        }
      }
      Rat h0 = intersect(s, piece.p0, s.ample);
      Rat h1 = intersect(s, piece.p1, s.ample);
      if (h1 < 0) {
        Rat root = -h0 / h1;
        if (root > t_cur && (!big_end || AlgReal(root) < *big_end)) big_end = AlgReal(root);
      }
    }

    std::optional<Rat> wall;
    if (ch.valid_until) wall = t_cur + *ch.valid_until;

    sw.pieces.push_back(piece);
    if (big_end && (!wall || *big_end <= AlgReal(*wall))) {
      sw.mu.value = *big_end;
      sw.mu.from_quadratic = !sw.mu.value.is_rational();
      sw.mu.quad_a = qa;
      sw.mu.quad_b = qb;
      sw.mu.quad_c = qc;
      return sw;
    }
    if (!wall) throw std::domain_error("unbounded direction");
    t_cur = *wall;
  }
  throw std::domain_error("model curves inconsistent");
}

}  // namespace

MuResult mu_invariant(const SurfaceModel& s, const QVec& d, const QVec& c) {
  if (s.mode == SurfaceMode::Quadric) {
    if (self_intersect(s, c) < 0 || intersect(s, c, s.ample) <= 0)
      throw std::invalid_argument("flag class must be pseudo-effective in the quadric model");
    if (!is_big(s, d)) throw std::domain_error("divisor not big");
    Rat qa = self_intersect(s, c);
    Rat qb = -2 * intersect(s, d, c);
    Rat qc = self_intersect(s, d);
    MuResult mu;
    mu.quad_a = qa;
    mu.quad_b = qb;
    mu.quad_c = qc;
    if (qa == 0) {
      if (qb >= 0) throw std::domain_error("unbounded direction");
      mu.value = AlgReal(-qc / qb);
    } else {
      Rat disc = qb * qb - 4 * qa * qc;
      if (disc < 0) throw std::domain_error("unbounded direction");
      mu.value = (AlgReal(-qb) - AlgReal::sqrt_of(disc)) / AlgReal(Rat(2) * qa);
    }
    mu.from_quadratic = !mu.value.is_rational();
    if (mu.value.sign() <= 0) throw std::domain_error("divisor not big");
    return mu;
  }
  return run_sweep(s, d, c).mu;
}

RestrictedInterval restricted_interval(const SurfaceModel& s, const QVec& d,
                                       const FlagData& flag) {
  auto z = zariski_decomposition(s, d);
  if (!z.big) throw std::domain_error("divisor not big");
  RestrictedInterval out;
  out.alpha = 0;
  for (const auto& [j, coeff] : z.negative) {
    if (s.curves[j] == flag.curve) throw std::domain_error("flag curve in B_+");
    auto it = flag.point_multiplicities.find(j);
    if (it != flag.point_multiplicities.end()) out.alpha += coeff * Rat(it->second);
  }
  out.beta = out.alpha + intersect(s, flag.curve, z.positive);
  return out;
}

Rat SurfaceBody::alpha(const Rat& t) const {
  const BodyPiece* best = &pieces.front();
  for (const auto& p : pieces)
    if (p.t0 <= t) best = &p;
  return best->alpha_slope * t + best->alpha_icept;
}

Rat SurfaceBody::beta(const Rat& t) const {
  const BodyPiece* best = &pieces.front();
  for (const auto& p : pieces)
    if (p.t0 <= t) best = &p;
  return best->beta_slope * t + best->beta_icept;
}

AlgReal SurfaceBody::alpha_end() const {
  const BodyPiece& p = pieces.back();
  return AlgReal(p.alpha_slope) * mu.value + AlgReal(p.alpha_icept);
}

AlgReal SurfaceBody::beta_end() const {
  const BodyPiece& p = pieces.back();
  return AlgReal(p.beta_slope) * mu.value + AlgReal(p.beta_icept);
}

AlgReal SurfaceBody::area() const {
  AlgReal total;
  for (size_t i = 0; i < pieces.size(); ++i) {
    const auto& p = pieces[i];
    AlgReal lo{p.t0};
    AlgReal hi = (i + 1 < pieces.size()) ? AlgReal(pieces[i + 1].t0) : mu.value;
    Rat ds = p.beta_slope - p.alpha_slope;
    Rat di = p.beta_icept - p.alpha_icept;
    // integral of ds*t + di over [lo, hi]
    AlgReal half(Rat(1, 2));
    total = total + AlgReal(ds) * half * (hi * hi - lo * lo) + AlgReal(di) * (hi - lo);
  }
  return total;
}

namespace {

void canonicalize_pieces(SurfaceBody& b) {
  std::vector<BodyPiece> out;
  for (const auto& p : b.pieces) {
    if (!out.empty()) {
      auto& last = out.back();
      if (last.alpha_slope == p.alpha_slope && last.alpha_icept == p.alpha_icept &&
          last.beta_slope == p.beta_slope && last.beta_icept == p.beta_icept)
        continue;  // same affine data: merge
      if (last.t0 == p.t0) {
        last = p;  // zero-length predecessor
        continue;
      }
    }
    out.push_back(p);
  }
  b.pieces = std::move(out);
}

void verify_body(const SurfaceBody& b) {
  // continuity, convexity of alpha, concavity of beta, alpha <= beta
  for (size_t i = 0; i + 1 < b.pieces.size(); ++i) {
    const auto& p = b.pieces[i];
    const auto& q = b.pieces[i + 1];
    Rat t = q.t0;
    if (p.alpha_slope * t + p.alpha_icept != q.alpha_slope * t + q.alpha_icept)
      throw std::logic_error("lower boundary discontinuous");
    if (p.beta_slope * t + p.beta_icept != q.beta_slope * t + q.beta_icept)
      throw std::logic_error("upper boundary discontinuous");
    if (p.alpha_slope > q.alpha_slope) throw std::logic_error("lower boundary not convex");
    if (p.beta_slope < q.beta_slope) throw std::logic_error("upper boundary not concave");
  }
  for (const auto& p : b.pieces) {
    Rat t = p.t0;
    if (p.alpha_slope * t + p.alpha_icept > p.beta_slope * t + p.beta_icept)
      throw std::logic_error("boundaries cross");
  }
  if (b.alpha_end() > b.beta_end()) throw std::logic_error("boundaries cross at the endpoint");
}

}  // namespace

SurfaceBody okounkov_body_surface(const SurfaceModel& s, const QVec& d, const FlagData& flag) {
  if (static_cast<int>(flag.curve.size()) != s.rank)
    throw std::invalid_argument("flag curve dimension mismatch");

  // left endpoint: the coefficient of the flag curve in the negative part
  Rat a = 0;
  QVec d_shift = d;
  if (s.mode == SurfaceMode::NegativeCurves) {
    auto z = zariski_decomposition(s, d);
    if (!z.big) throw std::domain_error("divisor not big");
    for (const auto& [j, coeff] : z.negative) {
      if (s.curves[j] == flag.curve) {
        a = coeff;
        d_shift = sub_scaled(d, flag.curve, a);
        auto z2 = zariski_decomposition(s, d_shift);
        for (const auto& [j2, c2] : z2.negative)
          if (s.curves[j2] == flag.curve) throw std::domain_error("model curves inconsistent");
        break;
      }
    }
  }

  SurfaceBody body;
  body.a = a;
  if (s.mode == SurfaceMode::Quadric) {
    if (self_intersect(s, flag.curve) < 0 || intersect(s, flag.curve, s.ample) <= 0)
      throw std::invalid_argument("flag class must be pseudo-effective in the quadric model");
    body.mu = mu_invariant(s, d, flag.curve);
    BodyPiece p;
    p.t0 = 0;
    p.alpha_slope = 0;
    p.alpha_icept = 0;
    p.beta_slope = -self_intersect(s, flag.curve);
    p.beta_icept = intersect(s, flag.curve, d);
    body.pieces = {p};
    verify_body(body);
    return body;
  }

  Sweep sw = run_sweep(s, d_shift, flag.curve);
  for (const auto& sp : sw.pieces) {
    BodyPiece p;
    p.t0 = sp.t0 + a;
    // alpha(t) = sum n_j(t - a) * mult_j ; beta = alpha + C . P(t - a)
    Rat as = 0, ai = 0;
    for (size_t i = 0; i < sp.support.size(); ++i) {
      auto it = flag.point_multiplicities.find(sp.support[i]);
      if (it == flag.point_multiplicities.end()) continue;
      Rat mult(it->second);
      as += sp.n1[i] * mult;
      ai += (sp.n0[i] - sp.n1[i] * a) * mult;  // reparametrized to absolute t
    }
    p.alpha_slope = as;
    p.alpha_icept = ai;
    Rat bs = intersect(s, flag.curve, sp.p1);
    Rat bi = intersect(s, flag.curve, sp.p0) - bs * a;
    p.beta_slope = as + bs;
    p.beta_icept = ai + bi;
    body.pieces.push_back(p);
  }
  body.mu = sw.mu;
  body.mu.value = body.mu.value + AlgReal(a);
  if (body.mu.from_quadratic) {
    // shift the chamber quadratic so that its variable is the absolute t
    Rat qa = body.mu.quad_a, qb = body.mu.quad_b, qc = body.mu.quad_c;
    body.mu.quad_a = qa;
    body.mu.quad_b = qb - 2 * qa * a;
    body.mu.quad_c = qa * a * a - qb * a + qc;
  }
  canonicalize_pieces(body);
  verify_body(body);
  return body;
}

bool surface_body_equals(const SurfaceBody& x, const SurfaceBody& y) {
  if (x.a != y.a) return false;
  if (x.mu.value != y.mu.value) return false;
  if (x.pieces.size() != y.pieces.size()) return false;
  for (size_t i = 0; i < x.pieces.size(); ++i) {
    const auto& p = x.pieces[i];
    const auto& q = y.pieces[i];
    if (p.t0 != q.t0 || p.alpha_slope != q.alpha_slope || p.alpha_icept != q.alpha_icept ||
        p.beta_slope != q.beta_slope || p.beta_icept != q.beta_icept)
      return false;
  }
  return true;
}

SurfaceBody scale_body(const SurfaceBody& b, const Rat& p) {
  if (p <= 0) throw std::invalid_argument("scale factor must be positive");
  SurfaceBody out;
  out.a = b.a * p;
  out.mu = b.mu;
  out.mu.value = AlgReal(p) * b.mu.value;
  // roots scale by p when t -> t/p in the quadratic
  out.mu.quad_a = b.mu.quad_a;
  out.mu.quad_b = b.mu.quad_b * p;
  out.mu.quad_c = b.mu.quad_c * p * p;
  for (const auto& piece : b.pieces) {
    BodyPiece q = piece;
    q.t0 = piece.t0 * p;
    q.alpha_icept = piece.alpha_icept * p;
    q.beta_icept = piece.beta_icept * p;
    out.pieces.push_back(q);
  }
  return out;
}

Polytope body_to_polytope(const SurfaceBody& b) {
  if (!b.mu.value.is_rational())
    throw std::domain_error("body has an irrational endpoint; truncate first");
  Rat mu = b.mu.value.as_rational();
  std::vector<QVec> pts;
  for (size_t i = 0; i < b.pieces.size(); ++i) {
    Rat t = b.pieces[i].t0;
    pts.push_back({t, b.alpha(t)});
    pts.push_back({t, b.beta(t)});
  }
  pts.push_back({mu, b.alpha_end().as_rational()});
  pts.push_back({mu, b.beta_end().as_rational()});
  return convex_hull(pts, 2);
}

SurfaceBody truncate_body(const SurfaceBody& b, const Rat& cut) {
  if (cut < b.a || AlgReal(cut) > b.mu.value)
    throw std::invalid_argument("truncation point outside the body");
  SurfaceBody out;
  out.a = b.a;
  out.mu.value = AlgReal(cut);
  out.mu.from_quadratic = false;
  for (const auto& p : b.pieces) {
    if (p.t0 >= cut) break;
    out.pieces.push_back(p);
  }
  canonicalize_pieces(out);
  verify_body(out);
  return out;
}

AlgReal body_support(const SurfaceBody& b, const Rat& ux, const Rat& uy) {
  std::optional<AlgReal> best;
  auto consider = [&](const AlgReal& t, const AlgReal& y) {
    AlgReal val = AlgReal(ux) * t + AlgReal(uy) * y;
    if (!best || val > *best) best = val;
  };
  for (const auto& p : b.pieces) {
    Rat t = p.t0;
    consider(AlgReal(t), AlgReal(b.alpha(t)));
    consider(AlgReal(t), AlgReal(b.beta(t)));
  }
  consider(b.mu.value, b.alpha_end());
  consider(b.mu.value, b.beta_end());
  return *best;
}

bool surface_bodies_subadditive(const SurfaceBody& a, const SurfaceBody& b,
                                const SurfaceBody& c) {
  // check h_A(u) + h_B(u) <= h_C(u) over the facet normals of C
  auto check = [&](const Rat& ux, const Rat& uy, const AlgReal& offset) {
    return body_support(a, ux, uy) + body_support(b, ux, uy) <= offset;
  };
  if (!check(-1, 0, AlgReal(-c.a))) return false;
  if (!check(1, 0, c.mu.value)) return false;
  for (const auto& p : c.pieces) {
    if (!check(-p.beta_slope, 1, AlgReal(p.beta_icept))) return false;
    if (!check(p.alpha_slope, -1, AlgReal(-p.alpha_icept))) return false;
  }
  return true;
}

namespace {

// Restriction {t >= cut} of a body, shifted nowhere: pieces clipped on the
// left. cut must be < mu.
SurfaceBody restrict_right(const SurfaceBody& b, const Rat& cut) {
  if (cut <= b.a) return b;
  SurfaceBody out;
  out.a = cut;
  out.mu = b.mu;
  for (size_t i = 0; i < b.pieces.size(); ++i) {
    const auto& p = b.pieces[i];
    Rat next_t0 = (i + 1 < b.pieces.size()) ? b.pieces[i + 1].t0 : Rat(0);
    bool has_next = i + 1 < b.pieces.size();
    if (has_next && next_t0 <= cut) continue;  // entirely left of the cut
    BodyPiece q = p;
    if (q.t0 < cut) q.t0 = cut;
    out.pieces.push_back(q);
  }
  canonicalize_pieces(out);
  return out;
}

SurfaceBody shift_body(const SurfaceBody& b, const Rat& t) {
  SurfaceBody out;
  out.a = b.a + t;
  out.mu = b.mu;
  out.mu.value = b.mu.value + AlgReal(t);
  if (out.mu.from_quadratic) {
    Rat qa = b.mu.quad_a, qb = b.mu.quad_b, qc = b.mu.quad_c;
    out.mu.quad_b = qb - 2 * qa * t;
    out.mu.quad_c = qa * t * t - qb * t + qc;
  }
  for (const auto& p : b.pieces) {
    BodyPiece q = p;
    q.t0 = p.t0 + t;
    q.alpha_icept = p.alpha_icept - p.alpha_slope * t;
    q.beta_icept = p.beta_icept - p.beta_slope * t;
    out.pieces.push_back(q);
  }
  return out;
}

}  // namespace

SliceCheckReport slice_check(const SurfaceModel& s, const QVec& d, const FlagData& flag,
                             const Rat& t) {
  if (t < 0) throw std::invalid_argument("negative slice parameter");
  SurfaceBody body = okounkov_body_surface(s, d, flag);
  if (AlgReal(t) >= body.mu.value) throw std::domain_error("slice parameter at or beyond mu");

  SliceCheckReport rep;
  QVec shifted_class = sub_scaled(d, flag.curve, t);
  SurfaceBody right = okounkov_body_surface(s, shifted_class, flag);
  rep.shifted_body_matches =
      surface_body_equals(restrict_right(body, t), shift_body(right, t));

  if (t >= body.a) {
    auto fiber = restricted_interval(s, shifted_class, flag);
    rep.fiber = fiber;
    rep.fiber_matches = body.alpha(t) == fiber.alpha && body.beta(t) == fiber.beta;
  } else {
    // below the left endpoint the fiber is empty and the flag curve sits
    // in the augmented base locus of the shifted class
    try {
      restricted_interval(s, shifted_class, flag);
      rep.fiber_matches = false;
    } catch (const std::domain_error&) {
      rep.fiber_matches = true;
    }
  }
  return rep;
}

Rat volume_derivative(const SurfaceModel& s, const QVec& d, const FlagData& flag) {
  auto interval = restricted_interval(s, d, flag);  // validates the hypotheses
  QVec plus_dir = flag.curve;
  QVec minus_dir = scale(flag.curve, Rat(-1));
  SymbolicChamber up = chamber_piece(s, d, plus_dir);
  SymbolicChamber down = chamber_piece(s, d, minus_dir);
  Rat d_plus = 2 * intersect(s, up.p0, up.p1);
  Rat d_minus = -2 * intersect(s, down.p0, down.p1);
  if (d_plus != d_minus) throw std::logic_error("volume not differentiable at the class");
  Rat expected = 2 * (interval.beta - interval.alpha);
  if (d_plus != expected)
    throw std::logic_error("derivative does not match the restricted interval");
  return d_plus;
}

GlobalProbeReport global_body_probe(const SurfaceModel& s, const FlagData& flag,
                                    const std::vector<QVec>& grid) {
  GlobalProbeReport rep;
  for (const auto& xi : grid) {
    if (!is_big(s, xi)) {
      rep.skipped.push_back(xi);
      continue;
    }
    rep.classes.push_back(xi);
    rep.bodies.push_back(okounkov_body_surface(s, xi, flag));
  }

  for (size_t i = 0; i < rep.classes.size(); ++i) {
    for (Rat p : {Rat(2), Rat(3)}) {
      QVec scaled_class = scale(rep.classes[i], p);
      SurfaceBody direct = okounkov_body_surface(s, scaled_class, flag);
      if (!surface_body_equals(direct, scale_body(rep.bodies[i], p))) rep.homogeneity = false;
    }
  }

  for (size_t i = 0; i < rep.classes.size(); ++i)
    for (size_t j = i; j < rep.classes.size(); ++j) {
      QVec sum = add(rep.classes[i], rep.classes[j]);
      SurfaceBody target = okounkov_body_surface(s, sum, flag);
      if (!surface_bodies_subadditive(rep.bodies[i], rep.bodies[j], target))
        rep.subadditive = false;
      AlgReal vi = AlgReal::sqrt_of(surface_volume(s, rep.classes[i]).value);
      AlgReal vj = AlgReal::sqrt_of(surface_volume(s, rep.classes[j]).value);
      AlgReal vs = AlgReal::sqrt_of(surface_volume(s, sum).value);
      if (vi + vj > vs) rep.log_concave = false;
    }

  for (size_t i = 0; i < rep.classes.size(); ++i) {
    const auto& body = rep.bodies[i];
    const auto& xi = rep.classes[i];
    // samples strictly below mu must stay pseudo-effective (they are big)
    Rat probe = body.mu.value.is_rational() ? body.mu.value.as_rational() : Rat(0);
    std::vector<Rat> samples;
    if (body.mu.value.is_rational()) {
      for (int k = 0; k <= 4; ++k) samples.push_back(probe * Rat(k, 4));
    } else {
      // rational points below an irrational mu
      Rat below = 0;
      while (AlgReal(below + 1) < body.mu.value) below += 1;
      for (int k = 0; k <= 4; ++k) samples.push_back(below * Rat(k, 4));
    }
    for (const auto& t : samples)
      if (!is_pseudoeffective(s, sub_scaled(xi, flag.curve, t))) rep.pseff_containment = false;
    if (body.mu.value.is_rational()) {
      if (!is_pseudoeffective(s, sub_scaled(xi, flag.curve, body.mu.value.as_rational())))
        rep.pseff_containment = false;
    } else {
      // the endpoint is the root of the chamber quadratic: verify exactly
      AlgReal m = body.mu.value;
      AlgReal residual =
          AlgReal(body.mu.quad_a) * m * m + AlgReal(body.mu.quad_b) * m + AlgReal(body.mu.quad_c);
      if (residual.sign() != 0) rep.pseff_containment = false;
    }
  }
  return rep;
}

CutkoskyMu cutkosky_mu(const SurfaceModel& s, const QVec& a, const QVec& b1, const QVec& b2,
                       const Rat& t) {
  if (s.mode != SurfaceMode::Quadric) throw std::invalid_argument("quadric model required");
  for (const QVec* cls : {&a, &b1, &b2})
    if (self_intersect(s, *cls) <= 0 || intersect(s, *cls, s.ample) <= 0)
      throw std::invalid_argument("classes must be ample in the quadric model");

  // xi(s') = xi0 - s' * w with xi0 = (1-t)A - tB2 and w = A + B1
  QVec xi0 = sub_scaled(scale(a, Rat(1) - t), b2, t);
  QVec w = add(a, b1);
  Rat qw = self_intersect(s, w);
  Rat qb = intersect(s, xi0, w);
  Rat qc = self_intersect(s, xi0);
  CutkoskyMu out;
  if (qc < 0 || intersect(s, xi0, s.ample) <= 0) {
    out.value = AlgReal(Rat(0));
    return out;
  }
  Rat disc = qb * qb - qc * qw;
  if (disc < 0) {
    out.value = AlgReal(Rat(0));
    return out;
  }
  out.value = (AlgReal(qb) - AlgReal::sqrt_of(disc)) / AlgReal(qw);
  out.valid = out.value.sign() > 0 || qc == 0;
  return out;
}

}  // namespace okb
