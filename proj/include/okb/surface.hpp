// Surfaces with prescribed intersection theory: Zariski decompositions,
// mu-invariants, restricted intervals, two-coordinate limit bodies with
// piecewise-linear boundary data, slice and derivative identities, global
// probing over class grids, and the projective-bundle mu(t) scalar.
//
// Correctness is model-relative: decompositions search only the supplied
// curve list, and nefness means nonnegativity against the listed curves
// together with q(P) >= 0 and P.h >= 0.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "okb/algebraic.hpp"
#include "okb/linalg.hpp"
#include "okb/polytope.hpp"

namespace okb {

enum class SurfaceMode { Quadric, NegativeCurves };

struct SurfaceModel {
  int rank = 0;
  QMat form;                 // symmetric intersection matrix, signature (1, rank-1)
  QVec ample;                // reference class h with q(h) > 0 and h . C_j > 0
  SurfaceMode mode = SurfaceMode::Quadric;
  std::vector<QVec> curves;  // candidate negative curves (NegativeCurves mode)
};

// Validates symmetry, the exact (1, rank-1) signature, and positivity of
// the reference class.
SurfaceModel make_surface_model(int rank, QMat form, QVec ample, SurfaceMode mode,
                                std::vector<QVec> curves = {});

Rat intersect(const SurfaceModel& s, const QVec& a, const QVec& b);
inline Rat self_intersect(const SurfaceModel& s, const QVec& a) { return intersect(s, a, a); }

struct ZariskiDecomposition {
  QVec positive;
  std::map<int, Rat> negative;  // curve index -> coefficient (> 0 entries only)
  bool big = false;             // q(P) > 0 and P . h > 0
};

// Iterative decomposition against the model's curve list. Throws
// std::domain_error("model curves inconsistent") when the data admits no
// valid decomposition (singular or indefinite support Gram matrix,
// negative coefficients).
ZariskiDecomposition zariski_decomposition(const SurfaceModel& s, const QVec& d);

bool is_big(const SurfaceModel& s, const QVec& d);
bool is_pseudoeffective(const SurfaceModel& s, const QVec& d);

struct VolumeResult {
  Rat value;
  bool big = false;
};
VolumeResult surface_volume(const SurfaceModel& s, const QVec& d);

// Flag X > C > {x}: the class of C plus the local intersection
// multiplicities mult_x(C_j cap C). Missing entries mean a generic point
// (multiplicity zero).
struct FlagData {
  QVec curve;
  std::map<int, long long> point_multiplicities;
};

// Exact right endpoint data: the value, and when it arises as a root of a
// chamber quadratic a t^2 + b t + c (the volume polynomial), that
// quadratic with the chosen root.
struct MuResult {
  AlgReal value;
  bool from_quadratic = false;
  Rat quad_a, quad_b, quad_c;  // q(P(t)) on the final chamber
};

// sup { s > 0 : D - sC big }. In quadric mode the smallest positive root
// of q(D - tC); otherwise located by an exact chamber sweep.
MuResult mu_invariant(const SurfaceModel& s, const QVec& d, const QVec& c);

struct RestrictedInterval {
  Rat alpha, beta;
};

// [ord_x(N|_C), ord_x(N|_C) + C.P]; requires the flag curve outside the
// support of N ("flag curve in B_+" otherwise).
RestrictedInterval restricted_interval(const SurfaceModel& s, const QVec& d, const FlagData& flag);

// One linear piece of the body boundary, valid from t0 to the next piece
// (the last piece runs to mu).
struct BodyPiece {
  Rat t0;
  Rat alpha_slope, alpha_icept;
  Rat beta_slope, beta_icept;
};

struct SurfaceBody {
  Rat a = 0;  // left endpoint
  MuResult mu;
  std::vector<BodyPiece> pieces;  // nonempty, pieces[0].t0 == a

  Rat alpha(const Rat& t) const;
  Rat beta(const Rat& t) const;
  AlgReal alpha_end() const;  // value at mu
  AlgReal beta_end() const;
  AlgReal area() const;  // exact, in the field of mu
};

// The region {(t, y) : a <= t <= mu, alpha(t) <= y <= beta(t)}; alpha is
// convex and beta concave by construction (verified exactly).
SurfaceBody okounkov_body_surface(const SurfaceModel& s, const QVec& d, const FlagData& flag);

bool surface_body_equals(const SurfaceBody& x, const SurfaceBody& y);
SurfaceBody scale_body(const SurfaceBody& b, const Rat& p);
// Polygon form; requires a rational right endpoint.
Polytope body_to_polytope(const SurfaceBody& b);
// Truncation {t <= cut}; cut must satisfy a <= cut <= mu.
SurfaceBody truncate_body(const SurfaceBody& b, const Rat& cut);
// Exact support function max { ux*t + uy*y } over the body.
AlgReal body_support(const SurfaceBody& b, const Rat& ux, const Rat& uy);
// Minkowski subadditivity bodyA + bodyB inside bodyC, via the facet
// normals of bodyC (exact).
bool surface_bodies_subadditive(const SurfaceBody& a, const SurfaceBody& b, const SurfaceBody& c);

struct SliceCheckReport {
  bool shifted_body_matches = false;   // body cut at {t >= t0} vs shifted body of D - t0*C
  bool fiber_matches = false;          // [alpha(t0), beta(t0)] vs restricted interval
  RestrictedInterval fiber{};
};

// Exact verification of the slicing identities at a rational 0 <= t < mu.
SliceCheckReport slice_check(const SurfaceModel& s, const QVec& d, const FlagData& flag,
                             const Rat& t);

// Two-sided derivative of vol(D + tC) at t = 0, from the chamber
// quadratics on both sides; checked against 2 * (beta - alpha).
Rat volume_derivative(const SurfaceModel& s, const QVec& d, const FlagData& flag);

struct GlobalProbeReport {
  std::vector<QVec> classes;               // the big grid classes actually probed
  std::vector<QVec> skipped;               // non-big entries
  std::vector<SurfaceBody> bodies;
  bool homogeneity = true;                 // Delta(p xi) = p Delta(xi), p = 2, 3
  bool subadditive = true;                 // Delta(xi) + Delta(xi') <= Delta(xi + xi')
  bool log_concave = true;                 // vol^(1/2) superadditive
  bool pseff_containment = true;           // xi - t c pseudo-effective across [0, mu]
};

GlobalProbeReport global_body_probe(const SurfaceModel& s, const FlagData& flag,
                                    const std::vector<QVec>& grid);

struct CutkoskyMu {
  AlgReal value;
  bool valid = false;  // false when no positive s exists
};

// sup { s > 0 : q((1-t-s)A - tB2 - sB1) >= 0 } on a quadric model with
// ample A, B1, B2.
CutkoskyMu cutkosky_mu(const SurfaceModel& s, const QVec& a, const QVec& b1, const QVec& b2,
                       const Rat& t);

}  // namespace okb
