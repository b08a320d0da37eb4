// Graded sub-semigroups of N^{d+r}: degree slices, admissibility checks,
// limit bodies, density and sumset (Fujita-type) sequences, translate
// certificates, and ray-fiber comparisons against the spanned cone.
//
// Elements are lattice points (value in N^d, grading in N^r) stored as
// 64-bit coordinates; all derived geometry is exact rational. Slice
// enumeration memoizes lower degrees behind a mutex, so values are safe
// to share across threads.
#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "okb/cone.hpp"
#include "okb/polytope.hpp"

namespace okb {

using LPoint = std::vector<long long>;  // lattice point, coordinates >= 0

struct AdmissibilityReport {
  bool has_zero = false;             // the degree-0 slice is exactly {0}
  bool is_bounded = false;           // some b bounds every coordinate by b*degree
  Rat bound = 0;                     // a valid b when is_bounded
  bool bound_is_certified = true;    // false for explicit sources (finite horizon)
  bool generates_full_group = false; // the generated group is all of Z^{d+r}
  bool ok() const { return has_zero && is_bounded && generates_full_group; }
};

struct InadmissibleError : std::domain_error {
  AdmissibilityReport report;
  explicit InadmissibleError(AdmissibilityReport r)
      : std::domain_error("semigroup does not satisfy the admissibility conditions"), report(r) {}
};

class GradedSemigroup {
 public:
  // Semigroup generated by finitely many elements of N^{d+r}; the last r
  // coordinates of each generator are its multidegree.
  static GradedSemigroup from_generators(int value_dim, int grading_dim,
                                         std::vector<LPoint> generators);

  // Semigroup given by explicit slices (r = 1): degree -> set of N^d
  // points, up to a declared maximal degree. Additivity
  // slice(k) + slice(l) <= slice(k+l) is verified on construction for
  // k + l <= min(max_degree, additivity_check_limit); the CLI validator
  // re-runs the full check on demand.
  static GradedSemigroup from_slices(int value_dim, std::map<int, std::vector<LPoint>> slices,
                                     int max_degree, int additivity_check_limit = 20);

  int value_dim() const { return value_dim_; }
  int grading_dim() const { return grading_dim_; }
  bool has_generators() const { return !generators_.empty() || !explicit_mode_; }
  bool explicit_mode() const { return explicit_mode_; }
  int max_degree() const { return max_degree_; }
  const std::vector<LPoint>& generators() const { return generators_; }

  // Degree slice as a subset of N^d, sorted lexicographically. Generator
  // sources enumerate by a bounded knapsack with memoization; explicit
  // sources beyond their declared range raise "degree out of range".
  std::vector<LPoint> slice(long long m) const;

  // r >= 2: slice over a full multidegree.
  std::vector<LPoint> multi_slice(const LPoint& degree) const;

  // Rays of the closure cone in R^{d+1} when a constructor knows them
  // (e.g. the curve model); empty otherwise.
  const std::vector<LPoint>& known_closure_rays() const { return closure_rays_; }

 private:
  GradedSemigroup() = default;
  int value_dim_ = 0;
  int grading_dim_ = 1;
  bool explicit_mode_ = false;
  std::vector<LPoint> generators_;               // (value, grading) rows
  std::map<int, std::vector<LPoint>> explicit_;  // degree -> sorted points
  int max_degree_ = 0;
  std::vector<LPoint> closure_rays_;

  struct Memo {
    std::mutex mutex;
    std::map<LPoint, std::vector<LPoint>> slices;
  };
  std::shared_ptr<Memo> memo_ = std::make_shared<Memo>();

  friend GradedSemigroup curve_semigroup(long long c, long long g, int max_degree);
};

AdmissibilityReport check_admissibility(const GradedSemigroup& g);

struct BodyResult {
  Polytope body;
  bool exact = false;
};

// The limit body: for generator sources the exact height-1 slice of the
// spanned cone; for explicit sources the hull of the scaled slices up to
// m_max (exact only when closure rays are known).
BodyResult okounkov_body(const GradedSemigroup& g, int m_max);

struct DensityResult {
  std::vector<std::pair<long long, Rat>> ratios;  // (m, #slice(m)/m^d)
  Rat target_volume;
  bool target_exact;
};
DensityResult density_sequence(const GradedSemigroup& g, int m_max);

// #(k-fold sumset of slice(p)) / (k^d p^d).
Rat fujita_gap(const GradedSemigroup& g, long long p, long long k);
// The raw sumset count, for oracle-style checks.
long long fujita_sumset_count(const GradedSemigroup& g, long long p, long long k);

struct TranslateResult {
  std::optional<LPoint> z;
  long long box = 0;  // verification is exhaustive within [0, box]^k only
};

// Smallest (lexicographic) z in [0, box]^k such that every integer point
// of z + cone(generators) inside the box belongs to the semigroup.
// Requires a generator source whose group is all of Z^k.
TranslateResult khovanskii_translate(const GradedSemigroup& g, long long box);

// Re-checks the translate inclusion for a given z within the box.
bool khovanskii_verify(const GradedSemigroup& g, const LPoint& z, long long box);

enum class FiberOutcome { Equal, NotEqual, HypothesisNotMet };

struct FiberCheckResult {
  FiberOutcome outcome;
  PolyCone fiber_cone;   // cone spanned by the enumerated fiber, in R^{d+1}
  PolyCone sliced_cone;  // the spanned cone met with R^d x R.a, same coords
  bool fiber_empty = false;
};

// Compares the cone of the fiber semigroup over N.a with the slice of the
// full cone, enumerating fiber points with grading j*a for j <= box.
// When a is not interior to the support cone the hypothesis is reported
// as not met (the equality may then genuinely fail).
FiberCheckResult ray_fiber_check(const GradedSemigroup& g, const LPoint& a, long long box);

// The graded semigroup {(0,0)} u {(k,m) : m >= 1, 0 <= k <= m*c - g} of a
// degree-c divisor on a genus-g curve; requires c >= 2g + 1.
GradedSemigroup curve_semigroup(long long c, long long g, int max_degree = 60);

// Full additivity scan of an explicit-slice semigroup (used by `validate`).
bool check_additivity_full(const GradedSemigroup& g, std::string* first_failure = nullptr);

}  // namespace okb
