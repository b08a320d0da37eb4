// Smooth projective toric data: divisor polytopes, chart normalization,
// limit bodies through the chart map, Ehrhart counts, and the orthant
// description of the global body under the Picard splitting of a chart.
#pragma once

#include <vector>

#include "okb/polytope.hpp"

namespace okb {

struct ToricModel {
  int rank = 0;                             // lattice rank d
  std::vector<ZVec> rays;                   // primitive generators
  std::vector<std::vector<int>> max_cones;  // ray index sets, each of size d
};

// Validates primitivity and that every listed maximal cone is simplicial
// (d rays) and unimodular; rejects singular fans with a specific error.
ToricModel make_toric_model(int rank, std::vector<ZVec> rays,
                            std::vector<std::vector<int>> max_cones);

struct InvariantDivisor {
  QVec coeffs;  // one per ray: D = sum a_i D_i (rational allowed)
};

// A maximal cone with an ordering of its rays; the flag is the chain of
// intersections of the corresponding invariant divisors.
struct FlagChart {
  std::vector<int> ordered_rays;  // d ray indices forming a listed maximal cone
};

void validate_chart(const ToricModel& t, const FlagChart& chart);

// P_D = {u : <u, v_i> >= -a_i}. Unbounded input raises
// "divisor not big / complete fan required"; an empty polytope is legal.
Polytope divisor_polytope(const ToricModel& t, const InvariantDivisor& d);

struct NormalizedDivisor {
  InvariantDivisor divisor;  // D + div(chi^u), zero on the chart rays
  QVec u;                    // the translating character
};

// The unique linearly equivalent divisor vanishing on the chart cone.
NormalizedDivisor normalize_on_chart(const ToricModel& t, const InvariantDivisor& d,
                                     const FlagChart& chart);

struct ToricBody {
  Polytope body;
  bool big = false;  // full-dimensional divisor polytope
};

// The limit body of the divisor class: the chart map applied to the
// normalized divisor polytope.
ToricBody toric_okounkov_body(const ToricModel& t, const InvariantDivisor& d,
                              const FlagChart& chart);

// #(P_{mD} cap M) = h^0(mD) on a smooth complete toric model.
long long ehrhart_count(const ToricModel& t, const InvariantDivisor& d, long long m);

struct OrthantSample {
  QVec divisor_coeffs;
  bool effective = false;       // all coefficients >= 0
  bool in_global_cone = false;  // membership computed on the semigroup side
  bool splitting_consistent = false;
  bool fiber_checked = false;   // only for big classes
  bool fiber_matches = false;
};

struct OrthantReport {
  std::vector<OrthantSample> samples;
  bool all_consistent = true;  // in_global_cone == effective throughout
};

// Executable form of the orthant description of the global body: for each
// sample divisor E, membership of Phi^{-1}(E) in the global cone (checked
// against the divisor-polytope definition) must agree with effectivity,
// and the cone fiber over a big class must equal its limit body.
OrthantReport global_orthant_check(const ToricModel& t, const FlagChart& chart,
                                   const std::vector<InvariantDivisor>& samples);

}  // namespace okb
