// Monomial and general linear series on projective space under the
// lexicographic flag valuation, the lattice-body realization of convex
// bodies, and monomial-ideal colengths and multiplicities via Newton
// polyhedra.
#pragma once

#include <map>
#include <optional>
#include <vector>

#include "okb/polytope.hpp"

namespace okb {

struct Monomial {
  std::vector<long long> exponents;  // (a_0, ..., a_d), all >= 0
  long long degree() const {
    long long s = 0;
    for (long long e : exponents) s += e;
    return s;
  }
};

// nu(T_0^{a_0} ... T_d^{a_d}) = (a_1, ..., a_d).
std::vector<long long> lex_valuation(const Monomial& m);

// All monomials of exact degree m in d+1 variables, ordered by increasing
// lexicographic valuation. This is the column order used by
// GeneralSubspace coefficient matrices.
std::vector<Monomial> degree_monomials(int proj_dim, long long m);

// A linear subspace of the degree-m forms on P^d, as a coefficient matrix
// whose rows span the subspace and whose columns follow degree_monomials.
struct GeneralSubspace {
  int proj_dim = 0;
  long long degree = 0;
  QMat coefficients;
};

// Valuation vectors arising from nonzero elements of the subspace: the
// pivot-column valuations after row reduction in valuation order. The
// size of the image equals the rank of the subspace.
std::vector<std::vector<long long>> subspace_valuation_image(const GeneralSubspace& w);

// Monomial graded linear series: per degree m the set of dehomogenized
// exponent vectors v in N^d with |v| <= m (the monomial x^v T_0^{m-|v|}).
class MonomialSeries {
 public:
  // Verifies W_0 = {0} and sumset multiplicativity W_k + W_l <= W_{k+l}
  // for k + l <= min(max_degree, multiplicativity_check_limit).
  static MonomialSeries from_levels(int dim, std::map<int, std::vector<std::vector<long long>>> levels,
                                    int max_degree, int multiplicativity_check_limit = 16);

  int dim() const { return dim_; }
  int max_degree() const { return max_degree_; }
  const std::vector<std::vector<long long>>& level(int m) const;
  const std::optional<Polytope>& source_body() const { return source_body_; }

 private:
  MonomialSeries() = default;
  int dim_ = 0;
  int max_degree_ = 0;
  std::map<int, std::vector<std::vector<long long>>> levels_;
  std::optional<Polytope> source_body_;

  friend MonomialSeries series_from_body(const Polytope& k, int max_degree);
};

// W_m = lattice points of m*K, for a rational body K with nonempty
// interior inside the standard simplex {xi_i >= 0, sum xi_i <= 1}.
MonomialSeries series_from_body(const Polytope& k, int max_degree);

struct SeriesBodyDiagnostics {
  bool subset_of_reference = false;
  bool contains_reference = false;
  // Exact lower bound on the Hausdorff distance (L-infinity metric):
  // the largest normalized facet violation in either direction.
  Rat facet_gap = 0;
};

struct SeriesBodyResult {
  Polytope body;
  bool exact = false;  // certified limit body (lattice snapshot of the source)
  std::optional<SeriesBodyDiagnostics> diagnostics;
};

// Hull of the scaled valuation sets up to m_max; exact when the series
// came from a body K and some m*K with m <= m_max is a lattice polytope.
SeriesBodyResult series_okounkov_body(const MonomialSeries& w, int m_max,
                                      const Polytope* reference = nullptr);

// ---- monomial ideals ----------------------------------------------------

using ExponentSet = std::vector<std::vector<long long>>;  // generators in N^d

// An ideal of K[x_1..x_d] generated by monomials is m-primary exactly
// when every axis carries a pure power generator.
bool ideal_is_m_primary(const ExponentSet& gens, int dim);

// Number of standard monomials (staircase complement). Throws
// std::domain_error when the ideal is not m-primary.
long long ideal_colength(const ExponentSet& gens, int dim);

// d! times the volume of the bounded complement of the Newton polyhedron
// in the positive orthant; exact rational.
Rat ideal_multiplicity(const ExponentSet& gens, int dim);

class MonomialIdealFamily {
 public:
  // Requires every ideal m-primary and a_k * a_l <= a_{k+l} for
  // k + l <= min(max_index, check_limit).
  static MonomialIdealFamily from_ideals(int dim, std::map<int, ExponentSet> ideals, int max_index,
                                         int check_limit = 16);
  int dim() const { return dim_; }
  int max_index() const { return max_index_; }
  const ExponentSet& ideal(int k) const;

 private:
  int dim_ = 0;
  int max_index_ = 0;
  std::map<int, ExponentSet> ideals_;
};

struct FamilySequences {
  // index m -> d! * colength(a_m) / m^d
  std::vector<std::pair<int, Rat>> colength_scaled;
  // index p -> e(a_p) / p^d
  std::vector<std::pair<int, Rat>> multiplicity_scaled;
};

FamilySequences family_multiplicity_check(const MonomialIdealFamily& f, int m_max);

}  // namespace okb
