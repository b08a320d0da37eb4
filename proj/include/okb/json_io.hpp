// JSON (de)serialization for every model the CLI accepts, plus CSV and
// SVG emission for two-dimensional bodies. Rationals travel as
// [numerator, denominator] pairs of decimal strings; outputs are
// deterministic (sorted keys, canonical vertex order).
#pragma once

#include <json.hpp>
#include <string>

#include "okb/cone.hpp"
#include "okb/monomial.hpp"
#include "okb/polytope.hpp"
#include "okb/semigroup.hpp"
#include "okb/surface.hpp"
#include "okb/toric.hpp"

namespace okb {

using Json = nlohmann::json;

Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json qvec_to_json(const QVec& v);
QVec qvec_from_json(const Json& j);
Json zvec_to_json(const ZVec& v);

Json polytope_to_json(const Polytope& p);
Json cone_to_json(const PolyCone& c);

GradedSemigroup semigroup_from_json(const Json& j);
Json admissibility_to_json(const AdmissibilityReport& r);

ToricModel toric_from_json(const Json& j);
FlagChart chart_from_json(const Json& j);
InvariantDivisor divisor_from_json(const Json& j);

SurfaceModel surface_from_json(const Json& j);
FlagData flag_from_json(const Json& j, const SurfaceModel& s);
Json mu_to_json(const MuResult& mu);
Json body_to_json(const SurfaceBody& b);

MonomialIdealFamily family_from_json(const Json& j);
ExponentSet exponents_from_json(const Json& j, int dim);

// Boundary vertices of a 2-dimensional polytope in counterclockwise
// order, exactly.
std::vector<QVec> polygon_cycle(const Polytope& p);

std::string polygon_csv(const Polytope& p);
std::string polygon_svg(const Polytope& p);

// Rational polygon form of a body; irrational endpoints are truncated at
// the largest breakpoint-aligned rational and flagged in the caption.
std::string body_csv(const SurfaceBody& b);
std::string body_svg(const SurfaceBody& b);

}  // namespace okb
