#pragma once

#include <json.hpp>

#include "riemann/continuation.hpp"
#include "riemann/equation.hpp"
#include "riemann/realize.hpp"
#include "riemann/representation.hpp"
#include "riemann/sl2z.hpp"

namespace riemann {

// Wire formats: complex numbers as [re, im]; 2x2 matrices as row-major
// four-element arrays of complex; divisor points as [re, im] or "inf".
using Json = nlohmann::ordered_json;

Json complex_to_json(Complex z);
Complex complex_from_json(const Json& j);

Json mat_to_json(const CMat2& m);
CMat2 mat_from_json(const Json& j);

Json point_to_json(const SpherePoint& p);
SpherePoint point_from_json(const Json& j);

Json divisor_to_json(const Divisor& d);
Divisor divisor_from_json(const Json& j);

Json table_to_json(const ExponentTable& t);
ExponentTable table_from_json(const Json& j);

/// { "divisor": [...], "exponents": [[b,b],[b,b],[b,b]], "resonant": bool };
/// coefficients are always rebuilt from the exponents.
Json equation_to_json(const RiemannEquation& eq);
RiemannEquation equation_from_json(const Json& j);

/// { "divisor": [...], "G1": m, "G2": m, "G3": m }; G3 recomputed if absent.
Json rep_to_json(const MonodromyRep& rep);
MonodromyRep rep_from_json(const Json& j);

Json classification_to_json(const RepClass& cls, const RealizabilityVerdict& verdict);

Json monodromy_to_json(const NumericMonodromy& nm);

Json witness_to_json(const RealizationWitness& w);

Json sl2z_verdict_to_json(const Sl2zVerdict& v);

Json family_member_to_json(const FamilyMember& m);

}  // namespace riemann
