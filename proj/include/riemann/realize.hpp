#pragma once

#include <optional>
#include <string>
#include <vector>

#include "riemann/continuation.hpp"
#include "riemann/equation.hpp"
#include "riemann/representation.hpp"

namespace riemann {

struct SearchConfig {
    long shear_bound = 4;       // bound on exponent integer parts
    double tol = 1e-8;          // conjugacy acceptance tolerance
    long max_candidates = 5000; // cap on the enumerated exponent tables
};

/// Ordered candidate exponent tables for a representation: fractional parts
/// from the normalized logarithms, integer parts enumerated by total size
/// subject to the Fuchs sum. `obstruction` is non-empty when the fractional
/// parts cannot reach sum 1 (then no table exists under this convention).
struct CandidateStream {
    std::vector<ExponentTable> tables;
    std::string obstruction;
};

CandidateStream candidate_exponents(const MonodromyRep& rep, const SearchConfig& cfg = {});

struct WitnessReport {
    double residual = 0.0;
    long candidates_tried = 0;
    double tol = 0.0;
};

/// Outcome of the inverse direction: a verified witness equation, a refusal
/// backed by a structural theorem, or an exhausted search (which is not a
/// non-realizability proof).
struct RealizationWitness {
    enum class Outcome { Realized, Refused, Exhausted };
    Outcome outcome = Outcome::Exhausted;

    std::optional<RiemannEquation> equation;  // Realized
    std::optional<CMat2> conjugator;          // S with S G_target S^{-1} = G_computed
    std::optional<RealizabilityVerdict> refusal;
    WitnessReport report;
    std::string note;
};

RealizationWitness realize_riemann(const MonodromyRep& rep, const SearchConfig& cfg = {});

/// Witness restricted to equations without first-derivative term; the
/// divisor is relocated so that the exceptional point sits at infinity.
/// Throws std::invalid_argument when the representation is not in SL(2,C).
RealizationWitness realize_rsl(const MonodromyRep& rep, const SearchConfig& cfg = {});

struct VerifyReport {
    bool ok = false;
    double residual = 0.0;
    std::optional<CMat2> conjugator;
    std::string detail;
};

/// Recomputes the witness monodromy at a tighter tolerance and re-derives
/// the conjugator against rep. Trace invariants are compared first.
VerifyReport verify_witness(const RealizationWitness& w, const MonodromyRep& rep, double tol);

}  // namespace riemann
