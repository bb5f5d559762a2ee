#pragma once

#include <optional>

#include "riemann/equation.hpp"
#include "riemann/representation.hpp"

namespace riemann {

/// Outcome of the integrality test for hypergeometric monodromy.
struct Sl2zVerdict {
    bool in_sl2c = false;
    bool in_sl2z = false;
    std::optional<long> k;       // e^{2 pi i alpha} + e^{2 pi i beta} when integral
    Complex b{};                 // tr G_infinity - 2
    double k_distance = 0.0;     // distance of the trace sum to the nearest integer
    std::optional<CMat2> conjugator;
};

/// {gamma, alpha+beta} integral within tol (imaginary parts count).
bool sl2c_condition(const HypergeometricParams& h, double tol = 1e-9);

/// Adds the third condition e^{2 pi i alpha} + e^{2 pi i beta} integral; when
/// it holds the canonical unipotent pair is already integer and the identity
/// conjugator witnesses it.
Sl2zVerdict sl2z_criterion(const HypergeometricParams& h, double tol = 1e-9);

/// Integer conjugator for representations in the triangular normal forms:
/// reducible (one generator unipotent upper-triangular, one the identity) is
/// rescaled by diag(1/c, 1); irreducible (G1 lower-unipotent with parameter
/// d, G2 upper-unipotent with parameter c) by diag(d, 1), which succeeds
/// exactly when b = cd is an integer. Returns nothing when b is not integral;
/// throws std::invalid_argument when the generators match neither shape.
std::optional<CMat2> integer_conjugator(const MonodromyRep& rep, double tol = 1e-9);

/// The two-integer family with monodromy inside SL(2,Z):
/// alpha = log((k + sqrt(k^2-4))/2) / (2 pi i), beta = -alpha, gamma = l.
struct FamilyMember {
    long k, l;
    HypergeometricParams params;
    RiemannEquation equation;
};

FamilyMember enumerate_family(long k, long l);

}  // namespace riemann
