#pragma once

#include <string>
#include <vector>

#include "riemann/mat2.hpp"
#include "riemann/sphere.hpp"

namespace riemann {

/// Ordered generator triple around the divisor points, G3*G2*G1 = I.
/// Loops wind counterclockwise once around their point; composition reads
/// right to left (G1 is continued first).
struct MonodromyRep {
    std::array<CMat2, 3> g;
    Divisor divisor;
};

/// G3 := (G2*G1)^{-1}; throws std::domain_error on a singular generator.
MonodromyRep make_rep(const CMat2& g1, const CMat2& g2, const Divisor& divisor);

/// Variant with an explicit third generator, validated against the product
/// relation within tol.
MonodromyRep make_rep(const CMat2& g1, const CMat2& g2, const CMat2& g3,
                      const Divisor& divisor, double tol = 1e-10);

enum class RepTag {
    Irreducible,
    Decomposable,
    IndecomposableDiagonalizable,
    AllJordan,
};

struct RepClass {
    RepTag tag;
    // Decomposable: indices (0-based) of the scalar generators, possibly empty.
    // IndecomposableDiagonalizable: indices of the diagonalizable generators.
    std::vector<int> indices;
};

RepClass classify(const MonodromyRep& rep);

/// Which structural theorem decides realizability for a class.
enum class RealizabilityCriterion {
    IrreducibleRank2,        // irreducible pairs are always realizable
    DiagonalNeedsScalar,     // decomposable: realizable iff a generator is scalar
    DiagonalizableSomewhere, // indecomposable with a diagonalizable generator
    JordanObstruction,       // no diagonalizable generator: never realizable
};

const char* criterion_name(RealizabilityCriterion c);

struct RealizabilityVerdict {
    bool realizable;
    RealizabilityCriterion citation;
    std::string detail;
};

RealizabilityVerdict is_realizable(const MonodromyRep& rep);

/// |det G_i - 1| <= tol for all three generators.
bool is_sl(const MonodromyRep& rep, double tol = 1e-9);

}  // namespace riemann
