#include "riemann/representation.hpp"

#include <cmath>
#include <stdexcept>

namespace riemann {

namespace {

void require_invertible(const CMat2& g, const char* who) {
    if (!g.finite()) throw std::domain_error(std::string(who) + ": non-finite generator");
    if (std::abs(g.det()) <= 1e-14 * std::max(1.0, g.max_norm() * g.max_norm()))
        throw std::domain_error(std::string(who) + ": singular generator");
}

bool is_eigenvector(const CMat2& m, const CVec2& v, double tol) {
    CVec2 w = m * v;
    Complex cross = w.x * v.y - w.y * v.x;
    return std::abs(cross) <= tol * (1.0 + m.max_norm()) * v.max_norm() * v.max_norm();
}

std::vector<CVec2> eigenvectors_of(const CMat2& m, const EigenData& ed) {
    (void)m;
    std::vector<CVec2> out;
    out.push_back({ed.basis(0, 0), ed.basis(1, 0)});
    if (ed.diagonalizable) out.push_back({ed.basis(0, 1), ed.basis(1, 1)});
    return out;
}

constexpr double kVecTol = 1e-9;

}  // namespace

MonodromyRep make_rep(const CMat2& g1, const CMat2& g2, const Divisor& divisor) {
    require_invertible(g1, "make_rep");
    require_invertible(g2, "make_rep");
    CMat2 g3 = (g2 * g1).inverse();
    return MonodromyRep{{g1, g2, g3}, divisor};
}

MonodromyRep make_rep(const CMat2& g1, const CMat2& g2, const CMat2& g3,
                      const Divisor& divisor, double tol) {
    require_invertible(g1, "make_rep");
    require_invertible(g2, "make_rep");
    require_invertible(g3, "make_rep");
    CMat2 prod = g3 * g2 * g1;
    if (max_diff(prod, CMat2::identity()) > tol * (1.0 + prod.max_norm()))
        throw std::invalid_argument("make_rep: G3*G2*G1 is not the identity");
    return MonodromyRep{{g1, g2, g3}, divisor};
}

RepClass classify(const MonodromyRep& rep) {
    const CMat2& g1 = rep.g[0];
    const CMat2& g2 = rep.g[1];

    std::array<EigenData, 3> ed{eig2(rep.g[0]), eig2(rep.g[1]), eig2(rep.g[2])};
    std::array<bool, 3> scalar{}, diagable{};
    for (int i = 0; i < 3; ++i) {
        scalar[i] = nearly_scalar(rep.g[i]);
        diagable[i] = ed[i].diagonalizable;
    }

    // Common eigenvector of G1 and G2 (G3 = (G2 G1)^{-1} shares it).
    bool reducible;
    if (scalar[0]) {
        reducible = true;
    } else if (scalar[1]) {
        reducible = true;
    } else {
        reducible = false;
        for (const CVec2& v : eigenvectors_of(g1, ed[0]))
            if (is_eigenvector(g2, v, kVecTol)) reducible = true;
    }
    if (!reducible) return {RepTag::Irreducible, {}};

    // Decomposable: G1 and G2 simultaneously diagonalizable.
    bool decomposable = false;
    if (scalar[0] && scalar[1]) {
        decomposable = true;
    } else if (scalar[0]) {
        decomposable = diagable[1];
    } else if (scalar[1]) {
        decomposable = diagable[0];
    } else if (diagable[0] && diagable[1]) {
        decomposable = true;
        for (const CVec2& v : eigenvectors_of(g1, ed[0]))
            if (!is_eigenvector(g2, v, kVecTol)) decomposable = false;
    }
    if (decomposable) {
        std::vector<int> idx;
        for (int i = 0; i < 3; ++i)
            if (scalar[i]) idx.push_back(i);
        return {RepTag::Decomposable, idx};
    }

    std::vector<int> idx;
    for (int i = 0; i < 3; ++i)
        if (diagable[i]) idx.push_back(i);
    if (idx.empty()) return {RepTag::AllJordan, {}};
    return {RepTag::IndecomposableDiagonalizable, idx};
}

const char* criterion_name(RealizabilityCriterion c) {
    switch (c) {
        case RealizabilityCriterion::IrreducibleRank2: return "irreducible-rank-2";
        case RealizabilityCriterion::DiagonalNeedsScalar: return "diagonal-needs-scalar";
        case RealizabilityCriterion::DiagonalizableSomewhere:
            return "diagonalizable-at-a-point";
        case RealizabilityCriterion::JordanObstruction: return "jordan-obstruction";
    }
    return "unknown";
}

RealizabilityVerdict is_realizable(const MonodromyRep& rep) {
    RepClass cls = classify(rep);
    switch (cls.tag) {
        case RepTag::Irreducible:
            return {true, RealizabilityCriterion::IrreducibleRank2,
                    "irreducible pair: no common eigenvector of the generators"};
        case RepTag::Decomposable:
            if (!cls.indices.empty())
                return {true, RealizabilityCriterion::DiagonalNeedsScalar,
                        "simultaneously diagonal with a scalar generator"};
            return {false, RealizabilityCriterion::DiagonalNeedsScalar,
                    "simultaneously diagonal but no generator is scalar"};
        case RepTag::IndecomposableDiagonalizable:
            return {true, RealizabilityCriterion::DiagonalizableSomewhere,
                    "reducible indecomposable with a diagonalizable generator"};
        case RepTag::AllJordan:
            return {false, RealizabilityCriterion::JordanObstruction,
                    "every generator is a non-diagonalizable Jordan block"};
    }
    throw std::logic_error("is_realizable: unreachable");
}

bool is_sl(const MonodromyRep& rep, double tol) {
    for (const auto& g : rep.g)
        if (std::abs(g.det() - 1.0) > tol) return false;
    return true;
}

}  // namespace riemann
