#include "riemann/sl2z.hpp"

#include <cmath>
#include <stdexcept>

namespace riemann {

namespace {

double dist_to_integer(Complex x) {
    double r = x.real() - std::round(x.real());
    return std::hypot(r, x.imag());
}

Complex exp2pii(Complex a) { return std::exp(Complex(0.0, kTwoPi) * a); }

bool entry_near(Complex v, Complex w, double tol, double scale) {
    return std::abs(v - w) <= tol * (1.0 + scale);
}

bool is_upper_unipotent(const CMat2& g, double tol) {
    double s = g.max_norm();
    return entry_near(g(0, 0), 1.0, tol, s) && entry_near(g(1, 1), 1.0, tol, s) &&
           entry_near(g(1, 0), 0.0, tol, s);
}

bool is_lower_unipotent(const CMat2& g, double tol) {
    double s = g.max_norm();
    return entry_near(g(0, 0), 1.0, tol, s) && entry_near(g(1, 1), 1.0, tol, s) &&
           entry_near(g(0, 1), 0.0, tol, s);
}

bool is_identity(const CMat2& g, double tol) {
    return max_diff(g, CMat2::identity()) <= tol * (1.0 + g.max_norm());
}

}  // namespace

bool sl2c_condition(const HypergeometricParams& h, double tol) {
    return dist_to_integer(h.gamma) <= tol && dist_to_integer(h.alpha + h.beta) <= tol;
}

Sl2zVerdict sl2z_criterion(const HypergeometricParams& h, double tol) {
    Sl2zVerdict v;
    v.in_sl2c = sl2c_condition(h, tol);
    Complex trace_sum = exp2pii(h.alpha) + exp2pii(h.beta);
    v.b = trace_sum - 2.0;
    v.k_distance = dist_to_integer(trace_sum);
    v.in_sl2z = v.in_sl2c && v.k_distance <= tol;
    if (v.in_sl2z) {
        v.k = static_cast<long>(std::llround(trace_sum.real()));
        // The canonical unipotent pair [[1,0],[1,1]], [[1,b],[0,1]] is
        // already integral for integral b.
        v.conjugator = CMat2::identity();
    }
    return v;
}

std::optional<CMat2> integer_conjugator(const MonodromyRep& rep, double tol) {
    const CMat2& g0 = rep.g[0];
    const CMat2& g1 = rep.g[1];

    // Reducible form: one generator is the identity, the other an upper
    // unipotent with parameter c; rescale the off-diagonal to 1.
    bool id0 = is_identity(g0, tol), id1 = is_identity(g1, tol);
    if (id0 && id1) return CMat2::identity();
    if (id0 || id1) {
        const CMat2& other = id0 ? g1 : g0;
        if (!is_upper_unipotent(other, tol))
            throw std::invalid_argument("integer_conjugator: generators match no normal form");
        Complex c = other(0, 1);
        return CMat2::diag(1.0 / c, 1.0);
    }

    // Irreducible form: lower unipotent with parameter d against upper
    // unipotent with parameter c; diag(d,1) maps to [[1,0],[1,1]], [[1,cd],[0,1]],
    // integral exactly when b = cd is an integer.
    if (is_lower_unipotent(g0, tol) && is_upper_unipotent(g1, tol)) {
        Complex d = g0(1, 0);
        Complex c = g1(0, 1);
        if (std::abs(d) <= tol || std::abs(c) <= tol)
            throw std::invalid_argument("integer_conjugator: degenerate normal form");
        Complex b = c * d;
        if (dist_to_integer(b) > tol) return std::nullopt;
        return CMat2::diag(d, 1.0);
    }
    throw std::invalid_argument("integer_conjugator: generators match no normal form");
}

FamilyMember enumerate_family(long k, long l) {
    Complex kc(static_cast<double>(k), 0.0);
    Complex x = (kc + std::sqrt(kc * kc - 4.0)) / 2.0;
    Complex alpha = (k == 2) ? Complex{0.0} : normalized_log_scalar(x);
    HypergeometricParams params{alpha, -alpha, Complex(static_cast<double>(l), 0.0)};
    return FamilyMember{k, l, params, hypergeometric_equation(params)};
}

}  // namespace riemann
