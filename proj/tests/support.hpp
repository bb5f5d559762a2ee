#pragma once

// Shared test helpers: an independent matrix exponential (scaling and
// squaring, used as the oracle against the eigendecomposition-based
// logarithm), and seeded random generators for property tests.

#include <cmath>
#include <random>

#include "riemann/equation.hpp"
#include "riemann/mat2.hpp"
#include "riemann/representation.hpp"

namespace testsup {

using riemann::CMat2;
using riemann::Complex;

/// exp(M) by scaling and squaring with a plain Taylor series; independent of
/// the eigenvalue-based code under test.
inline CMat2 expm2(const CMat2& m) {
    double n = m.max_norm();
    int s = 0;
    while (n > 0.25) {
        n /= 2.0;
        ++s;
    }
    Complex scale = 1.0 / std::pow(2.0, s);
    CMat2 a = scale * m;
    CMat2 term = CMat2::identity();
    CMat2 sum = CMat2::identity();
    for (int k = 1; k <= 24; ++k) {
        term = (Complex(1.0 / k) * term) * a;
        sum = sum + term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

struct Rng {
    std::mt19937_64 gen;
    explicit Rng(unsigned long long seed) : gen(seed) {}

    double uniform(double lo, double hi) {
        std::uniform_real_distribution<double> d(lo, hi);
        return d(gen);
    }
    Complex box(double r) { return {uniform(-r, r), uniform(-r, r)}; }

    CMat2 matrix(double r = 2.0) { return {box(r), box(r), box(r), box(r)}; }

    CMat2 invertible(double r = 2.0) {
        for (;;) {
            CMat2 m = matrix(r);
            if (std::abs(m.det()) > 0.1) return m;
        }
    }

    // conjugators for synthetic class representatives; keeps the Jordan/
    // diagonalizable distinction numerically sharp
    CMat2 well_conditioned() {
        for (;;) {
            CMat2 m = matrix(1.3);
            if (std::abs(m.det()) > 0.5) return m;
        }
    }

    CMat2 sl_matrix(double r = 1.5) {
        for (;;) {
            CMat2 m = matrix(r);
            Complex d = m.det();
            if (std::abs(d) < 0.1) continue;
            Complex scale = 1.0 / std::sqrt(d);
            return scale * m;
        }
    }
};

inline double dist_to_int(double x) { return std::abs(x - std::round(x)); }

/// Local exponent arguments separated from resonance and moderate moduli,
/// so eigenvalue-law and conjugacy tolerances are meaningful.
inline bool safe_band(const riemann::MonodromyRep& rep, double margin = 0.05) {
    for (int i = 0; i < 3; ++i) {
        riemann::NormalizedLog nl = riemann::normalized_log(rep.g[i]);
        if (std::abs(nl.rho.first.imag()) > 0.22 || std::abs(nl.rho.second.imag()) > 0.22)
            return false;
        if (riemann::nearly_scalar(rep.g[i])) continue;  // equal pair, nothing to separate
        Complex d = nl.rho.first - nl.rho.second;
        if (dist_to_int(d.real()) < margin && std::abs(d.imag()) < margin) return false;
    }
    return true;
}

inline riemann::Divisor default_divisor() {
    return riemann::Divisor(riemann::SpherePoint::finite(-1.0),
                            riemann::SpherePoint::finite(1.0),
                            riemann::SpherePoint::infinity());
}

inline riemann::MonodromyRep random_irreducible(Rng& rng, bool sl = false) {
    for (;;) {
        CMat2 g1 = sl ? rng.sl_matrix() : rng.invertible(1.2);
        CMat2 g2 = sl ? rng.sl_matrix() : rng.invertible(1.2);
        riemann::MonodromyRep rep = riemann::make_rep(g1, g2, default_divisor());
        if (riemann::classify(rep).tag != riemann::RepTag::Irreducible) continue;
        if (!safe_band(rep)) continue;
        return rep;
    }
}

/// Simultaneously diagonal triple without a scalar generator.
inline riemann::MonodromyRep random_decomposable_no_scalar(Rng& rng) {
    for (;;) {
        CMat2 v = rng.well_conditioned();
        Complex a1 = std::exp(rng.box(0.9)), b1 = std::exp(rng.box(0.9));
        Complex a2 = std::exp(rng.box(0.9)), b2 = std::exp(rng.box(0.9));
        if (std::abs(a1 - b1) < 0.2 || std::abs(a2 - b2) < 0.2) continue;
        if (std::abs(a1 * a2 - b1 * b2) < 0.2) continue;  // G3 must not be scalar
        CMat2 g1 = v * CMat2::diag(a1, b1) * v.inverse();
        CMat2 g2 = v * CMat2::diag(a2, b2) * v.inverse();
        return riemann::make_rep(g1, g2, default_divisor());
    }
}

/// Decomposable with a scalar generator (the scalar sits at the third point).
inline riemann::MonodromyRep random_decomposable_scalar(Rng& rng, bool sl = false) {
    for (;;) {
        CMat2 v = rng.well_conditioned();
        Complex a1 = std::exp(rng.box(0.8)), b1 = std::exp(rng.box(0.8));
        if (sl) b1 = 1.0 / a1;
        if (std::abs(a1 - b1) < 0.2) continue;
        Complex c = sl ? Complex{1.0} : std::exp(rng.box(0.8));  // G3 = (1/c) I
        Complex a2 = c / a1, b2 = c / b1;
        CMat2 g1 = v * CMat2::diag(a1, b1) * v.inverse();
        CMat2 g2 = v * CMat2::diag(a2, b2) * v.inverse();
        riemann::MonodromyRep rep = riemann::make_rep(g1, g2, default_divisor());
        if (!safe_band(rep, 0.03)) continue;
        return rep;
    }
}

/// All three generators are Jordan blocks sharing one eigenvector.
inline riemann::MonodromyRep random_all_jordan(Rng& rng) {
    for (;;) {
        Complex l1 = std::exp(rng.box(0.5)), l2 = std::exp(rng.box(0.5));
        Complex c1 = rng.box(1.5), c2 = rng.box(1.5);
        if (std::abs(l2 * c1 + l1 * c2) < 0.2) continue;  // keeps G3 non-diagonalizable
        CMat2 g1{l1, c1, 0.0, l1};
        CMat2 g2{l2, c2, 0.0, l2};
        CMat2 v = rng.well_conditioned();
        CMat2 vi = v.inverse();
        return riemann::make_rep(v * g1 * vi, v * g2 * vi, default_divisor());
    }
}

/// Reducible, not decomposable, with at least one diagonalizable generator.
inline riemann::MonodromyRep random_indecomposable_diagonalizable(Rng& rng) {
    for (;;) {
        Complex l1 = std::exp(rng.box(0.8)), m1 = std::exp(rng.box(0.8));
        if (std::abs(l1 - m1) < 0.25) continue;
        Complex l2 = std::exp(rng.box(0.8)), m2 = std::exp(rng.box(0.8));
        CMat2 g1{l1, 0.0, 0.0, m1};
        CMat2 g2{l2, rng.uniform(0.4, 1.5), 0.0, m2};
        CMat2 v = rng.well_conditioned();
        CMat2 vi = v.inverse();
        riemann::MonodromyRep rep = riemann::make_rep(v * g1 * vi, v * g2 * vi, default_divisor());
        if (riemann::classify(rep).tag != riemann::RepTag::IndecomposableDiagonalizable)
            continue;
        if (!safe_band(rep)) continue;
        return rep;
    }
}

/// Exponent table with fractional parts drawn uniformly, integer parts in
/// [-3,3], and the last entry forced so the sum is exactly 1.
inline riemann::ExponentTable random_admissible_table(Rng& rng) {
    riemann::ExponentTable t;
    Complex sum = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) {
            if (i == 2 && j == 1) break;
            double phi = std::floor(rng.uniform(-3.0, 4.0));
            Complex rho = {rng.uniform(0.0, 1.0), rng.uniform(-0.3, 0.3)};
            t.beta[i][j] = phi + rho;
            sum += t.beta[i][j];
        }
    t.beta[2][1] = 1.0 - sum;
    return t;
}

/// Like random_admissible_table but with small integer parts and mild
/// imaginary parts, the regime actual witnesses live in; keeps transport
/// conditioning moderate.
inline riemann::ExponentTable tame_admissible_table(Rng& rng) {
    for (;;) {
        riemann::ExponentTable t;
        Complex sum = 0.0;
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 2; ++j) {
                if (i == 2 && j == 1) break;
                double phi = std::floor(rng.uniform(-1.0, 2.0));
                Complex rho = {rng.uniform(0.0, 1.0), rng.uniform(-0.12, 0.12)};
                t.beta[i][j] = phi + rho;
                sum += t.beta[i][j];
            }
        t.beta[2][1] = 1.0 - sum;
        if (std::abs(t.beta[2][1].real()) > 2.5 || std::abs(t.beta[2][1].imag()) > 0.15)
            continue;
        return t;
    }
}

inline riemann::Divisor random_divisor(Rng& rng, bool with_infinity) {
    for (;;) {
        Complex a = rng.box(2.0), b = rng.box(2.0), c = rng.box(2.0);
        if (std::abs(a - b) < 0.5 || std::abs(a - c) < 0.5 || std::abs(b - c) < 0.5) continue;
        if (with_infinity)
            return riemann::Divisor(riemann::SpherePoint::finite(a),
                                    riemann::SpherePoint::finite(b),
                                    riemann::SpherePoint::infinity());
        return riemann::Divisor(riemann::SpherePoint::finite(a), riemann::SpherePoint::finite(b),
                                riemann::SpherePoint::finite(c));
    }
}

}  // namespace testsup
