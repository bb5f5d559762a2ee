#include "riemann/equation.hpp"

#include <cmath>
#include <stdexcept>

namespace riemann {

namespace {

constexpr double kFuchsTol = 1e-9;
constexpr double kPoleTol = 1e-9;

bool cplx_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

double dist_to_integer(Complex x) {
    double r = x.real() - std::round(x.real());
    return std::hypot(r, x.imag());
}

std::pair<Complex, Complex> quadratic_roots(Complex b, Complex c) {
    // roots of t^2 + b t + c, ordered by (Re, Im)
    Complex disc = std::sqrt(b * b - 4.0 * c);
    Complex r1 = (-b + disc) / 2.0;
    Complex r2 = (-b - disc) / 2.0;
    if (std::abs(r1) > std::abs(r2) && std::abs(r1) > 0.0) r2 = c / r1;
    else if (std::abs(r2) > 0.0) r1 = c / r2;
    if (cplx_less(r2, r1)) std::swap(r1, r2);
    return {r1, r2};
}

}  // namespace

Complex ExponentTable::sum() const {
    Complex s = 0.0;
    for (const auto& row : beta) s += row[0] + row[1];
    return s;
}

std::pair<long, Complex> split_exponent(Complex beta) {
    long phi = static_cast<long>(std::floor(beta.real()));
    return {phi, beta - static_cast<double>(phi)};
}

ExponentSplit make_split(const ExponentTable& t) {
    ExponentSplit s;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 2; ++j) {
            auto [phi, rho] = split_exponent(t.beta[i][j]);
            s.phi[i][j] = phi;
            s.rho[i][j] = rho;
        }
    return s;
}

Complex fuchs_sum(const ExponentTable& t) { return t.sum(); }

bool fuchs_ok(const ExponentTable& t, double tol) {
    return std::abs(t.sum() - 1.0) <= tol;
}

Complex RiemannEquation::p(Complex z) const {
    Complex s = 0.0;
    for (int i : divisor.finite_indices()) s += p_res[i] / (z - divisor.points[i].z);
    return s;
}

Complex RiemannEquation::q(Complex z) const {
    auto fin = divisor.finite_indices();
    Complex num = q_const;
    Complex den = 1.0;
    for (int i : fin) {
        num += q_num[i] / (z - divisor.points[i].z);
        den *= z - divisor.points[i].z;
    }
    return num / den;
}

Complex RiemannEquation::p_residue_at(int i) const { return p_res[i]; }

Complex RiemannEquation::q_m2_at(int i) const {
    if (divisor.points[i].is_infinity)
        throw std::invalid_argument("q_m2_at: point at infinity");
    Complex a = divisor.points[i].z;
    Complex s = 1.0;
    for (int j : divisor.finite_indices())
        if (j != i) s *= a - divisor.points[j].z;
    return q_num[i] / s;
}

Complex RiemannEquation::q_m1_at(int i) const {
    if (divisor.points[i].is_infinity)
        throw std::invalid_argument("q_m1_at: point at infinity");
    Complex a = divisor.points[i].z;
    // F(z) = (z-a)^2 q(z) = [n_i + (z-a) R(z)] / S(z); return F'(a).
    Complex r = q_const, s = 1.0, sp = 0.0;
    for (int j : divisor.finite_indices()) {
        if (j == i) continue;
        Complex d = a - divisor.points[j].z;
        r += q_num[j] / d;
        sp = sp * d + s;
        s *= d;
    }
    return (r * s - q_num[i] * sp) / (s * s);
}

Complex RiemannEquation::p1_at_infinity() const {
    Complex s = 0.0;
    for (int i : divisor.finite_indices()) s += p_res[i];
    return s;
}

Complex RiemannEquation::q2_at_infinity() const {
    return divisor.infinity_index() ? q_const : Complex{0.0};
}

Complex RiemannEquation::q3_at_infinity() const {
    if (!divisor.infinity_index()) return 0.0;
    Complex s = 0.0, asum = 0.0;
    for (int i : divisor.finite_indices()) {
        s += q_num[i];
        asum += divisor.points[i].z;
    }
    return s + q_const * asum;
}

RiemannEquation build_equation(const Divisor& divisor, const ExponentTable& t) {
    if (std::abs(t.sum() - 1.0) > kFuchsTol)
        throw std::invalid_argument("build_equation: exponent sum is not 1");

    RiemannEquation eq{divisor, t};
    auto fin = divisor.finite_indices();
    auto inf = divisor.infinity_index();

    for (int i : fin) eq.p_res[i] = 1.0 - t.beta[i][0] - t.beta[i][1];

    if (inf) {
        // two finite points a, b: q numerators b1^1 b1^2 (a-b), b2^1 b2^2 (b-a),
        // constant term from the infinity exponents
        Complex a = divisor.points[fin[0]].z, b = divisor.points[fin[1]].z;
        eq.q_num[fin[0]] = t.beta[fin[0]][0] * t.beta[fin[0]][1] * (a - b);
        eq.q_num[fin[1]] = t.beta[fin[1]][0] * t.beta[fin[1]][1] * (b - a);
        eq.q_const = t.beta[*inf][0] * t.beta[*inf][1];
    } else {
        for (int i : fin) {
            Complex prod = 1.0;
            for (int j : fin)
                if (j != i) prod *= divisor.points[i].z - divisor.points[j].z;
            eq.q_num[i] = t.beta[i][0] * t.beta[i][1] * prod;
        }
        eq.q_const = 0.0;
    }

    eq.resonant = false;
    for (int i = 0; i < 3; ++i)
        if (dist_to_integer(t.beta[i][0] - t.beta[i][1]) <= kFuchsTol) eq.resonant = true;
    return eq;
}

std::pair<Complex, Complex> indicial_exponents(const RiemannEquation& eq, int point_index) {
    if (point_index < 0 || point_index > 2)
        throw std::invalid_argument("indicial_exponents: point index out of range");
    if (eq.divisor.points[point_index].is_infinity) {
        Complex p1 = eq.p1_at_infinity();
        Complex q2 = eq.q2_at_infinity();
        return quadratic_roots(1.0 - p1, q2);
    }
    Complex pm1 = eq.p_residue_at(point_index);
    Complex qm2 = eq.q_m2_at(point_index);
    return quadratic_roots(pm1 - 1.0, qm2);
}

bool is_rsl(const RiemannEquation& eq) {
    for (int i : eq.divisor.finite_indices())
        if (std::abs(eq.p_res[i]) > kPoleTol) return false;
    return true;
}

bool genuinely_singular_at(const RiemannEquation& eq, int i) {
    double scale = 1.0;
    if (eq.divisor.points[i].is_infinity) {
        return std::abs(eq.p1_at_infinity() - 2.0) > kPoleTol * scale ||
               std::abs(eq.q2_at_infinity()) > kPoleTol * scale ||
               std::abs(eq.q3_at_infinity()) > kPoleTol * scale;
    }
    return std::abs(eq.p_residue_at(i)) > kPoleTol * scale ||
           std::abs(eq.q_m2_at(i)) > kPoleTol * scale ||
           std::abs(eq.q_m1_at(i)) > kPoleTol * scale;
}

bool has_genuine_divisor(const RiemannEquation& eq) {
    for (int i = 0; i < 3; ++i)
        if (!genuinely_singular_at(eq, i)) return false;
    return true;
}

RiemannEquation mobius_relocate(const RiemannEquation& eq,
                                const std::array<SpherePoint, 3>& images) {
    Divisor target(images[0], images[1], images[2]);
    return build_equation(target, eq.exponents);
}

RiemannEquation integer_shear(const RiemannEquation& eq, int i, long s, int compensate) {
    if (i < 0 || i > 2 || compensate < 0 || compensate > 2 || i == compensate)
        throw std::invalid_argument("integer_shear: bad point indices");
    if (eq.divisor.points[i].is_infinity)
        throw std::invalid_argument("integer_shear: sheared point must be finite");
    ExponentTable t = eq.exponents;
    t.split.reset();
    for (int j = 0; j < 2; ++j) {
        t.beta[i][j] += static_cast<double>(s);
        t.beta[compensate][j] -= static_cast<double>(s);
    }
    return build_equation(eq.divisor, t);
}

ExponentTable hypergeometric_table(const HypergeometricParams& h) {
    ExponentTable t;
    t.beta[0] = {Complex{0.0}, 1.0 - h.gamma};
    t.beta[1] = {Complex{0.0}, h.gamma - h.alpha - h.beta};
    t.beta[2] = {h.alpha, h.beta};
    return t;
}

RiemannEquation hypergeometric_equation(const HypergeometricParams& h) {
    Divisor d(SpherePoint::finite(0.0), SpherePoint::finite(1.0), SpherePoint::infinity());
    return build_equation(d, hypergeometric_table(h));
}

}  // namespace riemann
