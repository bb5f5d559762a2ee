#pragma once

#include <optional>
#include <utility>

#include "riemann/mat2.hpp"
#include "riemann/sphere.hpp"

namespace riemann {

/// Integer/fractional decomposition of the six exponents: beta = phi + rho
/// with phi integer and Re rho in [0, 1).
struct ExponentSplit {
    std::array<std::array<long, 2>, 3> phi{};
    std::array<std::array<Complex, 2>, 3> rho{};
};

/// Two exponents per divisor point, rows in divisor order.
struct ExponentTable {
    std::array<std::array<Complex, 2>, 3> beta{};
    std::optional<ExponentSplit> split;

    Complex sum() const;
};

/// phi = floor(Re beta), rho = beta - phi.
std::pair<long, Complex> split_exponent(Complex beta);

/// Fills the split from the stored exponents.
ExponentSplit make_split(const ExponentTable& t);

Complex fuchs_sum(const ExponentTable& t);
bool fuchs_ok(const ExponentTable& t, double tol = 1e-9);

/// Second-order equation y'' + p y' + q y = 0 with exactly the divisor as
/// candidate singular set. Coefficients are stored structurally: simple-pole
/// residues of p and the q numerator data of the two partial-fraction layouts
/// (all points finite, or one point at infinity).
struct RiemannEquation {
    Divisor divisor;
    ExponentTable exponents;
    bool resonant = false;  // some exponent pair differs by an integer

    // Structured coefficient data, indexed like the divisor. For finite
    // point i: p_res[i] is the residue of p, q_num[i] the numerator constant
    // of its q term. q_const is the constant numerator term of the
    // infinity layout (zero otherwise).
    std::array<Complex, 3> p_res{};
    std::array<Complex, 3> q_num{};
    Complex q_const{};

    Complex p(Complex z) const;
    Complex q(Complex z) const;

    // Laurent data at divisor points and at infinity.
    Complex p_residue_at(int i) const;   // coefficient of 1/(z-a_i)
    Complex q_m2_at(int i) const;        // coefficient of 1/(z-a_i)^2
    Complex q_m1_at(int i) const;        // coefficient of 1/(z-a_i)
    Complex p1_at_infinity() const;      // p ~ p1/z
    Complex q2_at_infinity() const;      // q ~ q2/z^2 + q3/z^3 + ...
    Complex q3_at_infinity() const;
};

/// Assembles p and q from the exponents. Throws std::invalid_argument when
/// the Fuchs sum is off 1 by more than 1e-9.
RiemannEquation build_equation(const Divisor& divisor, const ExponentTable& t);

/// Roots of the indicial polynomial at a divisor point, ordered by (Re, Im).
/// At a finite point: t(t-1) + p_{-1} t + q_{-2}; at infinity, in the
/// w = 1/z chart: t(t+1) - p1 t + q2.
std::pair<Complex, Complex> indicial_exponents(const RiemannEquation& eq, int point_index);

/// True when the first-derivative term vanishes identically.
bool is_rsl(const RiemannEquation& eq);

/// Coefficients actually have a pole at divisor point i (at infinity: the
/// chart equation is non-holomorphic there). Tables like {(1,0),(0,1),...}
/// can make a divisor point ordinary; witnesses must avoid that.
bool genuinely_singular_at(const RiemannEquation& eq, int i);
bool has_genuine_divisor(const RiemannEquation& eq);

/// Rebuilds the equation on the image points (order-aligned with the
/// divisor); exponents are invariant under fractional-linear relocation.
RiemannEquation mobius_relocate(const RiemannEquation& eq,
                                const std::array<SpherePoint, 3>& images);

/// Multiplies the solution space by ((z-a_i)/(z-a_c))^s: exponents at a_i
/// shift by +s, at the compensating point by -s, monodromy unchanged.
RiemannEquation integer_shear(const RiemannEquation& eq, int i, long s, int compensate = 2);

struct HypergeometricParams {
    Complex alpha, beta, gamma;
};

/// Riemann scheme {(0, 1-gamma), (0, gamma-alpha-beta), (alpha, beta)}.
ExponentTable hypergeometric_table(const HypergeometricParams& h);

/// The table above on the divisor {0, 1, infinity}.
RiemannEquation hypergeometric_equation(const HypergeometricParams& h);

}  // namespace riemann
