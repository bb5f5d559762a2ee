#pragma once

#include <optional>
#include <vector>

#include "riemann/equation.hpp"
#include "riemann/mat2.hpp"

namespace riemann {

/// One leg of a path: a straight segment or a circular arc, parametrized by
/// arclength.
struct PathSegment {
    enum class Kind { Line, Arc };
    Kind kind = Kind::Line;
    // Line data
    Complex from{}, to{};
    // Arc data: z(theta) = center + radius * e^{i theta}, theta0 -> theta1
    Complex center{};
    double radius = 0.0, theta0 = 0.0, theta1 = 0.0;

    static PathSegment line(Complex a, Complex b);
    static PathSegment arc(Complex center, double radius, double theta0, double theta1);

    double length() const;
    Complex at(double s) const;        // position at arclength s in [0, length]
    Complex tangent(double s) const;   // dz/ds, unit modulus
};

using Path = std::vector<PathSegment>;

/// Closed loop around one divisor point: stem to the circle, full
/// counterclockwise turn, stem back.
struct LoopPath {
    int point_index = -1;
    double radius = 0.0;
    Path segments;
};

struct PathPlan {
    Complex base{};
    std::vector<LoopPath> loops;      // sorted by argument as seen from base
    std::vector<int> angular_order;   // loop owners in that order
    std::optional<int> infinity_index;
};

/// Deterministic loop construction: base at the finite centroid plus an
/// imaginary offset of 1.5x the spread (nudged if clearance fails), loop
/// radius (1/3) of the distance to the nearest finite point or base.
/// A caller-supplied base is used when it keeps clearance, otherwise the
/// default is restored.
PathPlan plan_loops(const Divisor& divisor, std::optional<Complex> base = std::nullopt);

/// Records integration points of a transport for external plotting.
struct TransportTrace {
    std::vector<Complex> points;
};

struct TransportResult {
    CMat2 transfer;
    Complex p_integral{};  // integral of p dz along the path
    long steps = 0;
};

/// Transfer matrix of the companion system Y' = [[0,1],[-q,-p]] Y along the
/// path, adaptive embedded Runge-Kutta with local error control at tol.
/// Throws std::runtime_error on step underflow or non-finite state.
CMat2 transport(const RiemannEquation& eq, const Path& path, double tol = 1e-10);
TransportResult transport_ex(const RiemannEquation& eq, const Path& path, double tol,
                             TransportTrace* trace = nullptr);

struct NumericMonodromy {
    std::array<CMat2, 3> g;
    double residual = 0.0;  // max deviation of G3*G2*G1 from the identity
    double tol_used = 0.0;
    long steps = 0;
};

/// Generators in divisor order with G3*G2*G1 = I; the generator at infinity
/// is derived from the product relation.
NumericMonodromy monodromy_of(const RiemannEquation& eq, const PathPlan& plan,
                              double tol = 1e-10, TransportTrace* trace = nullptr);

/// Max over divisor points of the multiset distance between the eigenvalues
/// {exp(2 pi i beta_i^j)}.
double eigenvalue_law_error(const RiemannEquation& eq, const NumericMonodromy& nm);

/// Independent integration of the infinity generator in the w = 1/z chart,
/// conjugated back to the base point.
struct InfinityCheck {
    CMat2 via_chart;
    double deviation = 0.0;  // against the relation-derived generator
};
InfinityCheck infinity_chart_check(const RiemannEquation& eq, const PathPlan& plan,
                                   double tol = 1e-10);

/// Liouville identity residual |det T - exp(-integral p)| for a transport.
double liouville_residual(const TransportResult& tr);

}  // namespace riemann
