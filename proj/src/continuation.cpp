#include "riemann/continuation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace riemann {

namespace {

Complex unit(Complex v) { return v / std::abs(v); }

}  // namespace

PathSegment PathSegment::line(Complex a, Complex b) {
    PathSegment s;
    s.kind = Kind::Line;
    s.from = a;
    s.to = b;
    return s;
}

PathSegment PathSegment::arc(Complex center, double radius, double theta0, double theta1) {
    PathSegment s;
    s.kind = Kind::Arc;
    s.center = center;
    s.radius = radius;
    s.theta0 = theta0;
    s.theta1 = theta1;
    return s;
}

double PathSegment::length() const {
    if (kind == Kind::Line) return std::abs(to - from);
    return radius * std::abs(theta1 - theta0);
}

Complex PathSegment::at(double s) const {
    if (kind == Kind::Line) return from + s * unit(to - from);
    double dir = theta1 >= theta0 ? 1.0 : -1.0;
    double th = theta0 + dir * s / radius;
    return center + radius * std::exp(Complex(0.0, th));
}

Complex PathSegment::tangent(double s) const {
    if (kind == Kind::Line) return unit(to - from);
    double dir = theta1 >= theta0 ? 1.0 : -1.0;
    double th = theta0 + dir * s / radius;
    return Complex(0.0, dir) * std::exp(Complex(0.0, th));
}

namespace {

double dist_point_line(Complex p, Complex a, Complex b) {
    Complex d = b - a;
    double len2 = std::norm(d);
    if (len2 == 0.0) return std::abs(p - a);
    double t = ((p - a) * std::conj(d)).real() / len2;
    t = std::clamp(t, 0.0, 1.0);
    return std::abs(p - (a + t * d));
}

double clearance(const Path& path, Complex point) {
    double best = 1e300;
    for (const auto& seg : path) {
        double d;
        if (seg.kind == PathSegment::Kind::Line)
            d = dist_point_line(point, seg.from, seg.to);
        else
            d = std::abs(std::abs(point - seg.center) - seg.radius);
        best = std::min(best, d);
    }
    return best;
}

LoopPath make_loop(Complex base, Complex center, double radius, int index) {
    Complex entry = center + radius * unit(base - center);
    double th = std::arg(entry - center);
    LoopPath loop;
    loop.point_index = index;
    loop.radius = radius;
    loop.segments.push_back(PathSegment::line(base, entry));
    loop.segments.push_back(PathSegment::arc(center, radius, th, th + kTwoPi));
    loop.segments.push_back(PathSegment::line(entry, base));
    return loop;
}

}  // namespace

PathPlan plan_loops(const Divisor& divisor, std::optional<Complex> base) {
    auto fin = divisor.finite_indices();
    Complex centroid = 0.0;
    for (int i : fin) centroid += divisor.points[i].z;
    centroid /= static_cast<double>(fin.size());
    double spread = 0.0;
    for (size_t a = 0; a < fin.size(); ++a)
        for (size_t b = a + 1; b < fin.size(); ++b)
            spread = std::max(spread,
                              std::abs(divisor.points[fin[a]].z - divisor.points[fin[b]].z));

    // Canonical base first (centroid + 1.5i * spread); nearly collinear
    // divisors may need another direction or more distance.
    std::vector<Complex> candidates;
    if (base) candidates.push_back(*base);
    for (double mult : {1.5, 2.25, 3.5, 5.0, 8.0})
        for (double ang : {0.5, 0.25, 0.75, 0.125, 0.625, 0.375, 0.875, 0.0})
            candidates.push_back(centroid +
                                 mult * spread * std::exp(Complex(0.0, kTwoPi * ang / 2.0)));

    for (Complex zb : candidates) {
        // radius: a third of the distance to the nearest finite point or base
        bool ok = true;
        std::vector<double> radius(fin.size());
        for (size_t k = 0; k < fin.size(); ++k) {
            Complex a = divisor.points[fin[k]].z;
            double dmin = std::abs(zb - a);
            for (size_t m = 0; m < fin.size(); ++m)
                if (m != k) dmin = std::min(dmin, std::abs(a - divisor.points[fin[m]].z));
            radius[k] = dmin / 3.0;
            if (radius[k] <= 0.0) ok = false;
        }
        if (!ok) continue;

        std::vector<LoopPath> loops;
        for (size_t k = 0; k < fin.size(); ++k)
            loops.push_back(make_loop(zb, divisor.points[fin[k]].z, radius[k], fin[k]));

        // every loop must stay clear of the points it does not encircle
        for (size_t k = 0; k < fin.size() && ok; ++k)
            for (size_t m = 0; m < fin.size() && ok; ++m) {
                if (m == k) continue;
                if (clearance(loops[k].segments, divisor.points[fin[m]].z) < 0.9 * radius[m])
                    ok = false;
            }
        if (!ok) continue;

        std::sort(loops.begin(), loops.end(), [&](const LoopPath& a, const LoopPath& b) {
            double ta = std::arg(divisor.points[a.point_index].z - zb);
            double tb = std::arg(divisor.points[b.point_index].z - zb);
            if (ta != tb) return ta < tb;
            return a.point_index < b.point_index;
        });

        PathPlan plan;
        plan.base = zb;
        plan.loops = std::move(loops);
        for (const auto& l : plan.loops) plan.angular_order.push_back(l.point_index);
        plan.infinity_index = divisor.infinity_index();
        return plan;
    }
    throw std::runtime_error("plan_loops: no admissible base point found");
}

// ---------------------------------------------------------------------------
// Transport: Dormand-Prince 5(4) on the 2x2 fundamental matrix, with the
// integral of p carried along for the determinant identity.
// ---------------------------------------------------------------------------

namespace {

struct OdeState {
    std::array<Complex, 5> v{};  // Y row-major, then integral of p dz
};

struct ChartCoeffs {
    const RiemannEquation* eq;
    bool w_chart = false;

    void pq(Complex x, Complex& p, Complex& q) const {
        if (!w_chart) {
            p = eq->p(x);
            q = eq->q(x);
            return;
        }
        Complex z = 1.0 / x;
        Complex x2 = x * x;
        p = 2.0 / x - eq->p(z) / x2;
        q = eq->q(z) / (x2 * x2);
    }
};

OdeState rhs(const ChartCoeffs& cc, const PathSegment& seg, double s, const OdeState& y) {
    Complex z = seg.at(s);
    Complex dz = seg.tangent(s);
    Complex p, q;
    cc.pq(z, p, q);
    OdeState d;
    d.v[0] = dz * y.v[2];
    d.v[1] = dz * y.v[3];
    d.v[2] = dz * (-q * y.v[0] - p * y.v[2]);
    d.v[3] = dz * (-q * y.v[1] - p * y.v[3]);
    d.v[4] = dz * p;
    return d;
}

bool state_finite(const OdeState& y) {
    for (const auto& c : y.v)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

// Dormand-Prince coefficients.
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

TransportResult integrate(const ChartCoeffs& cc, const Path& path, double tol,
                          TransportTrace* trace) {
    double total_len = 0.0;
    for (const auto& seg : path) total_len += seg.length();
    if (total_len <= 0.0)
        return {CMat2::identity(), 0.0, 0};
    const double hmin = 1e-12 * total_len;
    const double hmax = 0.1 * total_len;

    OdeState y;
    y.v = {1.0, 0.0, 0.0, 1.0, 0.0};
    long steps = 0;
    double h = std::min(hmax, 1e-2 * total_len);

    auto comb = [](const OdeState& y0, double h, std::initializer_list<std::pair<double, const OdeState*>> terms) {
        OdeState out = y0;
        for (const auto& [c, k] : terms)
            for (int i = 0; i < 5; ++i) out.v[i] += h * c * k->v[i];
        return out;
    };

    for (const auto& seg : path) {
        double len = seg.length();
        double s = 0.0;
        if (trace) trace->points.push_back(seg.at(0.0));
        OdeState k1 = rhs(cc, seg, s, y);
        while (s < len * (1.0 - 1e-15) && len - s > hmin * 1e-3) {
            double hs = std::min(h, len - s);
            OdeState k2 = rhs(cc, seg, s + hs * 0.2, comb(y, hs, {{a21, &k1}}));
            OdeState k3 = rhs(cc, seg, s + hs * 0.3, comb(y, hs, {{a31, &k1}, {a32, &k2}}));
            OdeState k4 =
                rhs(cc, seg, s + hs * 0.8, comb(y, hs, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
            OdeState k5 = rhs(cc, seg, s + hs * 8.0 / 9.0,
                              comb(y, hs, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
            OdeState k6 = rhs(
                cc, seg, s + hs,
                comb(y, hs, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
            OdeState y5 =
                comb(y, hs, {{b1, &k1}, {b3, &k3}, {b4, &k4}, {b5, &k5}, {b6, &k6}});
            OdeState k7 = rhs(cc, seg, s + hs, y5);

            double ratio = 0.0;
            for (int i = 0; i < 5; ++i) {
                Complex err = hs * (e1 * k1.v[i] + e3 * k3.v[i] + e4 * k4.v[i] +
                                    e5 * k5.v[i] + e6 * k6.v[i] + e7 * k7.v[i]);
                double scale = tol * (1.0 + std::max(std::abs(y.v[i]), std::abs(y5.v[i])));
                ratio = std::max(ratio, std::abs(err) / scale);
            }

            bool accept = ratio <= 1.0;
            if (accept) {
                if (!state_finite(y5))
                    throw std::runtime_error("transport: non-finite state");
                s += hs;
                y = y5;
                k1 = k7;
                ++steps;
                if (trace) trace->points.push_back(seg.at(s));
            }
            double fac = 0.9 * std::pow(std::max(ratio, 1e-10), -0.2);
            double hnew = hs * std::clamp(fac, 0.2, 5.0);
            if (!accept && hnew <= hmin * 1.0001)
                throw std::runtime_error("transport: step underflow near a singular point");
            h = std::clamp(hnew, hmin, hmax);
        }
    }

    TransportResult out;
    out.transfer = {y.v[0], y.v[1], y.v[2], y.v[3]};
    out.p_integral = y.v[4];
    out.steps = steps;
    return out;
}

}  // namespace

CMat2 transport(const RiemannEquation& eq, const Path& path, double tol) {
    return transport_ex(eq, path, tol).transfer;
}

TransportResult transport_ex(const RiemannEquation& eq, const Path& path, double tol,
                             TransportTrace* trace) {
    ChartCoeffs cc{&eq, false};
    return integrate(cc, path, tol, trace);
}

double liouville_residual(const TransportResult& tr) {
    return std::abs(tr.transfer.det() - std::exp(-tr.p_integral));
}

namespace {

// Loops compose right-to-left into the boundary relation; the word below
// reads w[2]*w[1]*w[0] = I with w[0] continued first. The flag selects which
// end of the angular order is continued first; it is pinned by the w-chart
// cross-check in the test suite.
constexpr bool kReverseAngularOrder = false;

struct RelationWord {
    std::array<CMat2, 3> m;
    std::array<int, 3> owner;
};

RelationWord divisor_ordered(RelationWord w) {
    // Rotate cyclically until the last (leftmost) slot belongs to point 2.
    for (int r = 0; r < 3 && w.owner[2] != 2; ++r) {
        RelationWord v = w;
        w.m = {v.m[1], v.m[2], v.m[0]};
        w.owner = {v.owner[1], v.owner[2], v.owner[0]};
    }
    if (w.owner[2] != 2)
        throw std::logic_error("monodromy composition: malformed owner set");
    if (w.owner[0] == 0) return w;
    // Swap the first two slots: G1 := w1, G2 := w1 * w0 * w1^{-1}.
    RelationWord v = w;
    w.m[0] = v.m[1];
    w.m[1] = v.m[1] * v.m[0] * v.m[1].inverse();
    w.owner = {v.owner[1], v.owner[0], v.owner[2]};
    return w;
}

}  // namespace

NumericMonodromy monodromy_of(const RiemannEquation& eq, const PathPlan& plan, double tol,
                              TransportTrace* trace) {
    if (plan.loops.size() != eq.divisor.finite_indices().size())
        throw std::invalid_argument("monodromy_of: plan does not match the divisor");
    for (const auto& loop : plan.loops) {
        const auto& p = eq.divisor.points[loop.point_index];
        if (p.is_infinity)
            throw std::invalid_argument("monodromy_of: loop around the infinite point");
        for (const auto& seg : loop.segments)
            if (seg.kind == PathSegment::Kind::Arc && std::abs(seg.center - p.z) > 1e-9)
                throw std::invalid_argument("monodromy_of: plan was built for another divisor");
    }

    std::vector<CMat2> t;
    long steps = 0;
    for (const auto& loop : plan.loops) {
        TransportResult r = transport_ex(eq, loop.segments, tol, trace);
        t.push_back(r.transfer);
        steps += r.steps;
    }

    std::vector<int> comp(plan.loops.size());
    for (size_t i = 0; i < comp.size(); ++i)
        comp[i] = kReverseAngularOrder ? static_cast<int>(comp.size() - 1 - i)
                                       : static_cast<int>(i);

    RelationWord word;
    if (plan.infinity_index) {
        word.m = {t[comp[0]], t[comp[1]], (t[comp[1]] * t[comp[0]]).inverse()};
        word.owner = {plan.angular_order[comp[0]], plan.angular_order[comp[1]],
                      *plan.infinity_index};
    } else {
        word.m = {t[comp[0]], t[comp[1]], t[comp[2]]};
        word.owner = {plan.angular_order[comp[0]], plan.angular_order[comp[1]],
                      plan.angular_order[comp[2]]};
    }
    word = divisor_ordered(word);

    NumericMonodromy nm;
    nm.g = {word.m[0], word.m[1], word.m[2]};
    nm.residual = max_diff(nm.g[2] * nm.g[1] * nm.g[0], CMat2::identity());
    nm.tol_used = tol;
    nm.steps = steps;
    return nm;
}

double eigenvalue_law_error(const RiemannEquation& eq, const NumericMonodromy& nm) {
    double worst = 0.0;
    for (int i = 0; i < 3; ++i) {
        Complex t1 = std::exp(Complex(0.0, kTwoPi) * eq.exponents.beta[i][0]);
        Complex t2 = std::exp(Complex(0.0, kTwoPi) * eq.exponents.beta[i][1]);
        EigenData ed = eig2(nm.g[i]);
        double d1 = std::max(std::abs(ed.values.first - t1), std::abs(ed.values.second - t2));
        double d2 = std::max(std::abs(ed.values.first - t2), std::abs(ed.values.second - t1));
        worst = std::max(worst, std::min(d1, d2));
    }
    return worst;
}

InfinityCheck infinity_chart_check(const RiemannEquation& eq, const PathPlan& plan,
                                   double tol) {
    auto inf = eq.divisor.infinity_index();
    if (!inf)
        throw std::invalid_argument("infinity_chart_check: divisor has no infinite point");

    auto fin = eq.divisor.finite_indices();
    double rmax = 1.0;
    for (int i : fin) rmax = std::max(rmax, std::abs(eq.divisor.points[i].z));
    rmax = std::max(rmax, std::abs(plan.base));
    double big_r = 4.0 * rmax;

    // Outward segment from the base, nudged if it grazes a divisor point.
    Complex zb{};
    bool found = false;
    for (double dphi : {0.0, 0.5, -0.5, 1.0, -1.0, 1.5, -1.5}) {
        Complex cand = big_r * std::exp(Complex(0.0, std::arg(plan.base) + dphi));
        Path stem{PathSegment::line(plan.base, cand)};
        bool ok = true;
        for (const auto& loop : plan.loops)
            if (clearance(stem, eq.divisor.points[loop.point_index].z) < 0.9 * loop.radius)
                ok = false;
        if (ok) {
            zb = cand;
            found = true;
            break;
        }
    }
    if (!found) throw std::runtime_error("infinity_chart_check: no clear outward path");

    TransportResult out_leg = transport_ex(eq, {PathSegment::line(plan.base, zb)}, tol);

    // Full counterclockwise circle in the w = 1/z chart through 1/zb.
    Complex wb = 1.0 / zb;
    double thw = std::arg(wb);
    Path wcircle{PathSegment::arc(0.0, std::abs(wb), thw, thw + kTwoPi)};
    ChartCoeffs cc{&eq, true};
    TransportResult wres = integrate(cc, wcircle, tol, nullptr);

    // Chart change of the derivative coordinate: y_w = -z^2 y_z.
    CMat2 jac = CMat2::diag(1.0, -zb * zb);
    CMat2 mz = jac.inverse() * wres.transfer * jac;
    CMat2 g_chart = out_leg.transfer.inverse() * mz * out_leg.transfer;

    NumericMonodromy nm = monodromy_of(eq, plan, tol);
    InfinityCheck chk;
    chk.via_chart = g_chart;
    chk.deviation = max_diff(g_chart, nm.g[*inf]);
    return chk;
}

}  // namespace riemann
