#include "riemann/sphere.hpp"

#include <cmath>
#include <stdexcept>

namespace riemann {

bool same_point(const SpherePoint& a, const SpherePoint& b, double tol) {
    if (a.is_infinity || b.is_infinity) return a.is_infinity && b.is_infinity;
    return std::abs(a.z - b.z) <= tol;
}

Divisor::Divisor(SpherePoint a, SpherePoint b, SpherePoint c) : points{a, b, c} {
    int ninf = 0;
    for (const auto& p : points) {
        if (p.is_infinity) {
            ++ninf;
        } else if (!std::isfinite(p.z.real()) || !std::isfinite(p.z.imag())) {
            throw std::invalid_argument("Divisor: non-finite coordinate");
        }
    }
    if (ninf > 1) throw std::invalid_argument("Divisor: more than one point at infinity");
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (same_point(points[i], points[j]))
                throw std::invalid_argument("Divisor: points must be pairwise distinct");
}

std::optional<int> Divisor::infinity_index() const {
    for (int i = 0; i < 3; ++i)
        if (points[i].is_infinity) return i;
    return std::nullopt;
}

std::vector<int> Divisor::finite_indices() const {
    std::vector<int> out;
    for (int i = 0; i < 3; ++i)
        if (!points[i].is_infinity) out.push_back(i);
    return out;
}

}  // namespace riemann
