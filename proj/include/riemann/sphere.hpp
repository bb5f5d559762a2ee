#pragma once

#include <array>
#include <optional>
#include <vector>

#include "riemann/mat2.hpp"

namespace riemann {

/// A point of the Riemann sphere: a finite complex number or infinity.
struct SpherePoint {
    bool is_infinity = false;
    Complex z{};

    static SpherePoint infinity() { return {true, Complex{}}; }
    static SpherePoint finite(Complex w) { return {false, w}; }
};

bool same_point(const SpherePoint& a, const SpherePoint& b, double tol = 1e-9);

/// Three distinct points, at most one of them infinity. Finite points must be
/// separated by more than 1e-9; throws std::invalid_argument otherwise.
struct Divisor {
    std::array<SpherePoint, 3> points;

    Divisor(SpherePoint a, SpherePoint b, SpherePoint c);

    std::optional<int> infinity_index() const;
    std::vector<int> finite_indices() const;
};

}  // namespace riemann
