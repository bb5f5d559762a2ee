#pragma once

#include <array>
#include <complex>
#include <optional>
#include <utility>

namespace riemann {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

/// 2x2 complex matrix, row-major.
struct CMat2 {
    std::array<Complex, 4> e{};

    CMat2() = default;
    CMat2(Complex a, Complex b, Complex c, Complex d) : e{a, b, c, d} {}

    static CMat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static CMat2 diag(Complex a, Complex d) { return {a, 0.0, 0.0, d}; }
    static CMat2 scalar(Complex s) { return diag(s, s); }

    Complex& operator()(int r, int c) { return e[2 * r + c]; }
    const Complex& operator()(int r, int c) const { return e[2 * r + c]; }

    Complex trace() const { return e[0] + e[3]; }
    Complex det() const { return e[0] * e[3] - e[1] * e[2]; }

    double max_norm() const;
    bool finite() const;

    /// Inverse; throws std::domain_error when the determinant vanishes.
    CMat2 inverse() const;
};

CMat2 operator+(const CMat2& a, const CMat2& b);
CMat2 operator-(const CMat2& a, const CMat2& b);
CMat2 operator*(const CMat2& a, const CMat2& b);
CMat2 operator*(Complex s, const CMat2& a);

/// max-norm of (a - b), the entrywise comparison used everywhere.
double max_diff(const CMat2& a, const CMat2& b);

/// s * m * s^{-1}
CMat2 conjugate_by(const CMat2& s, const CMat2& m);

/// True when m is within tol (relative to its norm) of (tr m / 2) * I.
bool nearly_scalar(const CMat2& m, double tol = 1e-9);

/// Column vector helper for eigenvector work.
struct CVec2 {
    Complex x{}, y{};
    double max_norm() const;
};
CVec2 operator*(const CMat2& m, const CVec2& v);

struct EigenData {
    std::pair<Complex, Complex> values;  // ordered by (Re, Im)
    bool diagonalizable = true;
    // Columns are eigenvectors when diagonalizable; for a Jordan block the
    // first column is the eigenvector, the second a generalized vector.
    CMat2 basis = CMat2::identity();
};

/// Characteristic-polynomial eigenanalysis. Total on finite input; scalar
/// matrices report the identity eigenbasis.
EigenData eig2(const CMat2& m);

/// Normalized logarithm E = log(G) / (2 pi i) with Re(eigenvalues) in [0,1).
struct NormalizedLog {
    CMat2 E;
    std::pair<Complex, Complex> rho;  // eigenvalues of E, ordered by (Re, Im)
};

/// Throws std::domain_error on singular input.
NormalizedLog normalized_log(const CMat2& g);

/// Scalar branch used by NormalizedLog: rho with exp(2 pi i rho) = lambda and
/// Re rho in [0, 1).
Complex normalized_log_scalar(Complex lambda);

/// Searches for invertible S with S*A_k*S^{-1} = B_k (k = 1,2) within tol,
/// via the null space of the linear map S -> S*A_k - B_k*S. Returns nothing
/// when the pairs are not simultaneously conjugate.
std::optional<CMat2> simultaneous_conjugator(const CMat2& a1, const CMat2& a2,
                                             const CMat2& b1, const CMat2& b2,
                                             double tol);

}  // namespace riemann
