#include "riemann/mat2.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace riemann {

namespace {

bool cplx_less(Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
}

}  // namespace

double CMat2::max_norm() const {
    double m = 0.0;
    for (const auto& v : e) m = std::max(m, std::abs(v));
    return m;
}

bool CMat2::finite() const {
    for (const auto& v : e)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
    return true;
}

CMat2 CMat2::inverse() const {
    Complex d = det();
    if (std::abs(d) <= 1e-14 * std::max(1.0, max_norm() * max_norm()))
        throw std::domain_error("CMat2::inverse: singular matrix");
    return {e[3] / d, -e[1] / d, -e[2] / d, e[0] / d};
}

CMat2 operator+(const CMat2& a, const CMat2& b) {
    return {a.e[0] + b.e[0], a.e[1] + b.e[1], a.e[2] + b.e[2], a.e[3] + b.e[3]};
}

CMat2 operator-(const CMat2& a, const CMat2& b) {
    return {a.e[0] - b.e[0], a.e[1] - b.e[1], a.e[2] - b.e[2], a.e[3] - b.e[3]};
}

CMat2 operator*(const CMat2& a, const CMat2& b) {
    return {a.e[0] * b.e[0] + a.e[1] * b.e[2], a.e[0] * b.e[1] + a.e[1] * b.e[3],
            a.e[2] * b.e[0] + a.e[3] * b.e[2], a.e[2] * b.e[1] + a.e[3] * b.e[3]};
}

CMat2 operator*(Complex s, const CMat2& a) {
    return {s * a.e[0], s * a.e[1], s * a.e[2], s * a.e[3]};
}

double max_diff(const CMat2& a, const CMat2& b) { return (a - b).max_norm(); }

CMat2 conjugate_by(const CMat2& s, const CMat2& m) { return s * m * s.inverse(); }

bool nearly_scalar(const CMat2& m, double tol) {
    Complex mean = m.trace() / 2.0;
    return max_diff(m, CMat2::scalar(mean)) <= tol * (1.0 + m.max_norm());
}

double CVec2::max_norm() const { return std::max(std::abs(x), std::abs(y)); }

CVec2 operator*(const CMat2& m, const CVec2& v) {
    return {m.e[0] * v.x + m.e[1] * v.y, m.e[2] * v.x + m.e[3] * v.y};
}

namespace {

// Null vector of the rank-one matrix m - lambda*I, picked from the larger row.
CVec2 eigenvector_of(const CMat2& m, Complex lambda) {
    Complex r00 = m.e[0] - lambda, r01 = m.e[1];
    Complex r10 = m.e[2], r11 = m.e[3] - lambda;
    double n0 = std::max(std::abs(r00), std::abs(r01));
    double n1 = std::max(std::abs(r10), std::abs(r11));
    CVec2 v;
    if (n0 >= n1)
        v = {r01, -r00};
    else
        v = {r11, -r10};
    double n = v.max_norm();
    if (n == 0.0) return {1.0, 0.0};
    v.x /= n;
    v.y /= n;
    return v;
}

}  // namespace

EigenData eig2(const CMat2& m) {
    Complex tr = m.trace(), dt = m.det();
    Complex disc2 = tr * tr - 4.0 * dt;
    Complex disc = std::sqrt(disc2);
    Complex l1 = (tr + disc) / 2.0;
    Complex l2 = (tr - disc) / 2.0;
    // Reduce cancellation in the smaller root.
    if (std::abs(l1) > std::abs(l2) && std::abs(l1) > 0.0) l2 = dt / l1;
    else if (std::abs(l2) > 0.0) l1 = dt / l2;
    if (cplx_less(l2, l1)) std::swap(l1, l2);

    EigenData out;
    out.values = {l1, l2};

    // Coincidence is decided on the discriminant: round-off in tr^2 - 4 det
    // is amplified by the square root, so a separation threshold on the
    // roots themselves cannot be held tighter than its square root.
    double disc_tol = 1e-11 * (1.0 + std::abs(tr) * std::abs(tr) + 4.0 * std::abs(dt));
    if (std::abs(disc2) > disc_tol) {
        CVec2 v1 = eigenvector_of(m, l1);
        CVec2 v2 = eigenvector_of(m, l2);
        out.diagonalizable = true;
        out.basis = {v1.x, v2.x, v1.y, v2.y};
        return out;
    }

    // Coincident eigenvalues: scalar or a Jordan block, decided by the
    // residual of m - (tr/2) I.
    Complex lambda = tr / 2.0;
    out.values = {lambda, lambda};
    if (nearly_scalar(m)) {
        out.diagonalizable = true;
        out.basis = CMat2::identity();
        return out;
    }
    out.diagonalizable = false;
    CVec2 v = eigenvector_of(m, lambda);
    // Generalized vector w with (m - lambda I) w = v, solved from the row of
    // largest magnitude with the free component set to zero.
    CMat2 n = m - CMat2::scalar(lambda);
    CVec2 w{0.0, 0.0};
    int best = 0;
    double bn = 0.0;
    for (int k = 0; k < 4; ++k)
        if (std::abs(n.e[k]) > bn) bn = std::abs(n.e[k]), best = k;
    if (bn > 0.0) {
        int r = best / 2, c = best % 2;
        Complex rhs = (r == 0) ? v.x : v.y;
        if (c == 0) w = {rhs / n.e[2 * r], 0.0};
        else w = {0.0, rhs / n.e[2 * r + 1]};
    }
    out.basis = {v.x, w.x, v.y, w.y};
    return out;
}

Complex normalized_log_scalar(Complex lambda) {
    double a = std::arg(lambda);
    if (a < 0.0) a += kTwoPi;
    // (ln|l| + i a) / (2 pi i)
    return {a / kTwoPi, -std::log(std::abs(lambda)) / kTwoPi};
}

NormalizedLog normalized_log(const CMat2& g) {
    if (std::abs(g.det()) <= 1e-14 * std::max(1.0, g.max_norm() * g.max_norm()))
        throw std::domain_error("normalized_log: singular matrix");
    EigenData ed = eig2(g);
    NormalizedLog out;
    if (ed.diagonalizable) {
        Complex r1 = normalized_log_scalar(ed.values.first);
        Complex r2 = normalized_log_scalar(ed.values.second);
        out.E = ed.basis * CMat2::diag(r1, r2) * ed.basis.inverse();
        if (cplx_less(r2, r1)) std::swap(r1, r2);
        out.rho = {r1, r2};
        return out;
    }
    // Jordan block g = lambda I + N, N^2 = 0:
    // log g = (log lambda) I + N / lambda.
    Complex lambda = g.trace() / 2.0;
    Complex rho = normalized_log_scalar(lambda);
    CMat2 n = g - CMat2::scalar(lambda);
    Complex inv_2pii_lambda = Complex(0.0, -1.0 / kTwoPi) / lambda;  // 1/(2 pi i lambda)
    out.E = CMat2::scalar(rho) + inv_2pii_lambda * n;
    out.rho = {rho, rho};
    return out;
}

namespace {

// Jacobi eigensolver for a small Hermitian matrix, eigenvectors accumulated
// in v (columns). Enough for the 4x4 normal matrices built below.
void jacobi_hermitian(std::vector<Complex>& h, std::vector<Complex>& v, int n) {
    for (int i = 0; i < n * n; ++i) v[i] = 0.0;
    for (int i = 0; i < n; ++i) v[i * n + i] = 1.0;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off = std::max(off, std::abs(h[p * n + q]));
        double scale = 0.0;
        for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(h[i * n + i]));
        if (off <= 1e-15 * (1.0 + scale)) break;
        for (int p = 0; p < n; ++p) {
            for (int q = p + 1; q < n; ++q) {
                Complex apq = h[p * n + q];
                if (std::abs(apq) == 0.0) continue;
                double app = h[p * n + p].real();
                double aqq = h[q * n + q].real();
                double absapq = std::abs(apq);
                Complex phase = apq / absapq;
                double tau = (aqq - app) / (2.0 * absapq);
                double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                Complex s = t * c * phase;
                for (int k = 0; k < n; ++k) {
                    Complex hkp = h[k * n + p], hkq = h[k * n + q];
                    h[k * n + p] = c * hkp - std::conj(s) * hkq;
                    h[k * n + q] = s * hkp + c * hkq;
                }
                for (int k = 0; k < n; ++k) {
                    Complex hpk = h[p * n + k], hqk = h[q * n + k];
                    h[p * n + k] = c * hpk - s * hqk;
                    h[q * n + k] = std::conj(s) * hpk + c * hqk;
                }
                for (int k = 0; k < n; ++k) {
                    Complex vkp = v[k * n + p], vkq = v[k * n + q];
                    v[k * n + p] = c * vkp - std::conj(s) * vkq;
                    v[k * n + q] = s * vkp + c * vkq;
                }
            }
        }
    }
}

CMat2 from_flat(const std::array<Complex, 4>& s) { return {s[0], s[1], s[2], s[3]}; }

}  // namespace

std::optional<CMat2> simultaneous_conjugator(const CMat2& a1, const CMat2& a2,
                                             const CMat2& b1, const CMat2& b2,
                                             double tol) {
    // Rows of the 8x4 system: for each k and each (r,c),
    //   sum_j A_{jc} s_{rj} - sum_j B_{rj} s_{jc} = 0,
    // unknowns ordered s00 s01 s10 s11.
    std::array<const CMat2*, 2> as{&a1, &a2};
    std::array<const CMat2*, 2> bs{&b1, &b2};
    std::vector<std::array<Complex, 4>> rows;
    rows.reserve(8);
    for (int k = 0; k < 2; ++k) {
        const CMat2& a = *as[k];
        const CMat2& b = *bs[k];
        for (int r = 0; r < 2; ++r) {
            for (int c = 0; c < 2; ++c) {
                std::array<Complex, 4> row{};
                for (int i = 0; i < 2; ++i) {
                    for (int j = 0; j < 2; ++j) {
                        Complex coef = 0.0;
                        if (i == r) coef += a(j, c);
                        if (j == c) coef -= b(r, i);
                        row[2 * i + j] += coef;
                    }
                }
                rows.push_back(row);
            }
        }
    }

    // Normal matrix H = M^H M; its near-null eigenvectors span the solution
    // space of the homogeneous system.
    std::vector<Complex> h(16, 0.0), vecs(16, 0.0);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Complex sum = 0.0;
            for (const auto& row : rows) sum += std::conj(row[i]) * row[j];
            h[i * 4 + j] = sum;
        }
    double hscale = 0.0;
    for (int i = 0; i < 4; ++i) hscale = std::max(hscale, std::abs(h[i * 4 + i]));
    std::vector<Complex> hwork = h;
    jacobi_hermitian(hwork, vecs, 4);

    // Candidate directions in ascending eigenvalue order; everything below
    // the cut counts as null space, and the final conjugation check is the
    // arbiter anyway, so the smallest direction is always tried.
    std::array<int, 4> order{0, 1, 2, 3};
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        return hwork[a * 4 + a].real() < hwork[b * 4 + b].real();
    });
    double eig_tol = 1e-10 * (1.0 + hscale);
    std::vector<std::array<Complex, 4>> null_basis;
    for (int j : order)
        if (hwork[j * 4 + j].real() <= eig_tol)
            null_basis.push_back(
                {vecs[0 * 4 + j], vecs[1 * 4 + j], vecs[2 * 4 + j], vecs[3 * 4 + j]});
    if (null_basis.empty()) {
        int j = order[0];
        null_basis.push_back(
            {vecs[0 * 4 + j], vecs[1 * 4 + j], vecs[2 * 4 + j], vecs[3 * 4 + j]});
    }

    // Both directions are required: a nearly degenerate S can flatten a
    // Jordan block in one direction and fake a match, but the inverse
    // conjugation amplifies the mismatch by the same factor.
    auto accept = [&](const CMat2& s) -> bool {
        double sn = s.max_norm();
        if (sn == 0.0) return false;
        if (std::abs(s.det()) <= 1e-9 * sn * sn) return false;
        CMat2 si = s.inverse();
        for (int k = 0; k < 2; ++k) {
            if (max_diff(s * (*as[k]) * si, *bs[k]) > tol * (1.0 + bs[k]->max_norm()))
                return false;
            if (max_diff(si * (*bs[k]) * s, *as[k]) > tol * (1.0 + as[k]->max_norm()))
                return false;
        }
        return true;
    };

    for (const auto& s : null_basis) {
        CMat2 cand = from_flat(s);
        if (accept(cand)) return cand;
    }
    // The invertible elements of the null space form a Zariski-open set; a
    // handful of deterministic combinations finds one when it exists.
    unsigned long long lcg = 0x243f6a8885a308d3ull;
    auto next = [&lcg]() {
        lcg = lcg * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<double>((lcg >> 17) & 0xffffffffull) / 4294967296.0 * 2.0 - 1.0;
    };
    for (int trial = 0; trial < 32; ++trial) {
        std::array<Complex, 4> acc{};
        for (const auto& s : null_basis) {
            Complex w{next(), next()};
            for (int i = 0; i < 4; ++i) acc[i] += w * s[i];
        }
        CMat2 cand = from_flat(acc);
        if (accept(cand)) return cand;
    }
    return std::nullopt;
}

}  // namespace riemann
