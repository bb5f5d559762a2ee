#include "riemann/realize.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>

namespace riemann {

namespace {

double integ_tol(double tol) { return std::clamp(tol * 1e-3, 5e-13, 1e-7); }

bool contains(const std::vector<int>& v, int x) {
    return std::find(v.begin(), v.end(), x) != v.end();
}

long round_to_long(double x) { return static_cast<long>(std::llround(x)); }

struct Candidate {
    CMat2 conj;
    double residual;
};

std::optional<Candidate> try_candidate(const RiemannEquation& eq, const PathPlan& plan,
                                       const MonodromyRep& rep, const SearchConfig& cfg) {
    NumericMonodromy nm;
    try {
        nm = monodromy_of(eq, plan, integ_tol(cfg.tol));
    } catch (const std::runtime_error&) {
        return std::nullopt;
    }
    auto s = simultaneous_conjugator(rep.g[0], rep.g[1], nm.g[0], nm.g[1], cfg.tol);
    if (!s) return std::nullopt;
    CMat2 si = s->inverse();
    double res = 0.0, scale = 0.0;
    for (int k = 0; k < 3; ++k) {
        res = std::max(res, max_diff(*s * rep.g[k] * si, nm.g[k]));
        res = std::max(res, max_diff(si * nm.g[k] * *s, rep.g[k]));
        scale = std::max(scale, nm.g[k].max_norm());
    }
    if (res > cfg.tol * (1.0 + scale)) return std::nullopt;
    return Candidate{*s, res};
}

long tuple_total(const std::array<long, 6>& t) {
    long s = 0;
    for (long x : t) s += std::labs(x);
    return s;
}

void sort_tuples(std::vector<std::array<long, 6>>& v) {
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        long ta = tuple_total(a), tb = tuple_total(b);
        if (ta != tb) return ta < tb;
        return a < b;
    });
}

std::vector<std::array<long, 6>> tuples_with_sum(long bound, long target) {
    std::vector<std::array<long, 6>> out;
    std::array<long, 6> cur{};
    std::function<void(int, long)> gen = [&](int idx, long need) {
        long slots = 6 - idx;
        if (std::labs(need) > slots * bound) return;
        if (idx == 6) {
            out.push_back(cur);
            return;
        }
        for (long v = -bound; v <= bound; ++v) {
            cur[idx] = v;
            gen(idx + 1, need - v);
        }
    };
    gen(0, target);
    sort_tuples(out);
    return out;
}

std::vector<std::array<long, 6>> tuples_with_row_sums(long bound, std::array<long, 3> row) {
    std::array<std::vector<std::pair<long, long>>, 3> opts;
    for (int i = 0; i < 3; ++i)
        for (long a = -bound; a <= bound; ++a) {
            long b = row[i] - a;
            if (std::labs(b) <= bound) opts[i].push_back({a, b});
        }
    std::vector<std::array<long, 6>> out;
    for (auto [a0, b0] : opts[0])
        for (auto [a1, b1] : opts[1])
            for (auto [a2, b2] : opts[2]) out.push_back({a0, b0, a1, b1, a2, b2});
    sort_tuples(out);
    return out;
}

using RhoRows = std::array<std::array<Complex, 2>, 3>;

std::array<double, 12> table_key(const ExponentTable& t) {
    std::array<double, 12> key{};
    for (int i = 0; i < 3; ++i) {
        Complex a = t.beta[i][0], b = t.beta[i][1];
        if (b.real() < a.real() || (b.real() == a.real() && b.imag() < a.imag()))
            std::swap(a, b);
        key[4 * i + 0] = a.real();
        key[4 * i + 1] = a.imag();
        key[4 * i + 2] = b.real();
        key[4 * i + 3] = b.imag();
    }
    return key;
}

CandidateStream assemble_tables(const RhoRows& rho,
                                const std::vector<std::array<long, 6>>& tuples,
                                long max_candidates) {
    CandidateStream out;
    std::set<std::array<double, 12>> seen;
    for (const auto& t6 : tuples) {
        for (int mask = 0; mask < 8; ++mask) {
            bool redundant = false;
            for (int i = 0; i < 3; ++i)
                if (((mask >> i) & 1) && std::abs(rho[i][0] - rho[i][1]) < 1e-12)
                    redundant = true;
            if (redundant) continue;
            ExponentTable tab;
            ExponentSplit sp;
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 2; ++j) {
                    int jj = ((mask >> i) & 1) ? 1 - j : j;
                    sp.phi[i][j] = t6[2 * i + j];
                    sp.rho[i][j] = rho[i][jj];
                    tab.beta[i][j] = static_cast<double>(sp.phi[i][j]) + sp.rho[i][j];
                }
            tab.split = sp;
            if (!seen.insert(table_key(tab)).second) continue;
            out.tables.push_back(tab);
            if (static_cast<long>(out.tables.size()) >= max_candidates) return out;
        }
    }
    return out;
}

RhoRows rep_rho(const MonodromyRep& rep) {
    RhoRows rho;
    for (int i = 0; i < 3; ++i) {
        NormalizedLog nl = normalized_log(rep.g[i]);
        rho[i] = {nl.rho.first, nl.rho.second};
    }
    return rho;
}

// Sum of the fractional rows; integral for valid representations, the
// residue records how far off the candidate machinery is allowed to be.
std::optional<long> rho_sum_integer(const RhoRows& rho, std::string& err) {
    Complex s = 0.0;
    for (const auto& row : rho) s += row[0] + row[1];
    double nearest = std::round(s.real());
    if (std::abs(s - nearest) > 1e-6) {
        err = "fractional exponent parts sum to " + std::to_string(s.real()) +
              (s.imag() >= 0 ? "+" : "") + std::to_string(s.imag()) +
              "i, not an integer: no exponent table can reach the Fuchs sum";
        return std::nullopt;
    }
    return round_to_long(nearest);
}

}  // namespace

CandidateStream candidate_exponents(const MonodromyRep& rep, const SearchConfig& cfg) {
    if (cfg.shear_bound < 0 || cfg.shear_bound > 6)
        throw std::invalid_argument("candidate_exponents: shear bound must be in [0, 6]");
    RhoRows rho = rep_rho(rep);
    CandidateStream out;
    auto total = rho_sum_integer(rho, out.obstruction);
    if (!total) return out;
    long target = 1 - *total;
    if (std::labs(target) > 6 * cfg.shear_bound) {
        out.obstruction = "integer parts would exceed the shear bound";
        return out;
    }
    return assemble_tables(rho, tuples_with_sum(cfg.shear_bound, target), cfg.max_candidates);
}

namespace {

// Candidates restricted to prescribed integer row sums of the phi parts
// (the first-derivative-free form needs beta sums 1 at the finite points).
CandidateStream candidate_exponents_rows(const MonodromyRep& rep, const SearchConfig& cfg,
                                         const std::array<long, 3>& row_sums) {
    RhoRows rho = rep_rho(rep);
    CandidateStream out;
    std::string err;
    if (!rho_sum_integer(rho, err)) {
        out.obstruction = err;
        return out;
    }
    return assemble_tables(rho, tuples_with_row_sums(cfg.shear_bound, row_sums),
                           cfg.max_candidates);
}

// ---------------------------------------------------------------------------
// Decomposable case: explicit power-function tables. Solutions are products
// (z-a_i)^{c_ij} along the common eigenbasis; the scalar point takes the
// (nu+1, nu) pair. One small integer family covers branch choices.
// ---------------------------------------------------------------------------

struct DiagonalSetup {
    int bump;                  // scalar point carrying the (nu+1, nu) pair
    RhoRows rho;               // scalar logs aligned to the common eigenbasis
    std::array<int, 2> rest;   // the other two indices, divisor order
};

std::optional<DiagonalSetup> diagonal_setup(const MonodromyRep& rep, const RepClass& cls,
                                            std::optional<int> forced_bump) {
    if (cls.tag != RepTag::Decomposable || cls.indices.empty()) return std::nullopt;
    CMat2 v = CMat2::identity();
    for (int i = 0; i < 3; ++i)
        if (!nearly_scalar(rep.g[i])) {
            v = eig2(rep.g[i]).basis;
            break;
        }
    CMat2 vi = v.inverse();
    DiagonalSetup ds;
    for (int i = 0; i < 3; ++i) {
        CMat2 d = vi * rep.g[i] * v;
        ds.rho[i] = {normalized_log_scalar(d(0, 0)), normalized_log_scalar(d(1, 1))};
    }
    if (forced_bump) {
        if (!contains(cls.indices, *forced_bump)) return std::nullopt;
        ds.bump = *forced_bump;
    } else {
        auto inf = rep.divisor.infinity_index();
        if (inf && contains(cls.indices, *inf)) {
            ds.bump = *inf;
        } else {
            ds.bump = -1;
            for (int i = 2; i >= 0; --i)
                if (contains(cls.indices, i)) {
                    ds.bump = i;
                    break;
                }
            if (ds.bump < 0) return std::nullopt;
        }
    }
    int k = 0;
    for (int i = 0; i < 3; ++i)
        if (i != ds.bump) ds.rest[k++] = i;
    return ds;
}

bool near_integer(Complex x) { return std::abs(x - std::round(x.real())) < 1e-6; }

std::vector<ExponentTable> diagonal_tables(const MonodromyRep& rep, const DiagonalSetup& ds,
                                           bool rsl_mode, long bound) {
    auto inf = rep.divisor.infinity_index();
    int s = ds.bump, t = ds.rest[0], u = ds.rest[1];
    Complex rho_s = ds.rho[s][0];

    // One adjustment triple of integers spans the branch choices; the
    // remaining entries are forced by the column relations.
    std::vector<std::array<long, 3>> triples;
    for (long a = -bound; a <= bound; ++a)
        for (long b = -bound; b <= bound; ++b)
            for (long c = -bound; c <= bound; ++c) triples.push_back({a, b, c});
    std::sort(triples.begin(), triples.end(), [](const auto& x, const auto& y) {
        long tx = std::labs(x[0]) + std::labs(x[1]) + std::labs(x[2]);
        long ty = std::labs(y[0]) + std::labs(y[1]) + std::labs(y[2]);
        if (tx != ty) return tx < ty;
        return x < y;
    });

    auto build = [&](const std::array<long, 3>& adj) -> std::optional<ExponentTable> {
        ExponentTable tab;
        Complex ct1, ct2, nu;
        if (inf && *inf == s) {
            // bump at infinity: nu_j = -(c_tj + c_uj) made equal via c_u2
            ct1 = ds.rho[t][0] + static_cast<double>(adj[1]);
            ct2 = ds.rho[t][1] + static_cast<double>(adj[2]);
            Complex cu1 = ds.rho[u][0] + static_cast<double>(adj[0]);
            nu = -(ct1 + cu1);
            Complex cu2 = -nu - ct2;
            if (!near_integer(cu2 - ds.rho[u][1])) return std::nullopt;
            tab.beta[t] = {ct1, ct2};
            tab.beta[u] = {cu1, cu2};
            tab.beta[s] = {nu + 1.0, nu};
        } else if (inf) {
            // scalar point finite, infinity carried by the remaining row
            int f = *inf;
            int tt = (ds.rest[0] == f) ? ds.rest[1] : ds.rest[0];
            nu = rho_s + static_cast<double>(adj[0]);
            ct1 = ds.rho[tt][0] + static_cast<double>(adj[1]);
            ct2 = ds.rho[tt][1] + static_cast<double>(adj[2]);
            tab.beta[s] = {nu + 1.0, nu};
            tab.beta[tt] = {ct1, ct2};
            tab.beta[f] = {-nu - ct1, -nu - ct2};
            if (!near_integer(tab.beta[f][0] - ds.rho[f][0]) ||
                !near_integer(tab.beta[f][1] - ds.rho[f][1]))
                return std::nullopt;
        } else {
            // all points finite, infinity ordinary: columns sum to zero
            nu = rho_s + static_cast<double>(adj[0]);
            ct1 = ds.rho[t][0] + static_cast<double>(adj[1]);
            ct2 = ds.rho[t][1] + static_cast<double>(adj[2]);
            Complex cu1 = -nu - ct1;
            Complex cu2 = -nu - ct2;
            if (!near_integer(cu1 - ds.rho[u][0]) || !near_integer(cu2 - ds.rho[u][1]))
                return std::nullopt;
            tab.beta[s] = {nu + 1.0, nu};
            tab.beta[t] = {ct1, ct2};
            tab.beta[u] = {cu1, cu2};
        }
        if (std::abs(tab.sum() - 1.0) > 1e-9) return std::nullopt;
        return tab;
    };

    auto rsl_style = [&](const ExponentTable& tab) {
        for (int i : rep.divisor.finite_indices())
            if (std::abs(tab.beta[i][0] + tab.beta[i][1] - 1.0) > 1e-9) return false;
        return true;
    };

    std::vector<std::pair<bool, ExponentTable>> built;
    std::set<std::array<double, 12>> seen;
    for (const auto& adj : triples) {
        auto tab = build(adj);
        if (!tab) continue;
        if (!seen.insert(table_key(*tab)).second) continue;
        bool style = rsl_style(*tab);
        if (rsl_mode && !style) continue;
        built.push_back({style, *tab});
    }
    std::stable_sort(built.begin(), built.end(),
                     [](const auto& a, const auto& b) { return a.first && !b.first; });
    std::vector<ExponentTable> out;
    out.reserve(built.size());
    for (auto& [style, tab] : built) out.push_back(tab);
    return out;
}

RealizationWitness refused(const RealizabilityVerdict& v) {
    RealizationWitness w;
    w.outcome = RealizationWitness::Outcome::Refused;
    w.refusal = v;
    return w;
}

RealizationWitness search_tables(const MonodromyRep& rep, const SearchConfig& cfg,
                                 const std::vector<ExponentTable>& direct,
                                 const CandidateStream& stream, bool rsl_required) {
    PathPlan plan = plan_loops(rep.divisor);
    long tried = 0;

    auto attempt = [&](const ExponentTable& tab) -> std::optional<RealizationWitness> {
        ++tried;
        std::optional<RiemannEquation> built;
        try {
            built = build_equation(rep.divisor, tab);
        } catch (const std::invalid_argument&) {
            return std::nullopt;
        }
        const RiemannEquation& eq = *built;
        if (!has_genuine_divisor(eq)) return std::nullopt;
        if (rsl_required && !is_rsl(eq)) return std::nullopt;
        auto cand = try_candidate(eq, plan, rep, cfg);
        if (!cand) return std::nullopt;
        RealizationWitness w;
        w.outcome = RealizationWitness::Outcome::Realized;
        w.equation = eq;
        w.conjugator = cand->conj;
        w.report = {cand->residual, tried, cfg.tol};
        return w;
    };

    for (const auto& tab : direct)
        if (auto w = attempt(tab)) return *w;
    for (const auto& tab : stream.tables)
        if (auto w = attempt(tab)) return *w;

    RealizationWitness w;
    w.outcome = RealizationWitness::Outcome::Exhausted;
    w.report = {0.0, tried, cfg.tol};
    w.note = !stream.obstruction.empty()
                 ? stream.obstruction
                 : "search exhausted after " + std::to_string(tried) +
                       " candidates (not a non-realizability proof)";
    return w;
}

}  // namespace

RealizationWitness realize_riemann(const MonodromyRep& rep, const SearchConfig& cfg) {
    RealizabilityVerdict verdict = is_realizable(rep);
    if (!verdict.realizable) return refused(verdict);
    RepClass cls = classify(rep);

    // Decomposable input takes the explicit power-function tables first; the
    // general stream stays as a fallback.
    std::vector<ExponentTable> direct;
    if (cls.tag == RepTag::Decomposable)
        if (auto ds = diagonal_setup(rep, cls, std::nullopt))
            direct = diagonal_tables(rep, *ds, false, std::max<long>(2, cfg.shear_bound));

    CandidateStream stream = candidate_exponents(rep, cfg);
    return search_tables(rep, cfg, direct, stream, false);
}

RealizationWitness realize_rsl(const MonodromyRep& rep, const SearchConfig& cfg) {
    if (cfg.shear_bound < 0 || cfg.shear_bound > 6)
        throw std::invalid_argument("realize_rsl: shear bound must be in [0, 6]");
    if (!is_sl(rep, std::max(1e-9, cfg.tol)))
        throw std::invalid_argument("realize_rsl: representation is not in SL(2,C)");
    RealizabilityVerdict verdict = is_realizable(rep);
    if (!verdict.realizable) return refused(verdict);
    RepClass cls = classify(rep);

    // The point without the unit exponent sum hosts infinity: the scalar
    // point for decomposable input, the third point otherwise.
    auto inf = rep.divisor.infinity_index();
    int host;
    if (cls.tag == RepTag::Decomposable) {
        if (inf && contains(cls.indices, *inf)) {
            host = *inf;
        } else {
            host = -1;
            for (int i = 2; i >= 0; --i)
                if (contains(cls.indices, i)) {
                    host = i;
                    break;
                }
        }
    } else {
        host = inf ? *inf : 2;
    }

    MonodromyRep target = rep;
    if (!inf || *inf != host) {
        // g(z) = 1/(z - a_host) sends the host to infinity
        Complex ah = rep.divisor.points[host].z;
        std::array<SpherePoint, 3> images;
        for (int i = 0; i < 3; ++i) {
            if (i == host) {
                images[i] = SpherePoint::infinity();
            } else if (rep.divisor.points[i].is_infinity) {
                images[i] = SpherePoint::finite(0.0);
            } else {
                images[i] = SpherePoint::finite(1.0 / (rep.divisor.points[i].z - ah));
            }
        }
        try {
            target = MonodromyRep{rep.g, Divisor(images[0], images[1], images[2])};
        } catch (const std::invalid_argument& e) {
            RealizationWitness w;
            w.outcome = RealizationWitness::Outcome::Exhausted;
            w.note = std::string("relocation produced a degenerate divisor: ") + e.what();
            return w;
        }
    }

    std::vector<ExponentTable> direct;
    if (cls.tag == RepTag::Decomposable)
        if (auto ds = diagonal_setup(target, cls, host))
            direct = diagonal_tables(target, *ds, true, std::max<long>(2, cfg.shear_bound));

    // Restricted stream: phi row sums pinned so that finite exponent rows sum
    // to one and the total hits the Fuchs sum.
    RhoRows rho = rep_rho(target);
    CandidateStream stream;
    std::string err;
    auto total = rho_sum_integer(rho, err);
    if (!total) {
        stream.obstruction = err;
    } else {
        std::array<long, 3> row_sums{};
        bool ok = true;
        long acc = 0;
        for (int i : target.divisor.finite_indices()) {
            Complex sigma = rho[i][0] + rho[i][1];
            if (!near_integer(sigma)) ok = false;
            row_sums[i] = 1 - round_to_long(std::round(sigma.real()));
            acc += row_sums[i];
        }
        int fidx = *target.divisor.infinity_index();
        row_sums[fidx] = (1 - *total) - acc;
        if (!ok) {
            stream.obstruction =
                "finite-point exponent sums are not integral: no first-derivative-free "
                "equation exists for this representation";
        } else {
            stream = candidate_exponents_rows(target, cfg, row_sums);
        }
    }
    return search_tables(target, cfg, direct, stream, true);
}

VerifyReport verify_witness(const RealizationWitness& w, const MonodromyRep& rep, double tol) {
    if (w.outcome != RealizationWitness::Outcome::Realized || !w.equation)
        throw std::invalid_argument("verify_witness: witness has no equation");
    const RiemannEquation& eq = *w.equation;
    PathPlan plan = plan_loops(eq.divisor);
    double it = std::clamp(tol * 1e-3, 1e-13, 1e-8);
    NumericMonodromy nm = monodromy_of(eq, plan, it);

    double scale = 0.0;
    for (int k = 0; k < 3; ++k)
        scale = std::max({scale, rep.g[k].max_norm(), nm.g[k].max_norm()});

    // conjugation invariants first
    double mis = 0.0;
    mis = std::max(mis, std::abs(rep.g[0].trace() - nm.g[0].trace()));
    mis = std::max(mis, std::abs(rep.g[1].trace() - nm.g[1].trace()));
    mis = std::max(mis, std::abs(rep.g[2].trace() - nm.g[2].trace()));
    mis = std::max(mis, std::abs((rep.g[1] * rep.g[0]).trace() - (nm.g[1] * nm.g[0]).trace()));
    mis = std::max(mis, std::abs(rep.g[0].det() - nm.g[0].det()));
    mis = std::max(mis, std::abs(rep.g[1].det() - nm.g[1].det()));
    VerifyReport rep_out;
    if (mis > 1e3 * tol * (1.0 + scale)) {
        rep_out.ok = false;
        rep_out.residual = mis;
        rep_out.detail = "trace invariants differ";
        return rep_out;
    }

    auto s = simultaneous_conjugator(rep.g[0], rep.g[1], nm.g[0], nm.g[1], tol);
    if (!s) {
        rep_out.ok = false;
        rep_out.residual = mis;
        rep_out.detail = "no conjugator within tolerance";
        return rep_out;
    }
    CMat2 si = s->inverse();
    double res = 0.0;
    for (int k = 0; k < 3; ++k) {
        res = std::max(res, max_diff(*s * rep.g[k] * si, nm.g[k]));
        res = std::max(res, max_diff(si * nm.g[k] * *s, rep.g[k]));
    }
    rep_out.ok = res <= 10.0 * tol * (1.0 + scale);
    rep_out.residual = res;
    rep_out.conjugator = *s;
    rep_out.detail = rep_out.ok ? "verified" : "conjugation residual above tolerance";
    return rep_out;
}

}  // namespace riemann
