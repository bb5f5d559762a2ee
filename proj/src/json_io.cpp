#include "riemann/json_io.hpp"

#include <stdexcept>

namespace riemann {

namespace {

[[noreturn]] void bad(const std::string& what) { throw std::invalid_argument("json: " + what); }

const char* tag_name(RepTag t) {
    switch (t) {
        case RepTag::Irreducible: return "Irreducible";
        case RepTag::Decomposable: return "Decomposable";
        case RepTag::IndecomposableDiagonalizable: return "IndecomposableDiagonalizable";
        case RepTag::AllJordan: return "AllJordan";
    }
    return "unknown";
}

}  // namespace

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        bad("complex numbers are [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

Json mat_to_json(const CMat2& m) {
    Json j = Json::array();
    for (const auto& e : m.e) j.push_back(complex_to_json(e));
    return j;
}

CMat2 mat_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 4) bad("matrices are row-major arrays of 4 complex");
    CMat2 m;
    for (int i = 0; i < 4; ++i) m.e[i] = complex_from_json(j[i]);
    return m;
}

Json point_to_json(const SpherePoint& p) {
    if (p.is_infinity) return Json("inf");
    return complex_to_json(p.z);
}

SpherePoint point_from_json(const Json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() == "inf") return SpherePoint::infinity();
        bad("divisor points are [re, im] or \"inf\"");
    }
    return SpherePoint::finite(complex_from_json(j));
}

Json divisor_to_json(const Divisor& d) {
    Json j = Json::array();
    for (const auto& p : d.points) j.push_back(point_to_json(p));
    return j;
}

Divisor divisor_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) bad("divisor must list three points");
    return Divisor(point_from_json(j[0]), point_from_json(j[1]), point_from_json(j[2]));
}

Json table_to_json(const ExponentTable& t) {
    Json j = Json::array();
    for (const auto& row : t.beta)
        j.push_back(Json::array({complex_to_json(row[0]), complex_to_json(row[1])}));
    return j;
}

ExponentTable table_from_json(const Json& j) {
    if (!j.is_array() || j.size() != 3) bad("exponents must be three pairs");
    ExponentTable t;
    for (int i = 0; i < 3; ++i) {
        if (!j[i].is_array() || j[i].size() != 2) bad("exponents must be three pairs");
        t.beta[i] = {complex_from_json(j[i][0]), complex_from_json(j[i][1])};
    }
    return t;
}

Json equation_to_json(const RiemannEquation& eq) {
    Json j;
    j["divisor"] = divisor_to_json(eq.divisor);
    j["exponents"] = table_to_json(eq.exponents);
    j["resonant"] = eq.resonant;
    return j;
}

RiemannEquation equation_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("divisor") || !j.contains("exponents"))
        bad("equation needs divisor and exponents");
    return build_equation(divisor_from_json(j["divisor"]), table_from_json(j["exponents"]));
}

Json rep_to_json(const MonodromyRep& rep) {
    Json j;
    j["divisor"] = divisor_to_json(rep.divisor);
    j["G1"] = mat_to_json(rep.g[0]);
    j["G2"] = mat_to_json(rep.g[1]);
    j["G3"] = mat_to_json(rep.g[2]);
    return j;
}

MonodromyRep rep_from_json(const Json& j) {
    if (!j.is_object() || !j.contains("G1") || !j.contains("G2"))
        bad("representation needs G1 and G2");
    // default divisor for synthesis when the caller gives none
    Divisor d = j.contains("divisor")
                    ? divisor_from_json(j["divisor"])
                    : Divisor(SpherePoint::finite(-1.0), SpherePoint::finite(1.0),
                              SpherePoint::infinity());
    CMat2 g1 = mat_from_json(j["G1"]);
    CMat2 g2 = mat_from_json(j["G2"]);
    if (j.contains("G3")) return make_rep(g1, g2, mat_from_json(j["G3"]), d);
    return make_rep(g1, g2, d);
}

Json classification_to_json(const RepClass& cls, const RealizabilityVerdict& verdict) {
    Json j;
    j["class"] = tag_name(cls.tag);
    if (cls.tag == RepTag::Decomposable) {
        Json idx = Json::array();
        for (int i : cls.indices) idx.push_back(i + 1);
        j["scalar_indices"] = idx;
    } else if (cls.tag == RepTag::IndecomposableDiagonalizable) {
        Json idx = Json::array();
        for (int i : cls.indices) idx.push_back(i + 1);
        j["diagonalizable_indices"] = idx;
    }
    j["realizable"] = verdict.realizable;
    j["citation"] = criterion_name(verdict.citation);
    j["detail"] = verdict.detail;
    return j;
}

Json monodromy_to_json(const NumericMonodromy& nm) {
    Json j;
    j["G1"] = mat_to_json(nm.g[0]);
    j["G2"] = mat_to_json(nm.g[1]);
    j["G3"] = mat_to_json(nm.g[2]);
    j["residual"] = nm.residual;
    j["tol"] = nm.tol_used;
    j["steps"] = nm.steps;
    return j;
}

Json witness_to_json(const RealizationWitness& w) {
    Json j;
    switch (w.outcome) {
        case RealizationWitness::Outcome::Realized:
            j["equation"] = equation_to_json(*w.equation);
            j["conjugator"] = mat_to_json(*w.conjugator);
            j["residual"] = w.report.residual;
            j["candidates_tried"] = w.report.candidates_tried;
            break;
        case RealizationWitness::Outcome::Refused:
            j["refusal"] = Json{{"theorem", criterion_name(w.refusal->citation)},
                                {"reason", w.refusal->detail}};
            j["candidates_tried"] = w.report.candidates_tried;
            break;
        case RealizationWitness::Outcome::Exhausted:
            j["exhausted"] = Json{{"candidates_tried", w.report.candidates_tried},
                                  {"note", w.note}};
            break;
    }
    return j;
}

Json sl2z_verdict_to_json(const Sl2zVerdict& v) {
    Json j;
    j["in_sl2c"] = v.in_sl2c;
    j["in_sl2z"] = v.in_sl2z;
    if (v.k) j["k"] = *v.k;
    j["b"] = complex_to_json(v.b);
    j["k_distance"] = v.k_distance;
    if (v.conjugator) j["conjugator"] = mat_to_json(*v.conjugator);
    return j;
}

Json family_member_to_json(const FamilyMember& m) {
    Json j;
    j["k"] = m.k;
    j["l"] = m.l;
    j["alpha"] = complex_to_json(m.params.alpha);
    j["beta"] = complex_to_json(m.params.beta);
    j["gamma"] = complex_to_json(m.params.gamma);
    j["equation"] = equation_to_json(m.equation);
    return j;
}

}  // namespace riemann
