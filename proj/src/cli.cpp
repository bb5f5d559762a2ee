#include "riemann/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>

#include "riemann/json_io.hpp"

namespace riemann::cli {

namespace {

Complex parse_complex_flag(const std::string& s) {
    // "x" or "x,y"
    auto comma = s.find(',');
    if (comma == std::string::npos) return {std::stod(s), 0.0};
    return {std::stod(s.substr(0, comma)), std::stod(s.substr(comma + 1))};
}

Json read_input(const std::string& path, std::istream& in) {
    if (path.empty() || path == "-") return Json::parse(in);
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("cannot open input file: " + path);
    return Json::parse(f);
}

void emit(const Json& doc, const std::string& output_path, std::ostream& out) {
    if (output_path.empty()) {
        out << doc.dump(2) << "\n";
        return;
    }
    std::ofstream f(output_path);
    if (!f) throw std::invalid_argument("cannot open output file: " + output_path);
    f << doc.dump(2) << "\n";
}

struct CommonOpts {
    std::string input;
    std::string output;
    double tol = 1e-8;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_input = true) {
    if (with_input)
        cmd->add_option("input", o.input, "input JSON file ('-' or absent for stdin)");
    cmd->add_option("--output", o.output, "write the JSON result to a file");
    cmd->add_option("--tol", o.tol, "numerical tolerance");
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
        std::ostream& err) {
    CLI::App app{"Monodromy of second-order equations with three singular points"};
    app.require_subcommand(1);

    CommonOpts classify_o, realize_o, rsl_o, mon_o, fuchs_o;
    long shear_bound = 4, max_candidates = 5000;
    bool verify_infinity = false;
    std::string dump_paths;
    std::string alpha_s = "0", beta_s = "0", gamma_s = "0";
    double hyp_tol = 1e-9;
    std::string hyp_output;
    long fam_k = 0, fam_l = 0;
    std::string fam_output;

    CLI::App* c_classify = app.add_subcommand("classify", "structural class and realizability");
    add_common(c_classify, classify_o);

    CLI::App* c_realize = app.add_subcommand("realize", "witness equation for a representation");
    add_common(c_realize, realize_o);
    c_realize->add_option("--shear-bound", shear_bound, "bound on exponent integer parts");
    c_realize->add_option("--max-candidates", max_candidates, "cap on candidate tables");

    CLI::App* c_rsl =
        app.add_subcommand("rsl", "witness without first-derivative term (SL input)");
    add_common(c_rsl, rsl_o);
    c_rsl->add_option("--shear-bound", shear_bound, "bound on exponent integer parts");
    c_rsl->add_option("--max-candidates", max_candidates, "cap on candidate tables");

    CLI::App* c_mon = app.add_subcommand("monodromy", "numerical monodromy of an equation");
    add_common(c_mon, mon_o);
    mon_o.tol = 1e-10;
    c_mon->add_flag("--verify-infinity", verify_infinity,
                    "cross-check the infinity generator in the 1/z chart");
    c_mon->add_option("--dump-paths", dump_paths, "write continuation points as JSON lines");

    CLI::App* c_hyp = app.add_subcommand("hyp-check", "SL(2,C)/SL(2,Z) test for parameters");
    c_hyp->add_option("--alpha", alpha_s, "alpha ('x' or 'x,y')")->required();
    c_hyp->add_option("--beta", beta_s, "beta")->required();
    c_hyp->add_option("--gamma", gamma_s, "gamma")->required();
    c_hyp->add_option("--tol", hyp_tol, "integrality tolerance");
    c_hyp->add_option("--output", hyp_output, "write the JSON result to a file");

    CLI::App* c_fam = app.add_subcommand("sl2z-family", "integer-monodromy family member");
    c_fam->add_option("--k", fam_k, "trace of the infinity generator")->required();
    c_fam->add_option("--l", fam_l, "integer gamma")->required();
    c_fam->add_option("--output", fam_output, "write the JSON result to a file");

    CLI::App* c_fuchs = app.add_subcommand("fuchs", "exponent sum check");
    add_common(c_fuchs, fuchs_o);

    std::vector<const char*> argv;
    argv.push_back("riemann");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        if (c_classify->parsed()) {
            MonodromyRep rep = rep_from_json(read_input(classify_o.input, in));
            emit(classification_to_json(classify(rep), is_realizable(rep)), classify_o.output,
                 out);
            return 0;
        }
        if (c_realize->parsed() || c_rsl->parsed()) {
            bool rsl_mode = c_rsl->parsed();
            const CommonOpts& o = rsl_mode ? rsl_o : realize_o;
            MonodromyRep rep = rep_from_json(read_input(o.input, in));
            SearchConfig cfg{shear_bound, o.tol, max_candidates};
            RealizationWitness w = rsl_mode ? realize_rsl(rep, cfg) : realize_riemann(rep, cfg);
            emit(witness_to_json(w), o.output, out);
            return w.outcome == RealizationWitness::Outcome::Exhausted ? 1 : 0;
        }
        if (c_mon->parsed()) {
            RiemannEquation eq = equation_from_json(read_input(mon_o.input, in));
            PathPlan plan = plan_loops(eq.divisor);
            if (!dump_paths.empty()) {
                std::ofstream f(dump_paths);
                if (!f) throw std::invalid_argument("cannot open " + dump_paths);
                for (const auto& loop : plan.loops) {
                    TransportTrace trace;
                    transport_ex(eq, loop.segments, mon_o.tol, &trace);
                    for (const auto& z : trace.points) {
                        Json line;
                        line["loop"] = loop.point_index + 1;
                        line["z"] = complex_to_json(z);
                        f << line.dump() << "\n";
                    }
                }
            }
            NumericMonodromy nm = monodromy_of(eq, plan, mon_o.tol);
            Json doc = monodromy_to_json(nm);
            doc["eigenvalue_law_error"] = eigenvalue_law_error(eq, nm);
            // conditioning proxy: eigenvalue agreement degrades with the
            // generator scale near resonant exponents
            double gnorm = 0.0;
            for (const auto& g : nm.g) gnorm = std::max(gnorm, g.max_norm());
            doc["generator_norm_max"] = gnorm;
            if (verify_infinity) {
                InfinityCheck chk = infinity_chart_check(eq, plan, mon_o.tol);
                doc["infinity_check"] =
                    Json{{"deviation", chk.deviation}, {"via_chart", mat_to_json(chk.via_chart)}};
            }
            emit(doc, mon_o.output, out);
            return 0;
        }
        if (c_hyp->parsed()) {
            HypergeometricParams h{parse_complex_flag(alpha_s), parse_complex_flag(beta_s),
                                   parse_complex_flag(gamma_s)};
            emit(sl2z_verdict_to_json(sl2z_criterion(h, hyp_tol)), hyp_output, out);
            return 0;
        }
        if (c_fam->parsed()) {
            emit(family_member_to_json(enumerate_family(fam_k, fam_l)), fam_output, out);
            return 0;
        }
        if (c_fuchs->parsed()) {
            Json j = read_input(fuchs_o.input, in);
            if (!j.contains("exponents")) throw std::invalid_argument("json: missing exponents");
            ExponentTable t = table_from_json(j["exponents"]);
            Complex sum = fuchs_sum(t);
            Json doc;
            doc["fuchs_sum"] = complex_to_json(sum);
            doc["equals_one"] = fuchs_ok(t);
            emit(doc, fuchs_o.output, out);
            return 0;
        }
        err << "error: no subcommand\n";
        return 2;
    } catch (const Json::exception& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace riemann::cli
