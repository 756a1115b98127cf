#include "jdcalc/run.hpp"

#include "jdcalc/courant.hpp"
#include "jdcalc/reduce.hpp"
#include "jdcalc/structure_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <sstream>

namespace jdcalc {

namespace {

using Json = nlohmann::ordered_json;

Json components_json(const Chart& chart, const MultiVec& v) {
    Json out = Json::object();
    for (const auto& [t, c] : v.components()) {
        std::string key = "(";
        for (std::size_t i = 0; i < t.size(); ++i) {
            if (i) key += ",";
            key += chart.name(t[i]);
        }
        key += ")";
        out[key] = c.str();
    }
    return out;
}

Json ext_json(const ExtVec& v) {
    Json out = Json::object();
    out["pure"] = components_json(v.chart(), v.pure());
    out["epart"] = components_json(v.chart(), v.epart());
    return out;
}

Json report_json(const CheckReport& r) {
    Json checks = Json::array();
    for (const auto& it : r.items) {
        Json c = Json::object();
        c["label"] = it.label;
        c["pass"] = it.pass;
        Json details = Json::object();
        for (const auto& [k, v] : it.details) details[k] = v;
        c["details"] = details;
        checks.push_back(c);
    }
    return checks;
}

struct Command {
    std::string name;
    std::string file;
    bool json = false;
    Json out = Json::object();
    std::ostringstream text;
    bool pass = true;

    void begin(const std::string& cmd, const std::string& path) {
        name = cmd;
        file = path;
        out["command"] = cmd;
        out["file"] = path;
        text << cmd << " " << path << "\n";
    }
    void add_report(const CheckReport& r) {
        if (r.seed) out["seed"] = *r.seed;
        if (r.samples) out["samples"] = *r.samples;
        if (!out.contains("checks")) out["checks"] = Json::array();
        for (const auto& c : report_json(r)) out["checks"].push_back(c);
        text << r.text();
        pass = pass && r.passed();
    }
    int finish(std::string& output) {
        out["pass"] = pass;
        if (json) {
            output = out.dump(2) + "\n";
        } else {
            text << "RESULT: " << (pass ? "PASS" : "FAIL") << "\n";
            output = text.str();
        }
        return pass ? 0 : 1;
    }
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot read file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

StructureFile load(const std::string& path) {
    return parse_structure_file(read_file(path));
}

std::pair<CheckReport, std::optional<JacobiStructure>> verify_jacobi(const StructureFile& sf) {
    if (!sf.lambda && !sf.e_field)
        throw input_error("no [jacobi] block in the structure file");
    MultiVec lam = sf.lambda ? *sf.lambda : MultiVec::zero(sf.chart, 2);
    MultiVec e = sf.e_field ? *sf.e_field : MultiVec::zero(sf.chart, 1);
    return JacobiStructure::verify(lam, e);
}

SubbundleSpec pick_distribution(const StructureFile& sf, const std::string& name) {
    if (name.empty()) return SubbundleSpec::aligned(sf.chart, {});
    auto it = sf.distributions.find(name);
    if (it == sf.distributions.end())
        throw input_error("no [distribution " + name + "] block in the structure file");
    return it->second.to_spec(sf.chart);
}

ExtVec pick_omega(const StructureFile& sf, bool use_omega) {
    if (!use_omega) return ExtVec::zero(sf.chart, 2);
    if (!sf.omega) throw input_error("--omega given but the file has no [omega] block");
    return *sf.omega;
}

void add_reduced(Command& cmd, const ReductionReport& r) {
    cmd.add_report(r.checks);
    cmd.pass = cmd.pass && r.passed;
    if (r.reduced_chart) {
        Json red = Json::object();
        Json vars = Json::array();
        for (int i = 0; i < r.reduced_chart->dim(); ++i) vars.push_back(r.reduced_chart->name(i));
        red["chart"] = vars;
        red["lambda"] = components_json(*r.reduced_chart, *r.reduced_lambda);
        red["e"] = components_json(*r.reduced_chart, *r.reduced_e);
        cmd.out["reduced"] = red;
        cmd.text << "reduced chart:";
        for (int i = 0; i < r.reduced_chart->dim(); ++i)
            cmd.text << " " << r.reduced_chart->name(i);
        cmd.text << "\nreduced lambda: " << r.reduced_lambda->str() << "\n";
        cmd.text << "reduced e: " << r.reduced_e->str() << "\n";
    }
}

int run_impl(const std::vector<std::string>& args, std::string& output) {
    CLI::App app{"exact Jacobi/Dirac structure calculus on polynomial charts"};
    app.require_subcommand(1);
    app.fallthrough();
    bool json = false;
    app.add_flag("--json", json, "emit a machine-readable JSON report");

    std::string file, dist_name, fields_name, f_expr, g_expr, mode = "crJ";
    bool use_omega = false, use_submanifold = false;
    int samples = 50;
    std::uint64_t seed = 0;

    auto* check_jacobi = app.add_subcommand("check-jacobi", "verify the defining identities");
    check_jacobi->add_option("file", file, "structure file")->required();

    auto* check_dirac =
        app.add_subcommand("check-dirac", "isotropy and integrability criteria for L");
    check_dirac->add_option("file", file, "structure file")->required();
    check_dirac->add_option("--distribution", dist_name, "distribution block to use as D");
    check_dirac->add_flag("--omega", use_omega, "use the [omega] block as Omega");

    auto* bracket = app.add_subcommand("bracket", "evaluate a function bracket");
    bracket->add_option("file", file, "structure file")->required();
    bracket->add_option("--f", f_expr, "first argument")->required();
    bracket->add_option("--g", g_expr, "second argument")->required();
    bracket->add_option("--mode", mode, "crJ | J | L (default crJ)");
    bracket->add_option("--distribution", dist_name, "distribution for mode L");
    bracket->add_flag("--omega", use_omega, "use the [omega] block for mode L");

    auto* courant = app.add_subcommand("courant-axioms", "double-structure axiom suite");
    courant->add_option("file", file, "structure file")->required();
    courant->add_option("--samples", samples, "number of random section triples (default 50)");
    courant->add_option("--seed", seed, "sampler seed (default 0)");

    auto* reduce = app.add_subcommand("reduce", "quotient / submanifold reduction");
    reduce->add_option("file", file, "structure file")->required();
    reduce->add_option("--distribution", dist_name, "distribution block to use as D");
    reduce->add_flag("--omega", use_omega, "use the [omega] block as Omega");
    reduce->add_flag("--submanifold", use_submanifold,
                     "restrict to the [submanifold] block before quotienting");

    auto* buildl = app.add_subcommand("build-l", "characteristic pair from a quotient structure");
    buildl->add_option("file", file, "structure file with a [quotient] block")->required();
    buildl->add_option("--distribution", dist_name, "distribution block to use as D");

    auto* symred = app.add_subcommand("symmetry-reduce", "reduction by fundamental vector fields");
    symred->add_option("file", file, "structure file")->required();
    symred->add_option("--fields", fields_name, "distribution block holding the fields")
        ->required();
    symred->add_flag("--submanifold", use_submanifold, "restrict to the [submanifold] block");

    std::vector<std::string> argv_rev(args.rbegin(), args.rend());
    try {
        app.parse(argv_rev);
    } catch (const CLI::CallForHelp& e) {
        std::ostringstream help;
        help << app.help();
        output = help.str();
        return 0;
    } catch (const CLI::ParseError& e) {
        output = std::string("error: ") + e.what() + "\n";
        return 2;
    }

    Command cmd;
    cmd.json = json;

    if (check_jacobi->parsed()) {
        cmd.begin("check-jacobi", file);
        StructureFile sf = load(file);
        auto [report, j] = verify_jacobi(sf);
        cmd.add_report(report);
        return cmd.finish(output);
    }

    if (check_dirac->parsed()) {
        cmd.begin("check-dirac", file);
        StructureFile sf = load(file);
        auto [report, j] = verify_jacobi(sf);
        cmd.add_report(report);
        if (!j) return cmd.finish(output);
        CharPair pair(pick_distribution(sf, dist_name), pick_omega(sf, use_omega));
        CheckReport iso;
        iso.title = "isotropy";
        iso.add("L is maximal isotropic", isotropy_check(pair));
        cmd.add_report(iso);
        cmd.add_report(dirac_criteria(*j, pair));
        CheckReport ce;
        ce.title = "characteristic equations";
        ce.seed = pair.d.seed;
        ce.samples = pair.d.samples;
        ce.add("projections and intersections match (sampled)",
               characteristic_equations_check(pair));
        cmd.add_report(ce);
        return cmd.finish(output);
    }

    if (bracket->parsed()) {
        cmd.begin("bracket", file);
        StructureFile sf = load(file);
        auto [report, j] = verify_jacobi(sf);
        if (!j) {
            cmd.add_report(report);
            return cmd.finish(output);
        }
        Poly f = parse_poly(sf.chart, f_expr);
        Poly g = parse_poly(sf.chart, g_expr);
        Poly value(sf.chart);
        if (mode == "crJ") {
            value = jacobi_bracket(*j, f, g, BracketMode::crJ);
        } else if (mode == "J") {
            value = jacobi_bracket(*j, f, g, BracketMode::J);
        } else if (mode == "L") {
            CharPair pair(pick_distribution(sf, dist_name), pick_omega(sf, use_omega));
            value = l_bracket(*j, pair, f, g);
        } else {
            throw input_error("unknown bracket mode '" + mode + "'");
        }
        cmd.out["mode"] = mode;
        cmd.out["f"] = f_expr;
        cmd.out["g"] = g_expr;
        cmd.out["result"] = value.str();
        cmd.text << "{" << f_expr << ", " << g_expr << "}_" << mode << " = " << value.str()
                 << "\n";
        return cmd.finish(output);
    }

    if (courant->parsed()) {
        cmd.begin("courant-axioms", file);
        StructureFile sf = load(file);
        auto [report, j] = verify_jacobi(sf);
        cmd.add_report(report);
        if (!j) return cmd.finish(output);
        cmd.add_report(axiom_suite(*j, samples, seed));
        return cmd.finish(output);
    }

    if (reduce->parsed()) {
        cmd.begin("reduce", file);
        StructureFile sf = load(file);
        auto [report, j] = verify_jacobi(sf);
        cmd.add_report(report);
        if (!j) return cmd.finish(output);
        SubbundleSpec d = pick_distribution(sf, dist_name);
        if (use_submanifold) {
            if (!sf.submanifold)
                throw input_error("--submanifold given but the file has no [submanifold] block");
            add_reduced(cmd, jacobi_reduction(*j, SubmanifoldSpec(sf.chart, *sf.submanifold), d));
        } else {
            CharPair pair(std::move(d), pick_omega(sf, use_omega));
            add_reduced(cmd, quotient_reduce(*j, pair));
        }
        return cmd.finish(output);
    }

    if (buildl->parsed()) {
        cmd.begin("build-l", file);
        StructureFile sf = load(file);
        auto [report, j] = verify_jacobi(sf);
        cmd.add_report(report);
        if (!j) return cmd.finish(output);
        if (!sf.quotient_chart) throw input_error("build-l needs a [quotient] block");
        auto [qreport, jq] = JacobiStructure::verify(
            sf.quotient_lambda ? *sf.quotient_lambda : MultiVec::zero(*sf.quotient_chart, 2),
            sf.quotient_e ? *sf.quotient_e : MultiVec::zero(*sf.quotient_chart, 1));
        CheckReport qtitled = qreport;
        qtitled.title = "jacobi_check (quotient structure)";
        cmd.add_report(qtitled);
        if (!jq) return cmd.finish(output);
        SubbundleSpec d = pick_distribution(sf, dist_name);
        CharPair pair = build_l_from_quotient(*j, d, *jq);
        cmd.out["omega"] = ext_json(pair.omega);
        cmd.text << "omega: " << pair.omega.str() << "\n";
        cmd.add_report(dirac_criteria(*j, pair));
        ReductionReport round = quotient_reduce(*j, pair);
        CheckReport rt;
        rt.title = "roundtrip";
        bool same = round.passed && round.reduced_lambda == sf.quotient_lambda &&
                    round.reduced_e == sf.quotient_e;
        rt.add("quotient_reduce(build_l(...)) reproduces the quotient structure", same);
        cmd.add_report(rt);
        return cmd.finish(output);
    }

    if (symred->parsed()) {
        cmd.begin("symmetry-reduce", file);
        StructureFile sf = load(file);
        auto [report, j] = verify_jacobi(sf);
        cmd.add_report(report);
        if (!j) return cmd.finish(output);
        auto it = sf.distributions.find(fields_name);
        if (it == sf.distributions.end())
            throw input_error("no [distribution " + fields_name + "] block in the structure file");
        std::vector<MultiVec> fields;
        for (const auto& g : it->second.generators) {
            if (!g.epart().is_zero())
                throw input_error("fundamental fields must have zero e-part");
            fields.push_back(g.pure());
        }
        SubmanifoldSpec n = use_submanifold && sf.submanifold
                                ? SubmanifoldSpec(sf.chart, *sf.submanifold)
                                : SubmanifoldSpec::whole(sf.chart);
        add_reduced(cmd, symmetry_reduce(*j, fields, n));
        return cmd.finish(output);
    }

    output = "error: no subcommand\n";
    return 2;
}

} // namespace

RunResult run_command(const std::vector<std::string>& args) {
    RunResult r;
    try {
        r.exit_code = run_impl(args, r.output);
    } catch (const parse_error& e) {
        r.output = std::string("input error: ") + e.what() + "\n";
        r.exit_code = 2;
    } catch (const not_verified_error& e) {
        r.output = std::string("input error: ") + e.what() + "\n";
        r.exit_code = 2;
    } catch (const input_error& e) {
        r.output = std::string("input error: ") + e.what() + "\n";
        r.exit_code = 2;
    } catch (const std::exception& e) {
        r.output = std::string("error: ") + e.what() + "\n";
        r.exit_code = 2;
    }
    return r;
}

} // namespace jdcalc
