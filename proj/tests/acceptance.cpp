// Acceptance suite: one line per criterion, nonzero exit on any failure.
// Usage: acceptance <path-to-jd-binary> <path-to-fixtures-dir>

#include "jdcalc/courant.hpp"
#include "jdcalc/reduce.hpp"
#include "jdcalc/sampler.hpp"

#include <array>
#include <cstdio>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <sys/wait.h>

using namespace jdcalc;

namespace {

std::string g_jd;
std::string g_fixtures;
int g_failures = 0;

void report(int number, const std::string& label, bool pass) {
    std::printf("criterion %2d [%s] %s\n", number, pass ? "PASS" : "FAIL", label.c_str());
    if (!pass) ++g_failures;
}

JacobiStructure contact3() {
    Chart c({"t", "q", "p"});
    MultiVec lam = MultiVec::zero(c, 2);
    lam.set_component({1, 2}, Poly::constant(c, 1));
    lam.set_component({0, 2}, Poly::variable(c, 2));
    return *JacobiStructure::verify(lam, MultiVec::basis(c, {0})).second;
}

JacobiStructure contact5() {
    Chart c({"t", "q1", "p1", "q2", "p2"});
    MultiVec lam = MultiVec::zero(c, 2);
    lam.set_component({1, 2}, Poly::constant(c, 1));
    lam.set_component({0, 2}, Poly::variable(c, 2));
    lam.set_component({3, 4}, Poly::constant(c, 1));
    lam.set_component({0, 4}, Poly::variable(c, 4));
    return *JacobiStructure::verify(lam, MultiVec::basis(c, {0})).second;
}

JacobiStructure poisson2() {
    Chart c({"x", "y"});
    return *JacobiStructure::verify(MultiVec::basis(c, {0, 1}), MultiVec::zero(c, 1)).second;
}

// ---------------------------------------------------------------- 1

bool schouten_suite() {
    Sampler rng(20240501);
    int checked = 0;
    while (checked < 200) {
        int dim = rng.range(2, 4);
        std::vector<std::string> names;
        for (int i = 0; i < dim; ++i) names.push_back("x" + std::to_string(i));
        Chart c(names);
        int p = rng.below(std::min(3, dim) + 1);
        int q = rng.below(std::min(3, dim) + 1);
        int r = rng.below(std::min(3, dim) + 1);
        MultiVec P = rng.multivec(c, p, 2), Q = rng.multivec(c, q, 2), R = rng.multivec(c, r, 2);
        if (schouten(P, Q) !=
            schouten(Q, P).scaled(Rational(((p - 1) * (q - 1)) % 2 == 0 ? -1 : 1)))
            return false;
        MultiVec lhs = schouten(P, schouten(Q, R));
        MultiVec rhs = schouten(schouten(P, Q), R) +
                       schouten(Q, schouten(P, R))
                           .scaled(Rational(((p - 1) * (q - 1)) % 2 == 0 ? 1 : -1));
        if (lhs != rhs) return false;
        if (schouten(P, wedge(Q, R)) !=
            wedge(schouten(P, Q), R) +
                wedge(Q, schouten(P, R)).scaled(Rational(((p - 1) * q) % 2 == 0 ? 1 : -1)))
            return false;
        ++checked;
    }
    return true;
}

// ---------------------------------------------------------------- 2

bool calibration_golden() {
    Chart c({"t", "q", "p"});
    MultiVec lam = MultiVec::zero(c, 2);
    lam.set_component({1, 2}, Poly::constant(c, 1));
    lam.set_component({0, 2}, Poly::variable(c, 2));
    CheckReport ok = jacobi_check(lam, MultiVec::basis(c, {0}));
    if (!ok.passed()) return false;
    if (ok.items[0].details[0].second != "0" || ok.items[1].details[0].second != "0") return false;
    CheckReport bad = jacobi_check(lam, MultiVec::basis(c, {2}));
    if (bad.passed()) return false;
    return bad.items[1].details[0].second == MultiVec::basis(c, {0, 2}).str();
}

// ---------------------------------------------------------------- 3

bool eq7_identity() {
    Sampler rng(7);
    for (const JacobiStructure& j : {contact3(), contact5(), poisson2()}) {
        const Chart& c = j.chart();
        for (int i = 0; i < 40; ++i) {
            Poly f = rng.poly(c, 3), g = rng.poly(c, 3);
            if (jacobi_bracket(j, f, g, BracketMode::crJ) !=
                jacobi_bracket(j, f, g, BracketMode::J))
                return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------- 4

bool courant_suite() {
    if (!axiom_suite(contact3(), 50, 0).passed()) return false;
    if (!axiom_suite(poisson2(), 50, 0).passed()) return false;
    CourantOptions mutated;
    mutated.drop_dphi_term = true;
    return !axiom_suite(contact3(), 10, 0, mutated).passed();
}

// ---------------------------------------------------------------- 5

bool dirac_goldens() {
    JacobiStructure j = contact3();
    const Chart& c = j.chart();
    auto null_pair = [&](std::vector<int> idx) {
        return CharPair(SubbundleSpec::aligned(c, idx), ExtVec::zero(c, 2));
    };
    if (!dirac_criteria(j, null_pair({1})).passed()) return false;
    CheckReport fail_p = dirac_criteria(j, null_pair({2}));
    if (fail_p.passed()) return false;
    ExtVec expected = ExtVec::from_parts(MultiVec::basis(c, {0, 2}), MultiVec::zero(c, 1));
    bool found = false;
    for (const auto& it : fail_p.items)
        if (!it.pass && it.label.find("(iii)") != std::string::npos &&
            it.details[0].second == expected.str())
            found = true;
    if (!found) return false;
    return dirac_criteria(j, CharPair(SubbundleSpec::aligned(c, {}), j.ext_bivector())).passed();
}

// ---------------------------------------------------------------- 6

bool jacobi_algebra_property() {
    JacobiStructure j = contact3();
    const Chart& c = j.chart();
    CharPair pair(SubbundleSpec::aligned(c, {1}), ExtVec::zero(c, 2));
    Sampler rng(6);
    auto admissible_poly = [&]() { return rng.poly(c, 2).substitute_zero({1}); };
    auto dphi = [&](const Poly& f) {
        return ExtForm::from_parts(exterior_derivative(Form::scalar(c, f)), Form::scalar(c, f));
    };
    Poly one = Poly::constant(c, 1);
    for (int i = 0; i < 100; ++i) {
        Poly f = admissible_poly(), g = admissible_poly(), h = admissible_poly();
        Poly fg = l_bracket(j, pair, f, g);
        if (!admissible_check(j, pair, fg).admissible) return false;
        if (!(fg + l_bracket(j, pair, g, f)).is_zero()) return false;
        Poly cyc = l_bracket(j, pair, fg, h) + l_bracket(j, pair, l_bracket(j, pair, g, h), f) +
                   l_bracket(j, pair, l_bracket(j, pair, h, f), g);
        if (!cyc.is_zero()) return false;
        Poly lhs = l_bracket(j, pair, f, g * h);
        Poly rhs = g * l_bracket(j, pair, f, h) + h * fg - g * h * l_bracket(j, pair, f, one);
        if (lhs != rhs) return false;
        // Eq. (19)/(20) agreement: rho_theta of e_f applied to g
        AdmissibleResult af = admissible_check(j, pair, f);
        DoubleSection ef(*af.witness, dphi(f));
        if (rho_theta(j, ef, g) != fg) return false;
        // witness independence under a D perturbation of Y_f
        ExtVec y2 = *af.witness + pair.d.generators[0].scaled(rng.poly(c, 1));
        Poly alt = ext_pairing(dphi(g), y2) + jacobi_bracket(j, f, g);
        if (alt != fg) return false;
    }
    return true;
}

// ---------------------------------------------------------------- 7

bool reduction_golden() {
    JacobiStructure j = contact3();
    const Chart& c = j.chart();
    ReductionReport r =
        quotient_reduce(j, CharPair(SubbundleSpec::aligned(c, {1}), ExtVec::zero(c, 2)));
    if (!r.passed || !r.reduced_chart) return false;
    if (r.reduced_chart->names() != std::vector<std::string>{"t", "p"}) return false;
    Chart sub = *r.reduced_chart;
    MultiVec expect = MultiVec::zero(sub, 2);
    expect.set_component({0, 1}, Poly::variable(sub, 1));
    if (*r.reduced_lambda != expect || *r.reduced_e != MultiVec::basis(sub, {0})) return false;
    if (!jacobi_check(*r.reduced_lambda, *r.reduced_e).passed()) return false;
    auto [rep, jred] = JacobiStructure::verify(*r.reduced_lambda, *r.reduced_e);
    CharPair pair(SubbundleSpec::aligned(c, {1}), ExtVec::zero(c, 2));
    Poly down = jacobi_bracket(*jred, Poly::variable(sub, 0), Poly::variable(sub, 1));
    Poly up = l_bracket(j, pair, Poly::variable(c, 0), Poly::variable(c, 2));
    Poly down_lifted = Poly::zero(c);
    for (const auto& [m, co] : down.terms()) {
        Monomial mm(static_cast<std::size_t>(c.dim()), 0);
        mm[0] = m[0];
        mm[2] = m[1];
        down_lifted.add_term(mm, co);
    }
    return down_lifted == up;
}

// ---------------------------------------------------------------- 8

bool correspondence_roundtrip() {
    struct Fixture {
        JacobiStructure j;
        std::vector<int> d;
        MultiVec lam_q;
        MultiVec e_q;
        bool jacobi_map;   // expect omega = 0 mod D (Cor. C1)
    };
    std::vector<Fixture> fixtures;

    JacobiStructure c3 = contact3();
    Chart sub_tp({"t", "p"});
    {
        MultiVec lam = MultiVec::zero(sub_tp, 2);
        lam.set_component({0, 1}, Poly::variable(sub_tp, 1));
        fixtures.push_back({c3, {1}, lam, MultiVec::basis(sub_tp, {0}), true});
    }
    {
        MultiVec lam = MultiVec::zero(sub_tp, 2);
        lam.set_component({0, 1}, Poly::variable(sub_tp, 1).scaled(Rational(2)));
        fixtures.push_back({c3, {1}, lam, MultiVec::basis(sub_tp, {0}).scaled(Rational(2)),
                            false});
    }
    {
        fixtures.push_back({c3, {1}, MultiVec::zero(sub_tp, 2), MultiVec::basis(sub_tp, {0}),
                            false});
    }
    {
        Chart sub_qp({"q", "p"});
        fixtures.push_back({c3, {0}, MultiVec::basis(sub_qp, {0, 1}), MultiVec::zero(sub_qp, 1),
                            true});
    }
    {
        fixtures.push_back({c3, {}, c3.lambda().scaled(Rational(2)),
                            c3.e_field().scaled(Rational(2)), false});
    }
    {
        // contact5 quotient by both translation directions
        JacobiStructure c5 = contact5();
        Chart sub5({"t", "p1", "p2"});
        MultiVec lam = MultiVec::zero(sub5, 2);
        lam.set_component({0, 1}, Poly::variable(sub5, 1));
        lam.set_component({0, 2}, Poly::variable(sub5, 2));
        fixtures.push_back({c5, {1, 3}, lam, MultiVec::basis(sub5, {0}), true});
    }
    {
        JacobiStructure p2 = poisson2();
        Chart sub_x({"x"});
        fixtures.push_back({p2, {1}, MultiVec::zero(sub_x, 2), MultiVec::zero(sub_x, 1), true});
    }

    for (const auto& fx : fixtures) {
        auto [rep, jq] = JacobiStructure::verify(fx.lam_q, fx.e_q);
        if (!jq) return false;
        SubbundleSpec d = SubbundleSpec::aligned(fx.j.chart(), fx.d);
        CharPair pair = build_l_from_quotient(fx.j, d, *jq);
        if (!dirac_criteria(fx.j, pair).passed()) return false;
        ReductionReport r = quotient_reduce(fx.j, pair);
        if (!r.passed) return false;
        if (*r.reduced_lambda != fx.lam_q || *r.reduced_e != fx.e_q) return false;
        auto [rep2, jq2] = JacobiStructure::verify(*r.reduced_lambda, *r.reduced_e);
        CharPair pair2 = build_l_from_quotient(fx.j, d, *jq2);
        if (!mod_d_reduce(d, pair2.omega - pair.omega).is_zero_mod_d) return false;
        bool null_dirac = mod_d_reduce(d, pair.omega).is_zero_mod_d;
        if (null_dirac != fx.jacobi_map) return false;
    }
    return true;
}

// ---------------------------------------------------------------- 9

bool reduction_theorem_engine() {
    JacobiStructure j = contact5();
    const Chart& c = j.chart();
    SubmanifoldSpec n(c, {3, 4});
    ReductionReport fail = jacobi_reduction(j, n, SubbundleSpec::aligned(c, {}));
    if (fail.passed) return false;
    ReductionReport ok = jacobi_reduction(j, n, SubbundleSpec::aligned(c, {3, 4}));
    if (!ok.passed || !ok.reduced_chart) return false;
    if (ok.reduced_chart->names() != std::vector<std::string>{"t", "q1", "p1"}) return false;
    Chart sub = *ok.reduced_chart;
    MultiVec expect = MultiVec::zero(sub, 2);
    expect.set_component({1, 2}, Poly::constant(sub, 1));
    expect.set_component({0, 2}, Poly::variable(sub, 2));
    return *ok.reduced_lambda == expect && *ok.reduced_e == MultiVec::basis(sub, {0});
}

// ---------------------------------------------------------------- 10

bool symmetry_reduction() {
    JacobiStructure j = contact3();
    const Chart& c = j.chart();
    ReductionReport ok = symmetry_reduce(j, {MultiVec::basis(c, {1})}, SubmanifoldSpec::whole(c));
    if (!ok.passed) return false;
    ReductionReport refused =
        symmetry_reduce(j, {MultiVec::basis(c, {2})}, SubmanifoldSpec::whole(c));
    if (refused.passed) return false;
    if (refused.checks.items.empty()) return false;
    const auto& item = refused.checks.items[0];
    return !item.pass && item.details[0].second == MultiVec::basis(c, {0, 2}).str();
}

// ---------------------------------------------------------------- 11

struct CliResult {
    int exit_code = -1;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    CliResult r;
    std::string cmd = g_jd + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return r;
    std::array<char, 4096> buf{};
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.output.append(buf.data(), got);
    int status = pclose(pipe);
    r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

bool cli_determinism() {
    const std::string fx = g_fixtures + "/";
    std::vector<std::pair<std::string, int>> cases = {
        {"check-jacobi " + fx + "contact3.jd --json", 0},
        {"check-jacobi " + fx + "broken.jd --json", 1},
        {"check-jacobi " + fx + "parse_error.jd --json", 2},
        {"check-dirac " + fx + "contact3.jd --distribution Dq --json", 0},
        {"check-dirac " + fx + "contact3.jd --distribution Dp --json", 1},
        {"check-dirac " + fx + "contact3.jd --omega --json", 0},
        {"bracket " + fx + "contact3.jd --f q --g p --json", 0},
        {"bracket " + fx + "contact3.jd --f q --g p --mode J --json", 0},
        {"bracket " + fx + "contact3.jd --f t --g p --mode L --distribution Dq --json", 0},
        {"courant-axioms " + fx + "poisson2.jd --samples 10 --seed 3 --json", 0},
        {"courant-axioms " + fx + "contact3.jd --samples 10 --seed 3 --json", 0},
        {"reduce " + fx + "contact3.jd --distribution Dq --json", 0},
        {"reduce " + fx + "contact3.jd --submanifold --json", 1},
        {"reduce " + fx + "contact5.jd --distribution D2 --submanifold --json", 0},
        {"reduce " + fx + "contact5.jd --submanifold --json", 1},
        {"build-l " + fx + "scaled_quotient.jd --distribution Dq --json", 0},
        {"symmetry-reduce " + fx + "contact3.jd --fields Dq --json", 0},
        {"symmetry-reduce " + fx + "contact3.jd --fields Dp --json", 1},
    };
    for (const auto& [args, expect_code] : cases) {
        CliResult a = run_cli(args);
        CliResult b = run_cli(args);
        if (a.exit_code != expect_code) {
            std::fprintf(stderr, "  cli: '%s' exited %d, expected %d\n", args.c_str(),
                         a.exit_code, expect_code);
            return false;
        }
        if (a.output != b.output) {
            std::fprintf(stderr, "  cli: '%s' is not byte-deterministic\n", args.c_str());
            return false;
        }
    }
    return true;
}

} // namespace

int main(int argc, char** argv) {
    if (argc >= 2) g_jd = argv[1];
    if (argc >= 3) g_fixtures = argv[2];

    report(1, "Schouten calculus suite: antisymmetry, Jacobi, Leibniz on 200 seeded samples",
           schouten_suite());
    report(2, "calibration golden: contact chart passes, mutated E fails with exact residual",
           calibration_golden());
    report(3, "bracket route identity: crJ and J modes agree on 120 random pairs",
           eq7_identity());
    report(4, "double-structure axiom suite passes; term-dropping mutation is detected",
           courant_suite());
    report(5, "Dirac criteria goldens: Dq passes, Dp fails at (iii) exactly, graph passes",
           dirac_goldens());
    report(6, "bracket of admissible functions is a Jacobi algebra on 100 random triples",
           jacobi_algebra_property());
    report(7, "reduction golden: contact chart quotients to (t,p) with the exact structure",
           reduction_golden());
    report(8, "correspondence roundtrip on 7 fixtures incl. scaled quotient and null-Dirac test",
           correspondence_roundtrip());
    report(9, "reduction engine: contact5 membership fails with D = {}, passes with the block D",
           reduction_theorem_engine());
    report(10, "symmetry reduction: translation reduces, broken direction refused with residual",
           symmetry_reduction());
    if (g_jd.empty() || g_fixtures.empty()) {
        report(11, "CLI determinism and exit codes (skipped: no binary path given)", false);
    } else {
        report(11, "CLI determinism: byte-identical JSON reports, 0/1/2 exit-code contract",
               cli_determinism());
    }
    return g_failures == 0 ? 0 : 1;
}
