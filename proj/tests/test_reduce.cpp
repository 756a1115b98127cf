#include "jdcalc/reduce.hpp"
#include "jdcalc/sampler.hpp"

#include <doctest.h>

using namespace jdcalc;

namespace {

JacobiStructure contact3() {
    Chart c({"t", "q", "p"});
    MultiVec lam = MultiVec::zero(c, 2);
    lam.set_component({1, 2}, Poly::constant(c, 1));
    lam.set_component({0, 2}, Poly::variable(c, 2));
    auto [report, j] = JacobiStructure::verify(lam, MultiVec::basis(c, {0}));
    REQUIRE(j.has_value());
    return *j;
}

JacobiStructure contact5() {
    Chart c({"t", "q1", "p1", "q2", "p2"});
    MultiVec lam = MultiVec::zero(c, 2);
    lam.set_component({1, 2}, Poly::constant(c, 1));
    lam.set_component({0, 2}, Poly::variable(c, 2));
    lam.set_component({3, 4}, Poly::constant(c, 1));
    lam.set_component({0, 4}, Poly::variable(c, 4));
    auto [report, j] = JacobiStructure::verify(lam, MultiVec::basis(c, {0}));
    REQUIRE(j.has_value());
    return *j;
}

CharPair null_pair(const JacobiStructure& j, const std::vector<int>& idx) {
    return CharPair(SubbundleSpec::aligned(j.chart(), idx), ExtVec::zero(j.chart(), 2));
}

} // namespace

TEST_CASE("quotient_reduce golden: contact3 by Dq") {
    JacobiStructure j = contact3();
    ReductionReport r = quotient_reduce(j, null_pair(j, {1}));
    REQUIRE(r.passed);
    REQUIRE(r.reduced_chart.has_value());
    CHECK(r.reduced_chart->names() == std::vector<std::string>{"t", "p"});
    Chart sub = *r.reduced_chart;
    MultiVec expect_lam = MultiVec::zero(sub, 2);
    expect_lam.set_component({0, 1}, Poly::variable(sub, 1));
    CHECK(*r.reduced_lambda == expect_lam);
    CHECK(*r.reduced_e == MultiVec::basis(sub, {0}));
}

TEST_CASE("quotient_reduce by Dt gives a Poisson structure") {
    JacobiStructure j = contact3();
    ReductionReport r = quotient_reduce(j, null_pair(j, {0}));
    REQUIRE(r.passed);
    CHECK(r.reduced_chart->names() == std::vector<std::string>{"q", "p"});
    Chart sub = *r.reduced_chart;
    CHECK(*r.reduced_lambda == MultiVec::basis(sub, {0, 1}));
    CHECK(r.reduced_e->is_zero());
}

TEST_CASE("quotient_reduce by Dp gives a degenerate structure") {
    JacobiStructure j = contact3();
    // criteria (iii) fails for D = span{(dp,0)}, so the pipeline reports it
    ReductionReport r = quotient_reduce(j, null_pair(j, {2}));
    CHECK_FALSE(r.passed);
}

TEST_CASE("quotient_reduce graph case adds the omega structure") {
    JacobiStructure j = contact3();
    Chart c = j.chart();
    // Omega = (Lambda, E): reduced structure = (2 Lambda, 2 E) on the same chart
    ReductionReport r = quotient_reduce(j, CharPair(SubbundleSpec::aligned(c, {}),
                                                    j.ext_bivector()));
    REQUIRE(r.passed);
    CHECK(*r.reduced_chart == c);
    CHECK(*r.reduced_lambda == j.lambda().scaled(Rational(2)));
    CHECK(*r.reduced_e == j.e_field().scaled(Rational(2)));
}

TEST_CASE("build_l_from_quotient roundtrips") {
    JacobiStructure j = contact3();
    Chart c = j.chart();
    SubbundleSpec dq = SubbundleSpec::aligned(c, {1});
    Chart sub({"t", "p"});

    SUBCASE("jacobi map case: omega vanishes mod D") {
        MultiVec lam_q = MultiVec::zero(sub, 2);
        lam_q.set_component({0, 1}, Poly::variable(sub, 1));
        auto [rep, jq] = JacobiStructure::verify(lam_q, MultiVec::basis(sub, {0}));
        REQUIRE(jq.has_value());
        CharPair pair = build_l_from_quotient(j, dq, *jq);
        CHECK(mod_d_reduce(pair.d, pair.omega).is_zero_mod_d);
        ReductionReport r = quotient_reduce(j, pair);
        REQUIRE(r.passed);
        CHECK(*r.reduced_lambda == lam_q);
        CHECK(*r.reduced_e == MultiVec::basis(sub, {0}));
    }

    SUBCASE("scaled quotient needs a nonzero omega") {
        MultiVec lam_q = MultiVec::zero(sub, 2);
        lam_q.set_component({0, 1}, Poly::variable(sub, 1).scaled(Rational(2)));
        auto [rep, jq] = JacobiStructure::verify(lam_q, MultiVec::basis(sub, {0}).scaled(Rational(2)));
        REQUIRE(jq.has_value());
        CharPair pair = build_l_from_quotient(j, dq, *jq);
        CHECK_FALSE(mod_d_reduce(pair.d, pair.omega).is_zero_mod_d);
        // expected lift: (p @t^@p, @t)
        Chart big = c;
        MultiVec expect = MultiVec::zero(big, 2);
        expect.set_component({0, 2}, Poly::variable(big, 2));
        CHECK(pair.omega.pure() == expect);
        CHECK(pair.omega.epart() == MultiVec::basis(big, {0}));
        ReductionReport r = quotient_reduce(j, pair);
        REQUIRE(r.passed);
        CHECK(*r.reduced_lambda == lam_q);
        CHECK(*r.reduced_e == MultiVec::basis(sub, {0}).scaled(Rational(2)));
    }

    SUBCASE("graph case D = {}") {
        // J' = (2 Lambda, 2 E): omega = difference = (Lambda, E)
        auto [rep, j2] = JacobiStructure::verify(j.lambda().scaled(Rational(2)),
                                                 j.e_field().scaled(Rational(2)));
        REQUIRE(j2.has_value());
        CharPair pair = build_l_from_quotient(j, SubbundleSpec::aligned(c, {}), *j2);
        CHECK(pair.omega == j.ext_bivector());
        ReductionReport r = quotient_reduce(j, pair);
        REQUIRE(r.passed);
        CHECK(*r.reduced_lambda == j.lambda().scaled(Rational(2)));
    }
}

TEST_CASE("jacobi_reduction on contact5") {
    JacobiStructure j = contact5();
    Chart c = j.chart();
    SubmanifoldSpec n(c, {3, 4});   // q2 = p2 = 0

    // with D = {} the membership condition fails
    ReductionReport fail = jacobi_reduction(j, n, SubbundleSpec::aligned(c, {}));
    CHECK_FALSE(fail.passed);

    // with D = span{(dq2,0),(dp2,0)} it reduces to contact3
    ReductionReport ok = jacobi_reduction(j, n, SubbundleSpec::aligned(c, {3, 4}));
    REQUIRE(ok.passed);
    CHECK(ok.reduced_chart->names() == std::vector<std::string>{"t", "q1", "p1"});
    Chart sub = *ok.reduced_chart;
    MultiVec expect = MultiVec::zero(sub, 2);
    expect.set_component({1, 2}, Poly::constant(sub, 1));
    expect.set_component({0, 2}, Poly::variable(sub, 2));
    CHECK(*ok.reduced_lambda == expect);
    CHECK(*ok.reduced_e == MultiVec::basis(sub, {0}));
}

TEST_CASE("jacobi_reduction negative golden on contact3") {
    JacobiStructure j = contact3();
    Chart c = j.chart();
    // N = {p = 0}, D = {}: Lambda#(dq)|N = @p is not tangent
    ReductionReport r = jacobi_reduction(j, SubmanifoldSpec(c, {2}),
                                         SubbundleSpec::aligned(c, {}));
    CHECK_FALSE(r.passed);
}

TEST_CASE("jacobi_reduction with N = M reproduces the quotient") {
    JacobiStructure j = contact3();
    Chart c = j.chart();
    ReductionReport r = jacobi_reduction(j, SubmanifoldSpec::whole(c),
                                         SubbundleSpec::aligned(c, {1}));
    REQUIRE(r.passed);
    CHECK(r.reduced_chart->names() == std::vector<std::string>{"t", "p"});
    Chart sub = *r.reduced_chart;
    MultiVec expect = MultiVec::zero(sub, 2);
    expect.set_component({0, 1}, Poly::variable(sub, 1));
    CHECK(*r.reduced_lambda == expect);
}

TEST_CASE("submanifold conditions") {
    SUBCASE("case a fails for the Poisson plane with N = {y=0}") {
        Chart c({"x", "y"});
        auto [rep, j] = JacobiStructure::verify(MultiVec::basis(c, {0, 1}), MultiVec::zero(c, 1));
        REQUIRE(j.has_value());
        CheckReport r = submanifold_conditions(*j, SubmanifoldSpec(c, {1}),
                                               SubmanifoldCase::first_kind);
        CHECK_FALSE(r.passed());
    }
    SUBCASE("case a passes trivially for N = M") {
        JacobiStructure j = contact3();
        CheckReport r = submanifold_conditions(j, SubmanifoldSpec::whole(j.chart()),
                                               SubmanifoldCase::first_kind);
        CHECK(r.passed());
    }
    SUBCASE("case b fails on contact3 with N = {p=0}") {
        JacobiStructure j = contact3();
        CheckReport r = submanifold_conditions(j, SubmanifoldSpec(j.chart(), {2}),
                                               SubmanifoldCase::coisotropic_b);
        CHECK_FALSE(r.passed());
    }
}

TEST_CASE("symmetry_reduce") {
    JacobiStructure j = contact3();
    Chart c = j.chart();

    SUBCASE("translation along q reduces") {
        ReductionReport r =
            symmetry_reduce(j, {MultiVec::basis(c, {1})}, SubmanifoldSpec::whole(c));
        REQUIRE(r.passed);
        CHECK(r.reduced_chart->names() == std::vector<std::string>{"t", "p"});
    }

    SUBCASE("the p direction is refused with the exact residual") {
        ReductionReport r =
            symmetry_reduce(j, {MultiVec::basis(c, {2})}, SubmanifoldSpec::whole(c));
        CHECK_FALSE(r.passed);
        REQUIRE_FALSE(r.checks.items.empty());
        CHECK(r.checks.items[0].details[0].second == MultiVec::basis(c, {0, 2}).str());
    }

    SUBCASE("two commuting translations on contact5") {
        JacobiStructure j5 = contact5();
        Chart c5 = j5.chart();
        ReductionReport r = symmetry_reduce(j5, {MultiVec::basis(c5, {1}), MultiVec::basis(c5, {3})},
                                            SubmanifoldSpec::whole(c5));
        REQUIRE(r.passed);
        CHECK(r.reduced_chart->names() == std::vector<std::string>{"t", "p1", "p2"});
    }

    SUBCASE("non-coordinate invariant fields verify but do not reduce") {
        // the Reeb direction as a scaled field is still a symmetry but not a
        // coordinate frame after scaling by a constant polynomial != 1
        MultiVec x = MultiVec::basis(c, {0}).scaled(Rational(2));
        ReductionReport r = symmetry_reduce(j, {x}, SubmanifoldSpec::whole(c));
        CHECK_FALSE(r.passed);
        CHECK(r.checks.items[0].pass);   // invariance holds
    }
}

TEST_CASE("compatibility of the difference structure (graph case)") {
    JacobiStructure j = contact3();
    Chart c = j.chart();
    auto [rep, j2] = JacobiStructure::verify(j.lambda().scaled(Rational(2)),
                                             j.e_field().scaled(Rational(2)));
    REQUIRE(j2.has_value());
    // difference (Lambda' - Lambda, E' - E) passes jacobi_check
    CHECK(jacobi_check(j2->lambda() - j.lambda(), j2->e_field() - j.e_field()).passed());
    // sum-bracket relation: {f,g}_L = {f,g}_(L',E') + {f,g}_(L,E) with
    // Omega the difference
    CharPair pair = build_l_from_quotient(j, SubbundleSpec::aligned(c, {}), *j2);
    auto [repd, jd] = JacobiStructure::verify(pair.omega.pure(), pair.omega.epart());
    REQUIRE(jd.has_value());
    Sampler rng(9);
    for (int i = 0; i < 10; ++i) {
        Poly f = rng.poly(c, 2), g = rng.poly(c, 2);
        CHECK(l_bracket(j, pair, f, g) ==
              jacobi_bracket(*jd, f, g) + jacobi_bracket(j, f, g));
    }
}
