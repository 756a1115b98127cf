#include "jdcalc/poly.hpp"
#include "jdcalc/sampler.hpp"

#include <doctest.h>

using namespace jdcalc;

namespace {
Chart xy() { return Chart({"x", "y"}); }
}

TEST_CASE("ring identities") {
    Chart c = xy();
    Poly x = Poly::variable(c, 0);
    Poly one = Poly::constant(c, 1);

    CHECK((x + one) * (x - one) == x * x - one);
    Poly p = parse_poly(c, "3*x^2*y - y + 1/2");
    CHECK(p + Poly::zero(c) == p);
    CHECK(x.scaled(Rational(2, 3)).scaled(Rational(3, 2)) == x);
    CHECK((p - p).is_zero());
}

TEST_CASE("partial derivatives") {
    Chart c = xy();
    Poly x = Poly::variable(c, 0);
    Poly y = Poly::variable(c, 1);

    CHECK((x * x * y).partial(0) == parse_poly(c, "2*x*y"));
    CHECK((x * x).partial(1).is_zero());
    CHECK(parse_poly(c, "x + x^3/3").partial(0) == parse_poly(c, "1 + x^2"));
    // Leibniz rule on random pairs
    Sampler rng(7);
    for (int i = 0; i < 50; ++i) {
        Poly p = rng.poly(c, 3), q = rng.poly(c, 3);
        int v = rng.below(2);
        CHECK((p * q).partial(v) == p.partial(v) * q + p * q.partial(v));
    }
    // mixed partials commute
    for (int i = 0; i < 30; ++i) {
        Poly p = rng.poly(c, 4);
        CHECK(p.partial(0).partial(1) == p.partial(1).partial(0));
    }
}

TEST_CASE("substitute_zero") {
    Chart c({"x", "y", "z"});
    CHECK(parse_poly(c, "x*y + z").substitute_zero({2}) == parse_poly(c, "x*y"));
    CHECK(parse_poly(c, "x^2").substitute_zero({0}).is_zero());
    CHECK(parse_poly(c, "1 + y").substitute_zero({0}) == parse_poly(c, "1 + y"));
}

TEST_CASE("eval") {
    Chart c = xy();
    Poly p = parse_poly(c, "x^2 + y");
    CHECK(p.eval({Rational(2), Rational(3)}) == Rational(7));
    CHECK(Poly::zero(c).eval({Rational(5), Rational(-1)}) == Rational(0));
    Chart c1({"x"});
    CHECK(parse_poly(c1, "x/2").eval({Rational(1, 3)}) == Rational(1, 6));
    // homomorphism property
    Sampler rng(11);
    for (int i = 0; i < 40; ++i) {
        Poly a = rng.poly(c, 3), b = rng.poly(c, 3);
        auto pt = rng.point(c);
        CHECK((a * b).eval(pt) == a.eval(pt) * b.eval(pt));
        CHECK((a + b).eval(pt) == a.eval(pt) + b.eval(pt));
    }
}

TEST_CASE("ring axioms on random polynomials") {
    Chart c({"x", "y", "z", "w"});
    Sampler rng(3);
    for (int i = 0; i < 60; ++i) {
        Poly a = rng.poly(c, 4), b = rng.poly(c, 4), d = rng.poly(c, 4);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK((a + b) + d == a + (b + d));
        CHECK((a * b) * d == a * (b * d));
        CHECK(a * (b + d) == a * b + a * d);
    }
}

TEST_CASE("expression grammar") {
    Chart c = xy();
    CHECK(parse_poly(c, "  ( x + 1 ) * (x-1)") == parse_poly(c, "x^2 - 1"));
    CHECK(parse_poly(c, "2/4") == Poly::constant(c, Rational(1, 2)));
    CHECK(parse_poly(c, "-x^2") == -parse_poly(c, "x^2"));
    CHECK(parse_poly(c, "x/2").scaled(Rational(2)) == Poly::variable(c, 0));
    CHECK_THROWS_AS(parse_poly(c, "x + q"), parse_error);
    CHECK_THROWS_AS(parse_poly(c, "x / y"), parse_error);
    CHECK_THROWS_AS(parse_poly(c, "x ^ -1"), parse_error);
    CHECK_THROWS_AS(parse_poly(c, "1/0"), parse_error);
    CHECK_THROWS_AS(parse_poly(c, "x +"), parse_error);
    CHECK_THROWS_AS(parse_poly(c, "(x"), parse_error);
}

TEST_CASE("canonical rendering round trips") {
    Chart c = xy();
    Sampler rng(19);
    for (int i = 0; i < 40; ++i) {
        Poly p = rng.poly(c, 3);
        CHECK(parse_poly(c, p.str()) == p);
    }
    CHECK(Poly::zero(c).str() == "0");
    CHECK(parse_poly(c, "y - x").str() == "y - x");
}

TEST_CASE("chart validation") {
    CHECK_THROWS_AS(Chart({"x", "x"}), input_error);
    CHECK_THROWS_AS(Chart({"1x"}), input_error);
    CHECK_THROWS_AS(Chart({""}), input_error);
    Chart a({"x", "y"}), b({"y", "x"});
    CHECK(a != b);
    Poly p = Poly::variable(a, 0), q = Poly::variable(b, 0);
    CHECK_THROWS_AS((void)(p + q), input_error);
}
