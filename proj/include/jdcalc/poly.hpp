#pragma once

#include "jdcalc/chart.hpp"
#include "jdcalc/rational.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace jdcalc {

/// Exponent vector, dense, length = chart dimension.
using Monomial = std::vector<unsigned>;

/// Exact multivariate polynomial over the rationals in the chart variables.
/// Canonical form: no stored zero coefficients; equality is map equality.
class Poly {
public:
    Poly() = default;
    explicit Poly(Chart chart) : chart_(std::move(chart)) {}

    static Poly zero(const Chart& chart) { return Poly(chart); }
    static Poly constant(const Chart& chart, Rational c);
    static Poly variable(const Chart& chart, int i);

    const Chart& chart() const { return chart_; }
    const std::map<Monomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    /// Constant term (the coefficient of the unit monomial).
    Rational constant_value() const;

    Poly operator-() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly& operator+=(const Poly& o) { return *this = *this + o; }
    Poly& operator-=(const Poly& o) { return *this = *this - o; }

    Poly scaled(const Rational& c) const;
    Poly pow(unsigned n) const;

    bool operator==(const Poly& o) const { return chart_ == o.chart_ && terms_ == o.terms_; }
    bool operator!=(const Poly& o) const { return !(*this == o); }

    Poly partial(int var) const;
    Poly substitute_zero(const std::set<int>& vars) const;
    Rational eval(const std::vector<Rational>& point) const;

    /// Total degree; -1 for the zero polynomial.
    int degree() const;

    /// True iff no term involves any of the given variables.
    bool independent_of(const std::set<int>& vars) const;

    /// Canonical ASCII rendering, e.g. "2*t*p^2 - q + 1/2".
    std::string str() const;

    void add_term(const Monomial& m, const Rational& c);

private:
    Chart chart_;
    std::map<Monomial, Rational> terms_;
};

inline Poly operator*(const Rational& c, const Poly& p) { return p.scaled(c); }

/// Parses the CLI polynomial expression grammar over the chart:
/// identifiers, integer / rational literals, + - * / ^ and parentheses.
/// '/' requires a nonzero constant divisor; '^' a non-negative integer
/// exponent. Offsets in errors are 0-based character positions.
Poly parse_poly(const Chart& chart, std::string_view text);

} // namespace jdcalc
