#include "jdcalc/poly.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace jdcalc {

Rational rational_pow(const Rational& base, unsigned exp) {
    Rational r = 1;
    for (unsigned i = 0; i < exp; ++i) r *= base;
    return r;
}

// ---------------------------------------------------------------- Chart

bool Chart::valid_identifier(std::string_view s) {
    if (s.empty()) return false;
    if (!std::isalpha(static_cast<unsigned char>(s[0]))) return false;
    for (char c : s.substr(1))
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
    return true;
}

Chart::Chart(std::vector<std::string> names) {
    for (const auto& n : names)
        if (!valid_identifier(n))
            throw input_error("invalid chart variable name '" + n + "'");
    std::set<std::string> seen(names.begin(), names.end());
    if (seen.size() != names.size()) throw input_error("duplicate chart variable name");
    if (names.empty()) throw input_error("chart must have at least one variable");
    names_ = std::make_shared<const std::vector<std::string>>(std::move(names));
}

const std::string& Chart::name(int i) const {
    if (i < 0 || i >= dim()) throw input_error("chart variable index out of range");
    return (*names_)[static_cast<std::size_t>(i)];
}

std::optional<int> Chart::index_of(std::string_view name) const {
    for (int i = 0; i < dim(); ++i)
        if ((*names_)[static_cast<std::size_t>(i)] == name) return i;
    return std::nullopt;
}

Chart Chart::sub_chart(const std::vector<int>& keep) const {
    std::vector<std::string> names;
    names.reserve(keep.size());
    for (int i : keep) names.push_back(name(i));
    return Chart(std::move(names));
}

// ---------------------------------------------------------------- Poly

void Poly::add_term(const Monomial& m, const Rational& c) {
    if (static_cast<int>(m.size()) != chart_.dim())
        throw input_error("monomial length does not match chart dimension");
    if (c == 0) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
        terms_.emplace(m, c);
    } else {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Poly Poly::constant(const Chart& chart, Rational c) {
    Poly p(chart);
    p.add_term(Monomial(static_cast<std::size_t>(chart.dim()), 0), c);
    return p;
}

Poly Poly::variable(const Chart& chart, int i) {
    if (i < 0 || i >= chart.dim()) throw input_error("variable index out of range");
    Poly p(chart);
    Monomial m(static_cast<std::size_t>(chart.dim()), 0);
    m[static_cast<std::size_t>(i)] = 1;
    p.add_term(m, 1);
    return p;
}

bool Poly::is_constant() const {
    if (terms_.empty()) return true;
    if (terms_.size() != 1) return false;
    const auto& m = terms_.begin()->first;
    return std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; });
}

Rational Poly::constant_value() const {
    Monomial unit(static_cast<std::size_t>(chart_.dim()), 0);
    auto it = terms_.find(unit);
    return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::operator-() const {
    Poly r(chart_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Poly Poly::operator+(const Poly& o) const {
    require_same_chart(chart_, o.chart_, "poly add");
    Poly r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
    require_same_chart(chart_, o.chart_, "poly mul");
    Poly r(chart_);
    for (const auto& [ma, ca] : terms_) {
        for (const auto& [mb, cb] : o.terms_) {
            Monomial m(ma.size());
            for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
            r.add_term(m, ca * cb);
        }
    }
    return r;
}

Poly Poly::scaled(const Rational& c) const {
    Poly r(chart_);
    if (c == 0) return r;
    for (const auto& [m, v] : terms_) r.terms_.emplace(m, v * c);
    return r;
}

Poly Poly::pow(unsigned n) const {
    Poly r = Poly::constant(chart_, 1);
    for (unsigned i = 0; i < n; ++i) r = r * *this;
    return r;
}

Poly Poly::partial(int var) const {
    if (var < 0 || var >= chart_.dim()) throw input_error("partial: variable index out of range");
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        unsigned e = m[static_cast<std::size_t>(var)];
        if (e == 0) continue;
        Monomial m2 = m;
        m2[static_cast<std::size_t>(var)] = e - 1;
        r.add_term(m2, c * Rational(e));
    }
    return r;
}

Poly Poly::substitute_zero(const std::set<int>& vars) const {
    for (int v : vars)
        if (v < 0 || v >= chart_.dim())
            throw input_error("substitute_zero: variable index out of range");
    Poly r(chart_);
    for (const auto& [m, c] : terms_) {
        bool keep = true;
        for (int v : vars)
            if (m[static_cast<std::size_t>(v)] != 0) { keep = false; break; }
        if (keep) r.add_term(m, c);
    }
    return r;
}

Rational Poly::eval(const std::vector<Rational>& point) const {
    if (static_cast<int>(point.size()) != chart_.dim())
        throw input_error("eval: point length does not match chart dimension");
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
        Rational t = c;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (m[i] != 0) t *= rational_pow(point[i], m[i]);
        total += t;
    }
    return total;
}

int Poly::degree() const {
    int d = -1;
    for (const auto& [m, c] : terms_) {
        int s = 0;
        for (unsigned e : m) s += static_cast<int>(e);
        d = std::max(d, s);
    }
    return d;
}

bool Poly::independent_of(const std::set<int>& vars) const {
    for (const auto& [m, c] : terms_)
        for (int v : vars)
            if (m[static_cast<std::size_t>(v)] != 0) return false;
    return true;
}

std::string Poly::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [m, c] : terms_) {
        Rational a = c;
        if (first) {
            if (a < 0) { out << "-"; a = -a; }
        } else {
            out << (a < 0 ? " - " : " + ");
            if (a < 0) a = -a;
        }
        first = false;
        std::string vars;
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (m[i] == 0) continue;
            if (!vars.empty()) vars += "*";
            vars += chart_.name(static_cast<int>(i));
            if (m[i] > 1) vars += "^" + std::to_string(m[i]);
        }
        if (vars.empty()) {
            out << to_string(a);
        } else if (a == 1) {
            out << vars;
        } else {
            out << to_string(a) << "*" << vars;
        }
    }
    return out.str();
}

// ------------------------------------------------- expression parser

namespace {

struct ExprParser {
    const Chart& chart;
    std::string_view text;
    std::size_t pos = 0;

    [[noreturn]] void fail(const std::string& msg, std::size_t at) const {
        throw parse_error(1, static_cast<int>(at) + 1, msg);
    }

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool eat(char c) {
        skip_ws();
        if (pos < text.size() && text[pos] == c) { ++pos; return true; }
        return false;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }

    Integer integer_literal() {
        skip_ws();
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (pos == start) fail("expected integer", pos);
        return Integer(std::string(text.substr(start, pos - start)));
    }

    Poly atom() {
        skip_ws();
        if (pos >= text.size()) fail("unexpected end of expression", pos);
        char c = text[pos];
        if (c == '(') {
            ++pos;
            Poly p = expr();
            if (!eat(')')) fail("expected ')'", pos);
            return p;
        }
        if (std::isdigit(static_cast<unsigned char>(c)))
            return Poly::constant(chart, Rational(integer_literal()));
        if (std::isalpha(static_cast<unsigned char>(c))) {
            std::size_t start = pos;
            while (pos < text.size() &&
                   (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
                ++pos;
            std::string name(text.substr(start, pos - start));
            auto idx = chart.index_of(name);
            if (!idx) fail("undeclared variable '" + name + "'", start);
            return Poly::variable(chart, *idx);
        }
        fail(std::string("unexpected character '") + c + "'", pos);
    }

    Poly factor() {
        skip_ws();
        if (peek() == '-') {
            ++pos;
            return -factor();
        }
        Poly base = atom();
        while (peek() == '^') {
            ++pos;
            skip_ws();
            std::size_t at = pos;
            Integer e = integer_literal();
            if (e < 0 || e > 64) fail("exponent out of range", at);
            base = base.pow(static_cast<unsigned>(e));
        }
        return base;
    }

    Poly term() {
        Poly p = factor();
        for (;;) {
            char c = peek();
            if (c == '*') {
                ++pos;
                p = p * factor();
            } else if (c == '/') {
                ++pos;
                std::size_t at = pos;
                Poly d = factor();
                if (!d.is_constant()) fail("division by a non-constant expression", at);
                Rational dv = d.constant_value();
                if (dv == 0) fail("division by zero", at);
                p = p.scaled(Rational(1) / dv);
            } else {
                break;
            }
        }
        return p;
    }

    Poly expr() {
        Poly p = term();
        for (;;) {
            char c = peek();
            if (c == '+') {
                ++pos;
                p = p + term();
            } else if (c == '-') {
                ++pos;
                p = p - term();
            } else {
                break;
            }
        }
        return p;
    }

    Poly parse() {
        Poly p = expr();
        skip_ws();
        if (pos != text.size()) fail("trailing input in expression", pos);
        return p;
    }
};

} // namespace

Poly parse_poly(const Chart& chart, std::string_view text) {
    ExprParser p{chart, text};
    return p.parse();
}

} // namespace jdcalc
