#include "jdcalc/sampler.hpp"

namespace jdcalc {

Poly Sampler::poly(const Chart& chart, int max_degree, int terms) {
    Poly p(chart);
    for (int t = 0; t < terms; ++t) {
        Monomial m(static_cast<std::size_t>(chart.dim()), 0);
        int d = below(max_degree + 1);
        for (int i = 0; i < d; ++i) ++m[static_cast<std::size_t>(below(chart.dim()))];
        p.add_term(m, Rational(range(-3, 3)));
    }
    return p;
}

MultiVec Sampler::multivec(const Chart& chart, int grade, int max_degree) {
    MultiVec r = MultiVec::zero(chart, grade);
    if (grade == 0) return MultiVec::scalar(chart, poly(chart, max_degree, 2));
    IndexTuple idx(static_cast<std::size_t>(grade));
    for (int i = 0; i < grade; ++i) idx[static_cast<std::size_t>(i)] = i;
    if (grade > chart.dim()) return r;
    for (;;) {
        if (below(10) < 7) {
            Poly c = poly(chart, max_degree, 2);
            if (!c.is_zero()) r.set_component(idx, c);
        }
        int pos = grade - 1;
        while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == chart.dim() - (grade - pos)) --pos;
        if (pos < 0) break;
        ++idx[static_cast<std::size_t>(pos)];
        for (int i = pos + 1; i < grade; ++i)
            idx[static_cast<std::size_t>(i)] = idx[static_cast<std::size_t>(i - 1)] + 1;
    }
    return r;
}

Form Sampler::form(const Chart& chart, int grade, int max_degree) {
    MultiVec v = multivec(chart, grade, max_degree);
    Form r = Form::zero(chart, grade);
    for (const auto& [t, c] : v.components()) r.set_component(t, c);
    return r;
}

ExtVec Sampler::ext_vec(const Chart& chart, int grade, int max_degree) {
    if (grade == 0) return ExtVec::scalar(chart, poly(chart, max_degree, 2));
    return ExtVec::from_parts(multivec(chart, grade, max_degree),
                              multivec(chart, grade - 1, max_degree));
}

ExtForm Sampler::ext_form(const Chart& chart, int grade, int max_degree) {
    if (grade == 0) return ExtForm::scalar(chart, poly(chart, max_degree, 2));
    return ExtForm::from_parts(form(chart, grade, max_degree),
                               form(chart, grade - 1, max_degree));
}

std::vector<Rational> Sampler::point(const Chart& chart) {
    std::vector<Rational> pt;
    pt.reserve(static_cast<std::size_t>(chart.dim()));
    for (int i = 0; i < chart.dim(); ++i) pt.push_back(small_rational());
    return pt;
}

} // namespace jdcalc
