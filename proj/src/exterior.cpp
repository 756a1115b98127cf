#include "jdcalc/exterior.hpp"

#include <algorithm>
#include <sstream>

namespace jdcalc {
namespace detail {

int sort_sign(IndexTuple& t) {
    int sign = 1;
    for (std::size_t i = 1; i < t.size(); ++i) {
        std::size_t j = i;
        while (j > 0 && t[j] < t[j - 1]) {
            std::swap(t[j], t[j - 1]);
            sign = -sign;
            --j;
        }
        if (j > 0 && t[j] == t[j - 1]) return 0;
    }
    return sign;
}

AltData make(const Chart& chart, int slots, int grade) {
    if (grade < 0) throw input_error("negative grade");
    return AltData{chart, slots, grade, {}};
}

void add_comp(AltData& a, IndexTuple t, const Poly& c) {
    if (c.is_zero()) return;
    auto it = a.comps.find(t);
    if (it == a.comps.end()) {
        a.comps.emplace(std::move(t), c);
    } else {
        it->second += c;
        if (it->second.is_zero()) a.comps.erase(it);
    }
}

AltData add(const AltData& a, const AltData& b) {
    require_same_chart(a.chart, b.chart, "field add");
    if (a.slots != b.slots) throw input_error("field add: bundle mismatch");
    // the zero field is grade-agnostic (it is the zero of every grade)
    if (a.comps.empty() && a.grade != b.grade) return b;
    if (b.comps.empty() && a.grade != b.grade) return a;
    if (a.grade != b.grade) throw input_error("field add: grade mismatch");
    AltData r = a;
    for (const auto& [t, c] : b.comps) add_comp(r, t, c);
    return r;
}

AltData neg(const AltData& a) {
    AltData r = make(a.chart, a.slots, a.grade);
    for (const auto& [t, c] : a.comps) r.comps.emplace(t, -c);
    return r;
}

AltData scale(const AltData& a, const Poly& f) {
    AltData r = make(a.chart, a.slots, a.grade);
    for (const auto& [t, c] : a.comps) add_comp(r, t, c * f);
    return r;
}

AltData scale(const AltData& a, const Rational& k) {
    AltData r = make(a.chart, a.slots, a.grade);
    if (k == 0) return r;
    for (const auto& [t, c] : a.comps) r.comps.emplace(t, c.scaled(k));
    return r;
}

AltData wedge(const AltData& a, const AltData& b) {
    require_same_chart(a.chart, b.chart, "wedge");
    if (a.slots != b.slots) throw input_error("wedge: bundle mismatch");
    AltData r = make(a.chart, a.slots, a.grade + b.grade);
    for (const auto& [ta, ca] : a.comps) {
        for (const auto& [tb, cb] : b.comps) {
            IndexTuple t = ta;
            t.insert(t.end(), tb.begin(), tb.end());
            int s = sort_sign(t);
            if (s == 0) continue;
            Poly c = ca * cb;
            if (s < 0) c = -c;
            add_comp(r, std::move(t), c);
        }
    }
    return r;
}

AltData slot_contract(int j, const AltData& a) {
    AltData r = make(a.chart, a.slots, a.grade > 0 ? a.grade - 1 : 0);
    for (const auto& [t, c] : a.comps) {
        auto it = std::find(t.begin(), t.end(), j);
        if (it == t.end()) continue;
        int pos = static_cast<int>(it - t.begin());
        IndexTuple t2;
        t2.reserve(t.size() - 1);
        t2.insert(t2.end(), t.begin(), it);
        t2.insert(t2.end(), it + 1, t.end());
        add_comp(r, std::move(t2), pos % 2 == 0 ? c : -c);
    }
    return r;
}

AltData contract1(const AltData& w, const AltData& a) {
    require_same_chart(w.chart, a.chart, "contract");
    if (w.slots != a.slots) throw input_error("contract: bundle mismatch");
    if (w.grade != 1) throw input_error("contract: first argument must have grade 1");
    AltData r = make(a.chart, a.slots, a.grade > 0 ? a.grade - 1 : 0);
    for (const auto& [t, c] : w.comps) {
        AltData part = slot_contract(t[0], a);
        for (const auto& [t2, c2] : part.comps) add_comp(r, t2, c * c2);
    }
    return r;
}

Poly pairing(const AltData& a, const AltData& b) {
    require_same_chart(a.chart, b.chart, "pairing");
    if (a.slots != b.slots || a.grade != b.grade)
        throw input_error("pairing: grade or bundle mismatch");
    Poly total(a.chart);
    for (const auto& [t, c] : a.comps) {
        auto it = b.comps.find(t);
        if (it != b.comps.end()) total += c * it->second;
    }
    return total;
}

AltData delta(const AltData& a) {
    AltData r = make(a.chart, a.slots, a.grade + 1);
    int m = a.chart.dim();
    for (const auto& [t, c] : a.comps) {
        for (int i = 0; i < m; ++i) {
            Poly dc = c.partial(i);
            if (dc.is_zero()) continue;
            IndexTuple t2;
            t2.reserve(t.size() + 1);
            t2.push_back(i);
            t2.insert(t2.end(), t.begin(), t.end());
            int s = sort_sign(t2);
            if (s == 0) continue;
            add_comp(r, std::move(t2), s > 0 ? dc : -dc);
        }
    }
    return r;
}

AltData star(const AltData& P, const AltData& Q) {
    require_same_chart(P.chart, Q.chart, "schouten");
    if (P.slots != Q.slots) throw input_error("schouten: bundle mismatch");
    int rgrade = P.grade + Q.grade - 1;
    AltData r = make(P.chart, P.slots, rgrade < 0 ? 0 : rgrade);
    if (rgrade < 0) return r;
    int m = P.chart.dim();
    for (int i = 0; i < m; ++i) {
        AltData ci = slot_contract(i, P);
        if (ci.comps.empty()) continue;
        for (const auto& [tq, cq] : Q.comps) {
            Poly dq = cq.partial(i);
            if (dq.is_zero()) continue;
            for (const auto& [tc, cc] : ci.comps) {
                IndexTuple t = tc;
                t.insert(t.end(), tq.begin(), tq.end());
                int s = sort_sign(t);
                if (s == 0) continue;
                Poly c = cc * dq;
                if (s < 0) c = -c;
                add_comp(r, std::move(t), c);
            }
        }
    }
    return r;
}

AltData schouten(const AltData& P, const AltData& Q) {
    int p = P.grade, q = Q.grade;
    AltData a = star(P, Q);
    AltData b = star(Q, P);
    int sa = (p + 1) % 2 == 0 ? 1 : -1;          // (-1)^(p+1)
    int sb = (p * (q - 1)) % 2 == 0 ? -1 : 1;    // -(-1)^(p(q-1))
    return add(scale(a, Rational(sa)), scale(b, Rational(sb)));
}

bool is_zero(const AltData& a) { return a.comps.empty(); }

std::string render(const AltData& a, const char* slot_prefix, const char* unit_name) {
    if (a.comps.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    for (const auto& [t, c] : a.comps) {
        if (!first) out << " + ";
        first = false;
        std::string coeff = c.str();
        std::string factors;
        for (int j : t) {
            if (!factors.empty()) factors += "∧";
            if (j < a.chart.dim())
                factors += std::string(slot_prefix) + a.chart.name(j);
            else
                factors += unit_name;
        }
        if (factors.empty()) {
            out << coeff;
        } else if (coeff == "1") {
            out << factors;
        } else if (coeff == "-1") {
            out << "-" << factors;
        } else if (c.terms().size() > 1) {
            out << "(" << coeff << ")*" << factors;
        } else {
            out << coeff << "*" << factors;
        }
    }
    return out.str();
}

} // namespace detail

template <class Tag>
void AltField<Tag>::set_component(IndexTuple idx, const Poly& c) {
    if (static_cast<int>(idx.size()) != d_.grade)
        throw input_error("component tuple length does not match grade");
    for (std::size_t i = 0; i < idx.size(); ++i) {
        if (idx[i] < 0 || idx[i] >= d_.slots) throw input_error("component index out of range");
        if (i > 0 && idx[i] <= idx[i - 1])
            throw input_error("component tuple must be strictly increasing");
    }
    d_.comps.erase(idx);
    detail::add_comp(d_, std::move(idx), c);
}

template <class Tag>
Poly AltField<Tag>::component(const IndexTuple& idx) const {
    auto it = d_.comps.find(idx);
    return it == d_.comps.end() ? Poly::zero(d_.chart) : it->second;
}

template <>
std::string AltField<VecTag>::str() const {
    return detail::render(d_, "∂", "e");
}

template <>
std::string AltField<FormTag>::str() const {
    return detail::render(d_, "d", "e");
}

template class AltField<VecTag>;
template class AltField<FormTag>;

MultiVec wedge(const MultiVec& a, const MultiVec& b) {
    return MultiVec(detail::wedge(a.data(), b.data()));
}
Form wedge(const Form& a, const Form& b) { return Form(detail::wedge(a.data(), b.data())); }

MultiVec contract(const Form& alpha, const MultiVec& P) {
    if (alpha.grade() != 1) throw input_error("contract: 1-form required");
    if (P.grade() < 1) throw input_error("contract: grade-0 multivector");
    return MultiVec(detail::contract1(alpha.data(), P.data()));
}

Form contract(const MultiVec& X, const Form& eta) {
    if (X.grade() != 1) throw input_error("contract: vector field required");
    if (eta.grade() < 1) throw input_error("contract: grade-0 form");
    return Form(detail::contract1(X.data(), eta.data()));
}

Poly pairing(const Form& eta, const MultiVec& P) {
    return detail::pairing(eta.data(), P.data());
}

Form exterior_derivative(const Form& eta) { return Form(detail::delta(eta.data())); }

MultiVec schouten(const MultiVec& P, const MultiVec& Q) {
    return MultiVec(detail::schouten(P.data(), Q.data()));
}

MultiVec lie_derivative(const MultiVec& X, const MultiVec& A) {
    if (X.grade() != 1) throw input_error("lie_derivative: vector field required");
    return schouten(X, A);
}

Form lie_derivative(const MultiVec& X, const Form& eta) {
    if (X.grade() != 1) throw input_error("lie_derivative: vector field required");
    if (eta.grade() == 0) {
        // L_X f = <df, X>
        return Form(detail::contract1(X.data(), detail::delta(eta.data())));
    }
    return Form(detail::add(detail::delta(detail::contract1(X.data(), eta.data())),
                            detail::contract1(X.data(), detail::delta(eta.data()))));
}

Poly bivector_eval(const MultiVec& lambda, const Form& alpha, const Form& beta) {
    if (lambda.grade() != 2) throw input_error("bivector_eval: grade-2 field required");
    return pairing(beta, contract(alpha, lambda));
}

} // namespace jdcalc
