#pragma once

#include "jdcalc/poly.hpp"

#include <map>
#include <string>
#include <vector>

namespace jdcalc {

/// Strictly increasing tuple of slot indices keying one wedge component.
using IndexTuple = std::vector<int>;

namespace detail {

/// Shared storage for all alternating fields. `slots` is the number of odd
/// generators: chart.dim() for plain fields, chart.dim()+1 for fields on the
/// extended bundle (slot chart.dim() is the unit section "e", which has no
/// coordinate partner).
struct AltData {
    Chart chart;
    int slots = 0;
    int grade = 0;
    std::map<IndexTuple, Poly> comps;
};

/// Sorts `t` in place, returns the permutation sign, or 0 on a repeated index.
int sort_sign(IndexTuple& t);

void add_comp(AltData& a, IndexTuple t, const Poly& c);
AltData make(const Chart& chart, int slots, int grade);
AltData add(const AltData& a, const AltData& b);
AltData neg(const AltData& a);
AltData scale(const AltData& a, const Poly& f);
AltData scale(const AltData& a, const Rational& c);
AltData wedge(const AltData& a, const AltData& b);
/// First-slot interior product with generator j (left superderivative).
AltData slot_contract(int j, const AltData& a);
/// i_w a for a raw grade-1 field w (sum of slot contractions).
AltData contract1(const AltData& w, const AltData& a);
/// Full pairing of two same-grade fields over identical increasing tuples.
Poly pairing(const AltData& a, const AltData& b);
/// Coefficientwise exterior derivative; only spatial slots are created.
AltData delta(const AltData& a);
/// star(P,Q) = sum_i (i_{slot i} P) wedge (d/dx_i Q) over spatial slots.
AltData star(const AltData& P, const AltData& Q);
/// Schouten-Nijenhuis bracket, Koszul convention calibrated so that the
/// canonical contact structure satisfies [Lambda,Lambda] = -2 E^Lambda:
///   [P,Q] = (-1)^(p+1) star(P,Q) - (-1)^(p(q-1)) star(Q,P).
AltData schouten(const AltData& P, const AltData& Q);
bool is_zero(const AltData& a);
std::string render(const AltData& a, const char* slot_prefix, const char* unit_name);

} // namespace detail

struct VecTag {};
struct FormTag {};

/// Grade-k alternating field over the chart; MultiVec for multivector fields
/// (components against coordinate wedges of d/dx_i), Form for differential
/// forms (wedges of dx_i). Canonical form: strictly increasing keys, no zero
/// components.
template <class Tag>
class AltField {
public:
    AltField() = default;
    static AltField zero(const Chart& chart, int grade) {
        return AltField(detail::make(chart, chart.dim(), grade));
    }
    static AltField scalar(const Chart& chart, Poly f) {
        AltField r = zero(chart, 0);
        r.d_.comps.clear();
        if (!f.is_zero()) r.d_.comps.emplace(IndexTuple{}, std::move(f));
        return r;
    }
    /// Unit coordinate wedge monomial for the given increasing index tuple.
    static AltField basis(const Chart& chart, IndexTuple idx) {
        AltField r = zero(chart, static_cast<int>(idx.size()));
        r.set_component(std::move(idx), Poly::constant(chart, 1));
        return r;
    }

    const Chart& chart() const { return d_.chart; }
    int grade() const { return d_.grade; }
    const std::map<IndexTuple, Poly>& components() const { return d_.comps; }
    bool is_zero() const { return d_.comps.empty(); }

    void set_component(IndexTuple idx, const Poly& c);
    Poly component(const IndexTuple& idx) const;

    AltField operator+(const AltField& o) const { return AltField(detail::add(d_, o.d_)); }
    AltField operator-(const AltField& o) const {
        return AltField(detail::add(d_, detail::neg(o.d_)));
    }
    AltField operator-() const { return AltField(detail::neg(d_)); }
    AltField scaled(const Poly& f) const { return AltField(detail::scale(d_, f)); }
    AltField scaled(const Rational& c) const { return AltField(detail::scale(d_, c)); }

    bool operator==(const AltField& o) const {
        if (d_.chart != o.d_.chart) return false;
        if (d_.comps.empty() && o.d_.comps.empty()) return true;  // zero of any grade
        return d_.grade == o.d_.grade && d_.comps == o.d_.comps;
    }
    bool operator!=(const AltField& o) const { return !(*this == o); }

    std::string str() const;

    const detail::AltData& data() const { return d_; }
    explicit AltField(detail::AltData d) : d_(std::move(d)) {}

private:
    detail::AltData d_;
};

using MultiVec = AltField<VecTag>;
using Form = AltField<FormTag>;

MultiVec wedge(const MultiVec& a, const MultiVec& b);
Form wedge(const Form& a, const Form& b);

/// Interior product i_alpha P of a 1-form with a k-multivector (first slot);
/// for k = 1 this is the pairing <alpha, X> as a grade-0 field.
MultiVec contract(const Form& alpha, const MultiVec& P);
/// Interior product i_X eta of a vector field with a k-form.
Form contract(const MultiVec& X, const Form& eta);

/// Full pairing of a k-form with a k-multivector.
Poly pairing(const Form& eta, const MultiVec& P);

Form exterior_derivative(const Form& eta);

/// Schouten-Nijenhuis bracket (see detail::schouten for the sign convention).
MultiVec schouten(const MultiVec& P, const MultiVec& Q);

MultiVec lie_derivative(const MultiVec& X, const MultiVec& A);
Form lie_derivative(const MultiVec& X, const Form& eta);

/// Lambda(alpha, beta) = <beta, i_alpha Lambda> for a bivector Lambda.
Poly bivector_eval(const MultiVec& lambda, const Form& alpha, const Form& beta);

} // namespace jdcalc
