#pragma once

#include "jdcalc/exterior.hpp"
#include "jdcalc/report.hpp"

#include <optional>
#include <utility>

namespace jdcalc {

// Extended fields live on TM x R (ExtVec) and T*M x R (ExtForm). A grade-k
// value is the pair (pure, epart) with pure of grade k and epart of grade
// k-1 against the unit section e of the R factor.
//
// Internally the pair is embedded as the single alternating field
//     value = pure + e ^ epart
// over dim+1 odd generators with e in the extra slot, e multiplied on the
// LEFT. This is the most error-prone convention in the module: with e on the
// left, every interior product below is the plain first-slot contraction and
// the calculus satisfies, with no further sign cases,
//     [(Lambda,E),(Lambda,E)]^(0,1) = 0   and   d_*^W (Lambda,E) = 0
// for every verified Jacobi structure. (With e wedged on the right, those
// two identities demand opposite contraction slots and no single choice
// works.) The stored e-component of (pure, epart) therefore carries the
// reordering sign: raw[(J, e)] = (-1)^|J| * epart[J].

template <class Tag>
class ExtField {
public:
    ExtField() = default;

    static ExtField zero(const Chart& chart, int grade) {
        return ExtField(detail::make(chart, chart.dim() + 1, grade));
    }
    static ExtField from_parts(const AltField<Tag>& pure, const AltField<Tag>& epart);
    /// Grade-0 value (a function).
    static ExtField scalar(const Chart& chart, Poly f);
    /// The unit section (0,1): pure = 0, epart = 1. Grade 1.
    static ExtField unit_section(const Chart& chart);

    AltField<Tag> pure() const;
    AltField<Tag> epart() const;

    const Chart& chart() const { return d_.chart; }
    int grade() const { return d_.grade; }
    bool is_zero() const { return d_.comps.empty(); }

    ExtField operator+(const ExtField& o) const { return ExtField(detail::add(d_, o.d_)); }
    ExtField operator-(const ExtField& o) const {
        return ExtField(detail::add(d_, detail::neg(o.d_)));
    }
    ExtField operator-() const { return ExtField(detail::neg(d_)); }
    ExtField scaled(const Poly& f) const { return ExtField(detail::scale(d_, f)); }
    ExtField scaled(const Rational& c) const { return ExtField(detail::scale(d_, c)); }

    bool operator==(const ExtField& o) const {
        if (d_.chart != o.d_.chart) return false;
        if (d_.comps.empty() && o.d_.comps.empty()) return true;  // zero of any grade
        return d_.grade == o.d_.grade && d_.comps == o.d_.comps;
    }
    bool operator!=(const ExtField& o) const { return !(*this == o); }

    /// Rendered as the pair "(pure; epart)".
    std::string str() const;

    const detail::AltData& data() const { return d_; }
    explicit ExtField(detail::AltData d) : d_(std::move(d)) {}

private:
    detail::AltData d_;
};

using ExtVec = ExtField<VecTag>;
using ExtForm = ExtField<FormTag>;

ExtVec ext_wedge(const ExtVec& a, const ExtVec& b);
ExtForm ext_wedge(const ExtForm& a, const ExtForm& b);

/// <(alpha,g),(X,f)> = <alpha,X> + g f, extended to full same-grade pairing.
Poly ext_pairing(const ExtForm& eta, const ExtVec& P);

/// i_omega P for a grade-1 extended form against a grade-k extended vector
/// (first slot), and the mirror contraction.
ExtVec ext_contract(const ExtForm& omega, const ExtVec& P);
ExtForm ext_contract(const ExtVec& X, const ExtForm& eta);

/// Bracket of the trivial algebroid TM x R:
/// [(X,f),(Y,g)] = ([X,Y], X.g - Y.f).
ExtVec ext_bracket(const ExtVec& a, const ExtVec& b);

/// Schouten bracket of the trivial algebroid (e is central, anchor kills e).
ExtVec ext_schouten(const ExtVec& P, const ExtVec& Q);

/// Exterior derivative of the trivial algebroid: acts coefficientwise by the
/// de Rham differential (d e-dual = 0).
ExtForm ext_derivative(const ExtForm& eta);

/// A bivector-vector pair; verified structures satisfy
/// [Lambda,Lambda] = -2 E^Lambda and [E,Lambda] = 0 exactly.
class JacobiStructure {
public:
    JacobiStructure(MultiVec lambda, MultiVec e);

    const MultiVec& lambda() const { return lambda_; }
    const MultiVec& e_field() const { return e_; }
    const Chart& chart() const { return lambda_.chart(); }

    /// The structure as the extended bivector (Lambda, E).
    ExtVec ext_bivector() const { return ExtVec::from_parts(lambda_, e_); }
    /// The dual 1-cocycle W = (-E, 0).
    ExtVec w_cocycle() const;
    /// The trivial-algebroid 1-cocycle phi = (0, 1).
    ExtForm phi_cocycle() const { return ExtForm::unit_section(chart()); }

    bool verified() const { return verified_; }
    void require_verified(const char* op) const;

    /// Runs jacobi_check; on pass, the returned structure is verified.
    static std::pair<CheckReport, std::optional<JacobiStructure>> verify(
        const MultiVec& lambda, const MultiVec& e);

private:
    MultiVec lambda_;
    MultiVec e_;
    bool verified_ = false;
};

/// Residual report for the defining identities; pass iff both residuals are
/// the zero field.
CheckReport jacobi_check(const MultiVec& lambda, const MultiVec& e);

/// (Lambda,E)^#((alpha,f)) = (Lambda^#(alpha) + f E, -<alpha,E>), with
/// Lambda^#(alpha) = i_alpha Lambda. Works for any extended bivector pair.
ExtVec sharp(const ExtVec& bivector, const ExtForm& omega);
ExtVec sharp(const JacobiStructure& j, const ExtForm& omega);

/// The dual Lie algebroid bracket [.,.]_{(Lambda,E)} on extended 1-forms.
ExtForm dual_bracket(const JacobiStructure& j, const ExtForm& a, const ExtForm& b);

/// Anchor of the dual algebroid: a_*(alpha, g) = Lambda^#(alpha) + g E.
MultiVec dual_anchor(const JacobiStructure& j, const ExtForm& a);

enum class AlgebroidSide { trivial, dual };

/// 1-cocycle test, Eq-level: <phi,[X,Y]> = a(X)<phi,Y> - a(Y)<phi,X> on all
/// basis-section pairs (sufficient by the Leibniz rule).
bool cocycle_check(const ExtForm& phi);                                // trivial side
bool cocycle_check(const JacobiStructure& j, const ExtVec& w);         // dual side

/// phi-differential of the trivial algebroid: d^phi eta = d eta + phi ^ eta.
/// phi must pass cocycle_check.
ExtForm phi_differential(const ExtForm& phi, const ExtForm& eta);

/// Exterior derivative of the dual algebroid on extended multivectors,
/// computed by evaluating the algebroid formula on basis covector sections.
ExtVec dual_differential(const JacobiStructure& j, const ExtVec& v);
/// d_*^W v = d_* v + W ^ v for a dual 1-cocycle W (default W = (-E,0)).
ExtVec dual_differential_w(const JacobiStructure& j, const ExtVec& v);
ExtVec dual_differential_w(const JacobiStructure& j, const ExtVec& w, const ExtVec& v);

/// phi-Lie derivative on extended forms: L^phi_X = d^phi i_X + i_X d^phi
/// (equals L_X eta + <phi,X> eta).
ExtForm phi_lie(const ExtForm& phi, const ExtVec& x, const ExtForm& eta);

/// Dual Cartan formula on extended multivectors:
/// L_{*alpha}^W = i_alpha d_*^W + d_*^W i_alpha.
ExtVec dual_lie_w(const JacobiStructure& j, const ExtForm& alpha, const ExtVec& v);

/// phi-Schouten bracket:
/// [P,Q]^phi = [P,Q] + (p-1) P ^ (i_phi Q) + (-1)^p (q-1) (i_phi P) ^ Q.
ExtVec phi_schouten(const ExtForm& phi, const ExtVec& P, const ExtVec& Q);

enum class BracketMode { crJ, J };

/// The Jacobi bracket of a verified structure. Mode crJ computes
/// Lambda(df,dg) + <f dg - g df, E>; mode J computes <d^phi f, d_*^W g>.
/// The two agree identically.
Poly jacobi_bracket(const JacobiStructure& j, const Poly& f, const Poly& g,
                    BracketMode mode = BracketMode::crJ);

/// Maurer-Cartan check: d_*^W Omega + 1/2 [Omega,Omega]^phi = 0.
CheckReport maurer_cartan_check(const JacobiStructure& j, const ExtVec& omega);

} // namespace jdcalc
