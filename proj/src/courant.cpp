#include "jdcalc/courant.hpp"

#include "jdcalc/sampler.hpp"

namespace jdcalc {

DoubleSection::DoubleSection(ExtVec v, ExtForm f) : vec(std::move(v)), form(std::move(f)) {
    require_same_chart(vec.chart(), form.chart(), "double section");
    if (vec.grade() != 1 || form.grade() != 1)
        throw input_error("double section: grade-1 components required");
}

DoubleSection DoubleSection::zero(const Chart& chart) {
    return DoubleSection(ExtVec::zero(chart, 1), ExtForm::zero(chart, 1));
}

DoubleSection DoubleSection::operator+(const DoubleSection& o) const {
    return DoubleSection(vec + o.vec, form + o.form);
}

DoubleSection DoubleSection::operator-(const DoubleSection& o) const {
    return DoubleSection(vec - o.vec, form - o.form);
}

DoubleSection DoubleSection::scaled(const Poly& f) const {
    return DoubleSection(vec.scaled(f), form.scaled(f));
}

std::string DoubleSection::str() const { return vec.str() + " + " + form.str(); }

Poly pairing(const DoubleSection& e1, const DoubleSection& e2, PairingSign sign) {
    require_same_chart(e1.chart(), e2.chart(), "pairing");
    Poly a = ext_pairing(e1.form, e2.vec);
    Poly b = ext_pairing(e2.form, e1.vec);
    Poly s = sign == PairingSign::plus ? a + b : a - b;
    return s.scaled(Rational(1, 2));
}

DoubleSection courant_bracket(const JacobiStructure& j, const DoubleSection& e1,
                              const DoubleSection& e2, const CourantOptions& opts) {
    j.require_verified("courant_bracket");
    require_same_chart(e1.chart(), e2.chart(), "courant_bracket");
    const Chart& chart = j.chart();
    Poly pm = pairing(e1, e2, PairingSign::minus);

    ExtVec a = ext_bracket(e1.vec, e2.vec);
    a = a + dual_lie_w(j, e1.form, e2.vec);
    a = a - dual_lie_w(j, e2.form, e1.vec);
    a = a - dual_differential_w(j, ExtVec::scalar(chart, pm));

    ExtForm b = dual_bracket(j, e1.form, e2.form);
    b = b + phi_lie(j.phi_cocycle(), e1.vec, e2.form);
    b = b - phi_lie(j.phi_cocycle(), e2.vec, e1.form);
    if (!opts.drop_dphi_term)
        b = b + phi_differential(j.phi_cocycle(), ExtForm::scalar(chart, pm));
    return DoubleSection(std::move(a), std::move(b));
}

Poly rho(const JacobiStructure& j, const DoubleSection& e, const Poly& h) {
    j.require_verified("rho");
    MultiVec x = e.vec.pure() + dual_anchor(j, e.form);
    Poly acc = Poly::zero(j.chart());
    for (const auto& [t, c] : x.components()) acc += c * h.partial(t[0]);
    return acc;
}

Poly theta_pairing(const JacobiStructure& j, const DoubleSection& e) {
    Poly f = e.vec.epart().component({});
    return f - pairing(e.form.pure(), j.e_field());
}

Poly rho_theta(const JacobiStructure& j, const DoubleSection& e, const Poly& h) {
    return rho(j, e, h) + theta_pairing(j, e) * h;
}

DoubleSection d_operator(const JacobiStructure& j, const Poly& f, DVariant variant) {
    j.require_verified("d_operator");
    const Chart& chart = j.chart();
    ExtVec a = dual_differential(j, ExtVec::scalar(chart, f));
    ExtForm b = ExtForm::from_parts(exterior_derivative(Form::scalar(chart, f)),
                                    Form::scalar(chart, Poly::zero(chart)));
    if (variant == DVariant::theta) {
        a = a + j.w_cocycle().scaled(f);
        b = b + j.phi_cocycle().scaled(f);
    }
    return DoubleSection(std::move(a), std::move(b));
}

CheckReport axiom_suite(const JacobiStructure& j, int samples, std::uint64_t seed,
                        const CourantOptions& opts) {
    j.require_verified("axiom_suite");
    const Chart& chart = j.chart();
    CheckReport report;
    report.title = "courant axiom_suite";
    report.seed = seed;
    report.samples = samples;
    Sampler rng(seed);

    auto section = [&]() {
        return DoubleSection(rng.ext_vec(chart, 1, 2), rng.ext_form(chart, 1, 2));
    };
    auto bracket = [&](const DoubleSection& a, const DoubleSection& b) {
        return courant_bracket(j, a, b, opts);
    };

    bool skew = true, ax1 = true, ax2 = true, ax3 = true, ax4 = true, ax5 = true, prem = true;
    std::string skew_w, ax1_w, ax2_w, ax3_w, ax4_w, ax5_w, prem_w;

    for (int s = 0; s < samples; ++s) {
        DoubleSection e1 = section(), e2 = section(), e3 = section();
        Poly h = rng.poly(chart, 2);
        Poly f = rng.poly(chart, 2);
        Poly g = rng.poly(chart, 2);

        DoubleSection b12 = bracket(e1, e2);

        if (skew) {
            DoubleSection r = b12 + bracket(e2, e1);
            if (!r.is_zero()) { skew = false; skew_w = r.str(); }
        }
        if (ax2) {
            Poly lhs = rho_theta(j, b12, h);
            Poly rhs = rho_theta(j, e1, rho_theta(j, e2, h)) -
                       rho_theta(j, e2, rho_theta(j, e1, h));
            if (lhs != rhs) { ax2 = false; ax2_w = (lhs - rhs).str(); }
        }
        if (ax3) {
            DoubleSection lhs = bracket(e1, e2.scaled(f));
            DoubleSection rhs = b12.scaled(f) + e2.scaled(rho(j, e1, f)) -
                                d_operator(j, f, DVariant::plain)
                                    .scaled(pairing(e1, e2, PairingSign::plus));
            DoubleSection r = lhs - rhs;
            if (!r.is_zero()) { ax3 = false; ax3_w = r.str(); }
        }
        if (ax4) {
            Poly r = pairing(d_operator(j, f, DVariant::theta),
                             d_operator(j, g, DVariant::theta), PairingSign::plus);
            if (!r.is_zero()) { ax4 = false; ax4_w = r.str(); }
        }
        if (ax5) {
            Poly p12 = pairing(e1, e2, PairingSign::plus);
            Poly lhs = rho(j, e3, p12) + theta_pairing(j, e3) * p12;
            DoubleSection t1 = bracket(e3, e1) +
                               d_operator(j, pairing(e3, e1, PairingSign::plus), DVariant::theta);
            DoubleSection t2 = bracket(e3, e2) +
                               d_operator(j, pairing(e3, e2, PairingSign::plus), DVariant::theta);
            Poly rhs = pairing(t1, e2, PairingSign::plus) + pairing(e1, t2, PairingSign::plus);
            if (lhs != rhs) { ax5 = false; ax5_w = (lhs - rhs).str(); }
        }
        if (prem) {
            Poly lhs = theta_pairing(j, b12);
            Poly rhs = rho(j, e1, theta_pairing(j, e2)) - rho(j, e2, theta_pairing(j, e1));
            if (lhs != rhs) { prem = false; prem_w = (lhs - rhs).str(); }
        }
        if (ax1) {
            DoubleSection b23 = bracket(e2, e3);
            DoubleSection b31 = bracket(e3, e1);
            DoubleSection jac = bracket(b12, e3) + bracket(b23, e1) + bracket(b31, e2);
            Poly t = (pairing(b12, e3, PairingSign::plus) + pairing(b23, e1, PairingSign::plus) +
                      pairing(b31, e2, PairingSign::plus))
                         .scaled(Rational(1, 3));
            DoubleSection r = jac - d_operator(j, t, DVariant::theta);
            if (!r.is_zero()) { ax1 = false; ax1_w = r.str(); }
        }
    }

    report.add("skew-symmetry of the bracket", skew, "residual", skew ? "0" : skew_w);
    report.add("axiom 1: Jacobiator = D^theta T", ax1, "residual", ax1 ? "0" : ax1_w);
    report.add("axiom 2: rho^theta is bracket-compatible", ax2, "residual", ax2 ? "0" : ax2_w);
    report.add("axiom 3: anchored Leibniz rule", ax3, "residual", ax3 ? "0" : ax3_w);
    report.add("axiom 4: (D^theta f, D^theta g) = 0", ax4, "residual", ax4 ? "0" : ax4_w);
    report.add("axiom 5: pairing invariance", ax5, "residual", ax5 ? "0" : ax5_w);
    report.add("theta compatibility premise", prem, "residual", prem ? "0" : prem_w);
    return report;
}

} // namespace jdcalc
