#pragma once

#include "jdcalc/extbundle.hpp"

namespace jdcalc {

/// A section e = X + alpha of the double (TM x R) + (T*M x R).
struct DoubleSection {
    ExtVec vec;
    ExtForm form;

    DoubleSection(ExtVec v, ExtForm f);
    static DoubleSection zero(const Chart& chart);

    const Chart& chart() const { return vec.chart(); }
    DoubleSection operator+(const DoubleSection& o) const;
    DoubleSection operator-(const DoubleSection& o) const;
    DoubleSection scaled(const Poly& f) const;
    bool is_zero() const { return vec.is_zero() && form.is_zero(); }
    bool operator==(const DoubleSection& o) const { return vec == o.vec && form == o.form; }
    std::string str() const;
};

enum class PairingSign { plus, minus };

/// (e1,e2)_{+-} = 1/2 (<alpha_1,X_2> +- <alpha_2,X_1>) with the extended
/// pairing <(alpha,g),(X,f)> = <alpha,X> + g f.
Poly pairing(const DoubleSection& e1, const DoubleSection& e2, PairingSign sign);

/// Options for the Courant bracket; dropping the d^phi (e1,e2)_- term is a
/// mutation hook used by the axiom suite's self test.
struct CourantOptions {
    bool drop_dphi_term = false;
};

/// The skew bracket of the double with phi = (0,1), W = (-E,0).
DoubleSection courant_bracket(const JacobiStructure& j, const DoubleSection& e1,
                              const DoubleSection& e2, const CourantOptions& opts = {});

/// First-order operator rho^theta(e) applied to h:
/// (X + Lambda^# alpha + g E)(h) + (f - <alpha,E>) h.
Poly rho_theta(const JacobiStructure& j, const DoubleSection& e, const Poly& h);
/// Anchor part alone: rho(e) h = (X + Lambda^# alpha + g E)(h).
Poly rho(const JacobiStructure& j, const DoubleSection& e, const Poly& h);
/// <theta, e> = f - <alpha, E> for theta = (0,1) + (-E,0).
Poly theta_pairing(const JacobiStructure& j, const DoubleSection& e);

enum class DVariant { plain, theta };

/// D f = d_* f + d f;  D^theta f = d_*^W f + d^phi f.
DoubleSection d_operator(const JacobiStructure& j, const Poly& f, DVariant variant);

/// Verifies the five double-structure axioms plus the anchor identity and
/// the theta compatibility premise on seeded random polynomial sections.
/// Every check is an exact polynomial identity on the sampled sections.
CheckReport axiom_suite(const JacobiStructure& j, int samples, std::uint64_t seed,
                        const CourantOptions& opts = {});

} // namespace jdcalc
