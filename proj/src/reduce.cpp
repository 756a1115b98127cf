#include "jdcalc/reduce.hpp"

#include "jdcalc/sampler.hpp"

#include <algorithm>
#include <functional>

namespace jdcalc {

namespace {

std::vector<int> complement_of(const Chart& chart, const std::set<int>& removed) {
    std::vector<int> keep;
    for (int i = 0; i < chart.dim(); ++i)
        if (!removed.count(i)) keep.push_back(i);
    return keep;
}

// Re-expresses a polynomial of the big chart, known to depend only on the
// kept variables, on the sub chart.
Poly restrict_poly(const Poly& p, const Chart& sub, const std::vector<int>& keep) {
    Poly out(sub);
    for (const auto& [m, c] : p.terms()) {
        Monomial mm(static_cast<std::size_t>(sub.dim()), 0);
        for (std::size_t k = 0; k < keep.size(); ++k)
            mm[k] = m[static_cast<std::size_t>(keep[k])];
        out.add_term(mm, c);
    }
    return out;
}

Poly lift_poly(const Poly& p, const Chart& big, const std::vector<int>& keep) {
    Poly out(big);
    for (const auto& [m, c] : p.terms()) {
        Monomial mm(static_cast<std::size_t>(big.dim()), 0);
        for (std::size_t k = 0; k < keep.size(); ++k)
            mm[static_cast<std::size_t>(keep[k])] = m[k];
        out.add_term(mm, c);
    }
    return out;
}

std::string dirs_str(const Chart& chart, const std::set<int>& dirs) {
    std::string s;
    for (int i : dirs) {
        if (!s.empty()) s += ", ";
        s += chart.name(i);
    }
    return s.empty() ? "(none)" : s;
}

// Reads a Jacobi pair (Lambda, E) on the sub chart off a bracket functional
// over lifted coordinates: E(x_a) = {1, x_a}, Lambda(dx_a, dx_b) =
// {x_a,x_b} - x_a {1,x_b} + x_b {1,x_a}. Every bracket value must be
// independent of the quotiented directions; on violation returns the
// offending description through `failure`.
struct ExtractedStructure {
    MultiVec lambda;
    MultiVec e;
};

std::optional<ExtractedStructure> extract_structure(
    const Chart& big, const Chart& sub, const std::vector<int>& keep,
    const std::set<int>& must_not_depend,
    const std::function<Poly(const Poly&, const Poly&)>& bracket, std::string& failure) {
    Poly one = Poly::constant(big, 1);
    std::vector<Poly> e_comp;
    for (std::size_t a = 0; a < keep.size(); ++a) {
        Poly xa = Poly::variable(big, keep[a]);
        Poly br = bracket(one, xa);
        if (!br.independent_of(must_not_depend)) {
            failure = "{1," + big.name(keep[a]) + "} = " + br.str() +
                      " depends on quotiented directions";
            return std::nullopt;
        }
        e_comp.push_back(br);
    }
    MultiVec lam = MultiVec::zero(sub, 2);
    for (std::size_t a = 0; a < keep.size(); ++a) {
        for (std::size_t b = a + 1; b < keep.size(); ++b) {
            Poly xa = Poly::variable(big, keep[a]);
            Poly xb = Poly::variable(big, keep[b]);
            Poly br = bracket(xa, xb);
            if (!br.independent_of(must_not_depend)) {
                failure = "{" + big.name(keep[a]) + "," + big.name(keep[b]) + "} = " + br.str() +
                          " depends on quotiented directions";
                return std::nullopt;
            }
            Poly lam_ab = br - xa * e_comp[b] + xb * e_comp[a];
            if (!lam_ab.independent_of(must_not_depend)) {
                failure = "Lambda(" + big.name(keep[a]) + "," + big.name(keep[b]) + ") = " +
                          lam_ab.str() + " depends on quotiented directions";
                return std::nullopt;
            }
            if (!lam_ab.is_zero())
                lam.set_component({static_cast<int>(a), static_cast<int>(b)},
                                  restrict_poly(lam_ab, sub, keep));
        }
    }
    MultiVec e = MultiVec::zero(sub, 1);
    for (std::size_t a = 0; a < keep.size(); ++a)
        if (!e_comp[a].is_zero())
            e.set_component({static_cast<int>(a)}, restrict_poly(e_comp[a], sub, keep));
    return ExtractedStructure{std::move(lam), std::move(e)};
}

// Null-Dirac precondition: the conormal bundle closes under the dual bracket.
bool conormal_closed(const JacobiStructure& j, const SubbundleSpec& d, std::string& residual) {
    Conormal perp = conormal(d);
    for (std::size_t a = 0; a < perp.basis.size(); ++a) {
        for (std::size_t b = a + 1; b < perp.basis.size(); ++b) {
            ExtForm br = dual_bracket(j, perp.basis[a], perp.basis[b]);
            if (!perp.contains(br)) {
                residual = br.str();
                return false;
            }
        }
    }
    return true;
}

} // namespace

SubmanifoldSpec::SubmanifoldSpec(Chart chart_, std::set<int> constraints_)
    : chart(std::move(chart_)), constraints(std::move(constraints_)) {
    for (int i : constraints)
        if (i < 0 || i >= chart.dim())
            throw input_error("submanifold: constraint index out of range");
    if (static_cast<int>(constraints.size()) == chart.dim())
        throw input_error("submanifold: at least one variable must remain");
}

// ------------------------------------------------------------- quotient

ReductionReport quotient_reduce(const JacobiStructure& j, const CharPair& pair) {
    j.require_verified("quotient_reduce");
    ReductionReport out;
    out.checks.title = "quotient_reduce";
    const Chart& chart = j.chart();
    auto d_idx = pair.d.aligned_indices();
    if (!pair.d.all_epart_zero())
        throw input_error("quotient_reduce: D generators must have zero e-part");
    std::set<int> d_set(d_idx.begin(), d_idx.end());

    CheckReport criteria = dirac_criteria(j, pair);
    out.checks.add("dirac criteria", criteria.passed());
    for (const auto& it : criteria.items)
        if (!it.pass)
            out.checks.items.back().details.emplace_back(it.label,
                                                         it.details.empty() ? "" : it.details[0].second);
    if (!criteria.passed()) {
        out.passed = false;
        return out;
    }

    std::vector<int> keep = complement_of(chart, d_set);
    if (keep.empty()) throw input_error("quotient_reduce: D quotients out the whole chart");
    Chart sub = chart.sub_chart(keep);

    std::string failure;
    auto bracket = [&](const Poly& f, const Poly& g) { return l_bracket(j, pair, f, g); };
    auto extracted = extract_structure(chart, sub, keep, d_set, bracket, failure);
    out.checks.add("projectability of the reduced brackets", extracted.has_value(), "witness",
                   extracted ? "all brackets independent of " + dirs_str(chart, d_set) : failure);
    if (!extracted) {
        out.passed = false;
        return out;
    }

    CheckReport reduced_check = jacobi_check(extracted->lambda, extracted->e);
    out.checks.add("reduced structure passes jacobi_check", reduced_check.passed());

    // bracket relation: the reduced bracket of lifted coordinates reproduces
    // the upstairs bracket of admissible functions
    bool relation = true;
    std::string rel_witness = "0";
    if (reduced_check.passed()) {
        auto [rep, jred] = JacobiStructure::verify(extracted->lambda, extracted->e);
        Poly one_sub = Poly::constant(sub, 1);
        for (std::size_t a = 0; a < keep.size() && relation; ++a) {
            Poly xa = Poly::variable(sub, static_cast<int>(a));
            for (std::size_t b = a + 1; b < keep.size() && relation; ++b) {
                Poly xb = Poly::variable(sub, static_cast<int>(b));
                Poly down = jacobi_bracket(*jred, xa, xb);
                Poly up = bracket(Poly::variable(chart, keep[a]), Poly::variable(chart, keep[b]));
                if (down != restrict_poly(up, sub, keep)) {
                    relation = false;
                    rel_witness = (down - restrict_poly(up, sub, keep)).str();
                }
            }
            Poly down1 = jacobi_bracket(*jred, one_sub, xa);
            Poly up1 = bracket(Poly::constant(chart, 1), Poly::variable(chart, keep[a]));
            if (down1 != restrict_poly(up1, sub, keep)) {
                relation = false;
                rel_witness = (down1 - restrict_poly(up1, sub, keep)).str();
            }
        }
    }
    out.checks.add("bracket relation on coordinate pairs", relation, "residual", rel_witness);

    out.passed = out.checks.passed();
    if (out.passed) {
        out.reduced_chart = sub;
        out.reduced_lambda = extracted->lambda;
        out.reduced_e = extracted->e;
    }
    return out;
}

CharPair build_l_from_quotient(const JacobiStructure& j, const SubbundleSpec& d,
                               const JacobiStructure& j_quotient) {
    j.require_verified("build_l_from_quotient");
    j_quotient.require_verified("build_l_from_quotient");
    const Chart& chart = j.chart();
    auto d_idx = d.aligned_indices();
    if (!d.all_epart_zero())
        throw input_error("build_l_from_quotient: D generators must have zero e-part");
    std::set<int> d_set(d_idx.begin(), d_idx.end());
    std::vector<int> keep = complement_of(chart, d_set);
    Chart sub = chart.sub_chart(keep);
    if (j_quotient.chart() != sub)
        throw input_error("build_l_from_quotient: quotient structure lives on the wrong chart");

    // difference bracket {f,g}_1 = p*{f,g}_q - {p*f, p*g}_J on lifted functions
    auto diff_bracket = [&](const Poly& fq, const Poly& gq) {
        Poly up = lift_poly(jacobi_bracket(j_quotient, fq, gq), chart, keep);
        Poly down = jacobi_bracket(j, lift_poly(fq, chart, keep), lift_poly(gq, chart, keep));
        return up - down;
    };
    auto bracket_on_lifts = [&](const Poly& f, const Poly& g) {
        return diff_bracket(restrict_poly(f, sub, keep), restrict_poly(g, sub, keep));
    };

    std::string failure;
    auto extracted = extract_structure(chart, sub, keep, d_set, bracket_on_lifts, failure);
    if (!extracted)
        throw input_error("build_l_from_quotient: difference bracket is not projectable: " +
                          failure);

    // zero-extension lift of (Lambda_1, E_1) to the big chart
    MultiVec lam1 = MultiVec::zero(chart, 2);
    for (const auto& [t, c] : extracted->lambda.components())
        lam1.set_component({keep[static_cast<std::size_t>(t[0])],
                            keep[static_cast<std::size_t>(t[1])]},
                           lift_poly(c, chart, keep));
    MultiVec e1 = MultiVec::zero(chart, 1);
    for (const auto& [t, c] : extracted->e.components())
        e1.set_component({keep[static_cast<std::size_t>(t[0])]}, lift_poly(c, chart, keep));

    return CharPair(d, ExtVec::from_parts(lam1, e1));
}

// ------------------------------------------------------------- reduction

ReductionReport jacobi_reduction(const JacobiStructure& j, const SubmanifoldSpec& n,
                                 const SubbundleSpec& d) {
    j.require_verified("jacobi_reduction");
    require_same_chart(j.chart(), n.chart, "jacobi_reduction");
    ReductionReport out;
    out.checks.title = "jacobi_reduction";
    const Chart& chart = j.chart();
    auto d_idx = d.aligned_indices();
    if (!d.all_epart_zero())
        throw input_error("jacobi_reduction: D generators must have zero e-part");
    std::set<int> d_set(d_idx.begin(), d_idx.end());
    const std::set<int>& constraints = n.constraints;

    // null Dirac precondition for L = D + D-perp
    std::string closure_res;
    bool closed = conormal_closed(j, d, closure_res);
    out.checks.add("L = D + D-perp is a null Dirac structure (conormal closure)", closed,
                   "residual", closed ? "0" : closure_res);
    if (!closed) {
        out.passed = false;
        return out;
    }

    // membership condition on N: Lambda^#(dx_j)|N and E|N lie in TN + pi(D)
    bool member = true;
    for (int jv = 0; jv < chart.dim() && member; ++jv) {
        if (d_set.count(jv)) continue;   // dx_j with j in pi(D) is not in pi(D)-perp
        MultiVec v = contract(Form::basis(chart, {jv}), j.lambda());
        for (const auto& [t, c] : v.components()) {
            int dir = t[0];
            if (!constraints.count(dir) || d_set.count(dir)) continue;
            Poly restricted = c.substitute_zero(constraints);
            if (!restricted.is_zero()) {
                member = false;
                out.checks.add("membership: Lambda#(d" + chart.name(jv) + ")|N in TN + pi(D)",
                               false, "offending component",
                               "direction " + chart.name(dir) + ": " + restricted.str());
                break;
            }
        }
    }
    if (member)
        out.checks.add("membership: Lambda#(pi(D)-perp)|N in TN + pi(D)", true, "residual", "0");
    bool e_member = true;
    for (const auto& [t, c] : j.e_field().components()) {
        int dir = t[0];
        if (!constraints.count(dir) || d_set.count(dir)) continue;
        Poly restricted = c.substitute_zero(constraints);
        if (!restricted.is_zero()) {
            e_member = false;
            out.checks.add("membership: E|N in TN + pi(D)", false, "offending component",
                           "direction " + chart.name(dir) + ": " + restricted.str());
            break;
        }
    }
    if (e_member) out.checks.add("membership: E|N in TN + pi(D)", true, "residual", "0");
    if (!member || !e_member) {
        out.passed = false;
        return out;
    }

    // reduced chart: N variables minus the D_0 directions
    std::set<int> removed = constraints;
    for (int i : d_idx) removed.insert(i);
    std::vector<int> keep = complement_of(chart, removed);
    if (keep.empty()) throw input_error("jacobi_reduction: nothing remains after reduction");
    Chart sub = chart.sub_chart(keep);

    // restrict-then-quotient: brackets of lifts, restricted to N, must be
    // independent of the remaining D_0 directions
    std::set<int> d0;
    for (int i : d_idx)
        if (!constraints.count(i)) d0.insert(i);
    auto bracket = [&](const Poly& f, const Poly& g) {
        return jacobi_bracket(j, f, g).substitute_zero(constraints);
    };
    std::string failure;
    auto extracted = extract_structure(chart, sub, keep, d0, bracket, failure);
    out.checks.add("projectability along the leaves on N", extracted.has_value(), "witness",
                   extracted ? "all brackets independent of " + dirs_str(chart, d0) : failure);
    if (!extracted) {
        out.passed = false;
        return out;
    }

    CheckReport reduced_check = jacobi_check(extracted->lambda, extracted->e);
    out.checks.add("reduced structure passes jacobi_check", reduced_check.passed());

    bool relation = true;
    std::string rel_witness = "0";
    if (reduced_check.passed()) {
        auto [rep, jred] = JacobiStructure::verify(extracted->lambda, extracted->e);
        for (std::size_t a = 0; a < keep.size() && relation; ++a) {
            Poly xa_sub = Poly::variable(sub, static_cast<int>(a));
            Poly one_sub = Poly::constant(sub, 1);
            for (std::size_t b = a + 1; b < keep.size() && relation; ++b) {
                Poly xb_sub = Poly::variable(sub, static_cast<int>(b));
                Poly down = jacobi_bracket(*jred, xa_sub, xb_sub);
                Poly up = bracket(Poly::variable(chart, keep[a]), Poly::variable(chart, keep[b]));
                if (down != restrict_poly(up, sub, keep)) {
                    relation = false;
                    rel_witness = (down - restrict_poly(up, sub, keep)).str();
                }
            }
            Poly down1 = jacobi_bracket(*jred, one_sub, xa_sub);
            Poly up1 = bracket(Poly::constant(chart, 1), Poly::variable(chart, keep[a]));
            if (down1 != restrict_poly(up1, sub, keep)) {
                relation = false;
                rel_witness = (down1 - restrict_poly(up1, sub, keep)).str();
            }
        }
    }
    out.checks.add("bracket relation {f,g}_red = ({F,G})|N on coordinate pairs", relation,
                   "residual", rel_witness);

    out.passed = out.checks.passed();
    if (out.passed) {
        out.reduced_chart = sub;
        out.reduced_lambda = extracted->lambda;
        out.reduced_e = extracted->e;
    }
    return out;
}

// ----------------------------------------------------------- submanifolds

CheckReport submanifold_conditions(const JacobiStructure& j, const SubmanifoldSpec& n,
                                   SubmanifoldCase which) {
    j.require_verified("submanifold_conditions");
    require_same_chart(j.chart(), n.chart, "submanifold_conditions");
    const Chart& chart = j.chart();
    const std::set<int>& constraints = n.constraints;
    CheckReport report;
    report.title = which == SubmanifoldCase::first_kind ? "submanifold_conditions (first kind)"
                                                        : "submanifold_conditions (case b)";

    auto tangent_on_n = [&](const MultiVec& v, std::string& witness) {
        for (const auto& [t, c] : v.components()) {
            if (!constraints.count(t[0])) continue;
            Poly restricted = c.substitute_zero(constraints);
            if (!restricted.is_zero()) {
                witness = "direction " + chart.name(t[0]) + ": " + restricted.str();
                return false;
            }
        }
        witness = "0";
        return true;
    };

    if (which == SubmanifoldCase::first_kind) {
        bool pass = true;
        std::string witness = "0";
        for (int jv = 0; jv < chart.dim() && pass; ++jv) {
            MultiVec v = contract(Form::basis(chart, {jv}), j.lambda());
            std::string w;
            if (!tangent_on_n(v, w)) {
                pass = false;
                witness = "Lambda#(d" + chart.name(jv) + "): " + w;
            }
        }
        report.add("Lambda#(T*M) in TN on N", pass, "witness", witness);
        std::string we;
        bool epass = tangent_on_n(j.e_field(), we);
        report.add("E|N in TN", epass, "witness", we);
        return report;
    }

    // case b
    report.seed = 0;
    report.samples = 8;
    Sampler rng(0);
    bool triv = true;
    std::string triv_witness = "holds at all sampled points";
    for (int s = 0; s < 8 && triv; ++s) {
        auto pt = rng.point(chart);
        for (int i : constraints) pt[static_cast<std::size_t>(i)] = 0;   // sample on N
        std::vector<std::vector<Rational>> rows;
        int dimv = chart.dim();
        for (int c : constraints) {
            MultiVec v = contract(Form::basis(chart, {c}), j.lambda());
            std::vector<Rational> row(static_cast<std::size_t>(dimv), Rational(0));
            for (const auto& [t, co] : v.components())
                row[static_cast<std::size_t>(t[0])] = co.eval(pt);
            rows.push_back(std::move(row));
        }
        // dim(TN cap V) = dim TN + dim V - dim(TN + V)
        auto rank_of_rows = [](std::vector<std::vector<Rational>> m) {
            std::size_t cols = m.empty() ? 0 : m[0].size();
            std::size_t row = 0;
            for (std::size_t col = 0; col < cols && row < m.size(); ++col) {
                std::size_t piv = row;
                while (piv < m.size() && m[piv][col] == 0) ++piv;
                if (piv == m.size()) continue;
                std::swap(m[row], m[piv]);
                for (std::size_t i = 0; i < m.size(); ++i) {
                    if (i == row || m[i][col] == 0) continue;
                    Rational f = m[i][col] / m[row][col];
                    for (std::size_t jj = col; jj < cols; ++jj) m[i][jj] -= f * m[row][jj];
                }
                ++row;
            }
            return static_cast<int>(row);
        };
        int dim_v = rank_of_rows(rows);
        std::vector<std::vector<Rational>> joint = rows;
        for (int a = 0; a < dimv; ++a) {
            if (constraints.count(a)) continue;
            std::vector<Rational> row(static_cast<std::size_t>(dimv), Rational(0));
            row[static_cast<std::size_t>(a)] = 1;
            joint.push_back(std::move(row));
        }
        int dim_tn = dimv - static_cast<int>(constraints.size());
        int dim_sum = rank_of_rows(joint);
        if (dim_tn + dim_v - dim_sum != 0) {
            triv = false;
            triv_witness = "intersection nontrivial at " ;
            triv_witness += "(";
            for (std::size_t i = 0; i < pt.size(); ++i) {
                if (i) triv_witness += ", ";
                triv_witness += chart.name(static_cast<int>(i)) + "=" + to_string(pt[i]);
            }
            triv_witness += ")";
        }
    }
    report.add("TN cap Lambda#(TN-perp) = 0 on N (sampled)", triv, "witness", triv_witness);

    std::string we;
    bool epass = tangent_on_n(j.e_field(), we);
    report.add("E|N in TN", epass, "witness", we);

    // ideal condition, aligned reading: every Lambda monomial touches a
    // TN direction
    bool ideal_aligned = true;
    std::string ideal_witness = "0";
    for (const auto& [t, c] : j.lambda().components()) {
        if (constraints.count(t[0]) && constraints.count(t[1])) {
            Poly restricted = c.substitute_zero(constraints);
            if (!restricted.is_zero()) {
                ideal_aligned = false;
                ideal_witness = "monomial (" + chart.name(t[0]) + "," + chart.name(t[1]) +
                                "): " + restricted.str();
                break;
            }
        }
    }
    report.add("Lambda in the ideal of TN sections (aligned reading)", ideal_aligned, "witness",
               ideal_witness);

    // pointwise alternative: Lambda(x) in T_xN ^ T_xM at sampled points of N
    Sampler rng2(0);
    bool ideal_pw = true;
    for (int s = 0; s < 8 && ideal_pw; ++s) {
        auto pt = rng2.point(chart);
        for (int i : constraints) pt[static_cast<std::size_t>(i)] = 0;
        for (const auto& [t, c] : j.lambda().components()) {
            if (constraints.count(t[0]) && constraints.count(t[1]) && c.eval(pt) != 0) {
                ideal_pw = false;
                break;
            }
        }
    }
    report.add("Lambda in TN ^ TM at sampled points of N (pointwise reading)", ideal_pw);
    return report;
}

ReductionReport symmetry_reduce(const JacobiStructure& j,
                                const std::vector<MultiVec>& fundamental_fields,
                                const SubmanifoldSpec& n) {
    j.require_verified("symmetry_reduce");
    ReductionReport out;
    out.checks.title = "symmetry_reduce";
    const Chart& chart = j.chart();

    bool invariant = true;
    for (std::size_t k = 0; k < fundamental_fields.size(); ++k) {
        const MultiVec& x = fundamental_fields[k];
        if (x.grade() != 1) throw input_error("symmetry_reduce: fields must have grade 1");
        require_same_chart(x.chart(), chart, "symmetry_reduce");
        MultiVec rl = lie_derivative(x, j.lambda());
        MultiVec re = lie_derivative(x, j.e_field());
        bool ok = rl.is_zero() && re.is_zero();
        if (!ok) invariant = false;
        auto& item = out.checks.add("invariance under field " + std::to_string(k + 1), ok,
                                    "L_X Lambda", rl.str());
        item.details.emplace_back("L_X E", re.str());
    }
    if (!invariant) {
        out.passed = false;
        return out;
    }

    // aligned when every field is a coordinate field
    std::vector<int> indices;
    bool aligned = true;
    for (const auto& x : fundamental_fields) {
        const auto& comps = x.components();
        if (comps.size() == 1 && comps.begin()->second == Poly::constant(chart, 1))
            indices.push_back(comps.begin()->first[0]);
        else
            aligned = false;
    }
    if (!aligned) {
        out.checks.add("fields form a coordinate frame", false, "note",
                       "reduction needs a straightening change of coordinates; only the "
                       "invariance precondition was verified");
        out.passed = false;
        return out;
    }

    ReductionReport inner = jacobi_reduction(j, n, SubbundleSpec::aligned(chart, indices));
    for (auto& item : inner.checks.items) out.checks.items.push_back(std::move(item));
    out.reduced_chart = inner.reduced_chart;
    out.reduced_lambda = inner.reduced_lambda;
    out.reduced_e = inner.reduced_e;
    out.passed = inner.passed;
    return out;
}

} // namespace jdcalc
