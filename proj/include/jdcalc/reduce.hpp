#pragma once

#include "jdcalc/dirac.hpp"

#include <set>

namespace jdcalc {

/// A coordinate submanifold N = { x_i = 0 : i in constraints }.
struct SubmanifoldSpec {
    Chart chart;
    std::set<int> constraints;

    SubmanifoldSpec(Chart chart_, std::set<int> constraints_);
    static SubmanifoldSpec whole(const Chart& chart) { return SubmanifoldSpec(chart, {}); }
};

/// Outcome of a reduction pipeline run. A reported reduced structure always
/// carries a passing jacobi_check, otherwise the report is marked FAILED.
struct ReductionReport {
    CheckReport checks;
    std::optional<Chart> reduced_chart;
    std::optional<MultiVec> reduced_lambda;
    std::optional<MultiVec> reduced_e;
    bool passed = false;
};

/// Quotient by the coordinate foliation of an aligned D: reads the reduced
/// structure off the bracket of admissible functions and re-verifies it.
ReductionReport quotient_reduce(const JacobiStructure& j, const CharPair& pair);

/// Inverse construction: from a quotient Jacobi structure, builds the
/// characteristic pair realizing it (difference-bracket route).
CharPair build_l_from_quotient(const JacobiStructure& j, const SubbundleSpec& d,
                               const JacobiStructure& j_quotient);

/// Reduction engine for a submanifold N and an aligned D with the null Dirac
/// structure L = D + D-perp: checks the membership condition
/// Lambda^#(pi(D)-perp) in TN + pi(D) and E|N in TN + pi(D) on N, then
/// restricts and quotients, re-verifying the result and the bracket relation.
ReductionReport jacobi_reduction(const JacobiStructure& j, const SubmanifoldSpec& n,
                                 const SubbundleSpec& d);

enum class SubmanifoldCase { first_kind, coisotropic_b };

/// Condition sets under which N inherits a structure: case a checks
/// Lambda^#(T*M) in TN on N and E|N in TN; case b checks the trivial
/// intersection condition, E|N in TN, and the ideal condition in both the
/// aligned and the pointwise reading.
CheckReport submanifold_conditions(const JacobiStructure& j, const SubmanifoldSpec& n,
                                   SubmanifoldCase which);

/// Symmetry reduction from explicit fundamental vector fields: each field
/// must satisfy L_X Lambda = 0 and L_X E = 0 exactly, then the reduction is
/// delegated to jacobi_reduction with D spanned by the (X_i, 0).
ReductionReport symmetry_reduce(const JacobiStructure& j,
                                const std::vector<MultiVec>& fundamental_fields,
                                const SubmanifoldSpec& n);

} // namespace jdcalc
