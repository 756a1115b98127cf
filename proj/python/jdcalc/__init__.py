"""Exact Jacobi/Dirac structure calculus on polynomial coordinate charts.

Thin python surface over the C++ core: charts, rational-coefficient
polynomials, multivector calculus, structure verification, bracket
evaluation, and the reduction pipeline. See the project README for the
structure-file format and the `jd` command line tool.
"""

from jdcalc._core import (
    Chart,
    CharPair,
    CheckItem,
    CheckReport,
    ExtVec,
    Form,
    InputError,
    JacobiStructure,
    MultiVec,
    NotVerifiedError,
    ParseError,
    Poly,
    ReductionReport,
    StructureFile,
    SubbundleSpec,
    admissible,
    aligned_distribution,
    axiom_suite,
    build_l_from_quotient,
    characteristic_equations_check,
    dirac_criteria,
    ext_bivector,
    exterior_derivative,
    form,
    isotropy_check,
    jacobi_bracket,
    jacobi_check,
    jacobi_reduction,
    l_bracket,
    lie_derivative,
    maurer_cartan_check,
    multivec,
    parse_structure,
    poly,
    quotient_reduce,
    render_structure,
    run,
    schouten,
    submanifold_conditions,
    symmetry_reduce,
    verify_jacobi,
    verify_structure,
    wedge,
)

__all__ = [
    "Chart",
    "CharPair",
    "CheckItem",
    "CheckReport",
    "ExtVec",
    "Form",
    "InputError",
    "JacobiStructure",
    "MultiVec",
    "NotVerifiedError",
    "ParseError",
    "Poly",
    "ReductionReport",
    "StructureFile",
    "SubbundleSpec",
    "admissible",
    "aligned_distribution",
    "axiom_suite",
    "build_l_from_quotient",
    "characteristic_equations_check",
    "dirac_criteria",
    "ext_bivector",
    "exterior_derivative",
    "form",
    "isotropy_check",
    "jacobi_bracket",
    "jacobi_check",
    "jacobi_reduction",
    "l_bracket",
    "lie_derivative",
    "maurer_cartan_check",
    "multivec",
    "parse_structure",
    "poly",
    "quotient_reduce",
    "render_structure",
    "run",
    "schouten",
    "submanifold_conditions",
    "symmetry_reduce",
    "verify_jacobi",
    "verify_structure",
    "wedge",
]
