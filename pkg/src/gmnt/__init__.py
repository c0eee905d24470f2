"""Pairing-friendly curve families with prime cofactor.

The package constructs quadratic parameter families (n, p, t) whose
group order splits as q * n for a fixed prime cofactor q, for curves of
embedding degree 3, 4 or 6, and locates concrete parameter sets by
solving the generalized Pell equations the families reduce to.
"""

from gmnt.arith import Residue, is_prime, jacobi, mod_pow, sqrt_mod, squarefree_split
from gmnt.families import (
    FamilySpec,
    QuadraticFamily,
    VerificationReport,
    admissible_q,
    build_family,
    derive_pell_form,
    families_for,
    find_roots,
    verify_family,
)
from gmnt.pell import (
    PellInstance,
    PellSolution,
    cf_sqrt,
    degenerate_solutions,
    fundamental_solutions,
    fundamental_unit,
    iterate_solutions,
)
from gmnt.poly import IntPolynomial, aux_quadratic, cyclotomic
from gmnt.search import (
    CurveCandidate,
    SearchConfig,
    iter_search,
    run_search,
    verify_candidate,
    verify_record,
)

__version__ = "0.1.0"

__all__ = [
    "Residue",
    "is_prime",
    "jacobi",
    "mod_pow",
    "sqrt_mod",
    "squarefree_split",
    "IntPolynomial",
    "aux_quadratic",
    "cyclotomic",
    "FamilySpec",
    "QuadraticFamily",
    "VerificationReport",
    "admissible_q",
    "build_family",
    "derive_pell_form",
    "families_for",
    "find_roots",
    "verify_family",
    "PellInstance",
    "PellSolution",
    "cf_sqrt",
    "degenerate_solutions",
    "fundamental_solutions",
    "fundamental_unit",
    "iterate_solutions",
    "CurveCandidate",
    "SearchConfig",
    "iter_search",
    "run_search",
    "verify_candidate",
    "verify_record",
    "__version__",
]
