"""Exact Massey triple products on smooth projective plane curves.

The package computes cup products and Massey triple products of first
cohomology classes on a smooth plane curve through graded polynomial
algebra: classes are forms, cup vanishing is ideal membership over the
partials of the curve equation, and the triple product is an exact
rational residue read off a canonical decomposition in degree 6n-9.
Everything is arbitrary-precision rational arithmetic; no floats.
"""

from .poly import (
    DegreeMismatchError,
    HomogeneousPoly,
    Monomial,
    NonHomogeneousError,
    ParseError,
    format_poly,
    parse_poly,
)
from .linalg import (
    GradedSolveReport,
    GradedSolver,
    MonomialBasis,
    from_coords,
    kernel_basis,
    monomial_basis,
    rref,
    solve_membership,
    solve_with_distinguished,
    to_coords,
)
from .curve import (
    CurveContext,
    QuotientBasis,
    SingularCurveError,
    build_context,
    is_smooth,
    quotient_dimensions,
)
from .massey import (
    AVectors,
    DecompWitness,
    MasseyResult,
    UndefinedMasseyProductError,
    WitnessIdentityError,
    big_ideal_det,
    compute_AB,
    decompose_cup,
    massey_triple,
    massey_triple_with_witnesses,
)
from .search import (
    COEFFICIENT_POOL,
    BudgetExhaustedError,
    RatioReport,
    SearchConfig,
    find_triple,
    m_counts,
    random_homogeneous_poly,
    trial_rng,
    vanishing_ratio_experiment,
)

__version__ = "0.1.0"

__all__ = [
    "AVectors",
    "BudgetExhaustedError",
    "COEFFICIENT_POOL",
    "CurveContext",
    "DecompWitness",
    "DegreeMismatchError",
    "GradedSolveReport",
    "GradedSolver",
    "HomogeneousPoly",
    "MasseyResult",
    "Monomial",
    "MonomialBasis",
    "NonHomogeneousError",
    "ParseError",
    "QuotientBasis",
    "RatioReport",
    "SearchConfig",
    "SingularCurveError",
    "UndefinedMasseyProductError",
    "WitnessIdentityError",
    "big_ideal_det",
    "build_context",
    "compute_AB",
    "decompose_cup",
    "find_triple",
    "format_poly",
    "from_coords",
    "is_smooth",
    "kernel_basis",
    "m_counts",
    "massey_triple",
    "massey_triple_with_witnesses",
    "monomial_basis",
    "parse_poly",
    "quotient_dimensions",
    "random_homogeneous_poly",
    "rref",
    "solve_membership",
    "solve_with_distinguished",
    "to_coords",
    "trial_rng",
    "vanishing_ratio_experiment",
    "__version__",
]
