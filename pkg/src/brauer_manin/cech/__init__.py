"""Cochains on finite combinatorial covers."""
from .coefficients import AbelianGroup, CoefficientError, CoefficientGroup, RationalFunctionGroup
from .cochain import (
    CocycleCheck,
    Cochain,
    CochainError,
    coboundary,
    is_coboundary,
    pullback,
    restrict_cochain,
    solve_coboundary,
    twist,
    verify_cocycle,
)
from .cover import CombCover, CoverError, disjoint_union, fiber_product, simplicial_cover
from .glue import (
    CentralExtension,
    GlueError,
    MuNError,
    MuNReduction,
    Refinement,
    Trivialization,
    check_glue_hypothesis,
    homotopy_operator,
    mu_n_reduce,
    mv_glue,
    overlap_cover,
    refine_with_correction,
    restrict_to_piece,
    trivialize_locally,
)

__all__ = [
    "AbelianGroup",
    "CentralExtension",
    "CoefficientError",
    "CoefficientGroup",
    "CocycleCheck",
    "Cochain",
    "CochainError",
    "CombCover",
    "CoverError",
    "GlueError",
    "MuNError",
    "MuNReduction",
    "RationalFunctionGroup",
    "Refinement",
    "Trivialization",
    "check_glue_hypothesis",
    "coboundary",
    "disjoint_union",
    "fiber_product",
    "homotopy_operator",
    "is_coboundary",
    "mu_n_reduce",
    "mv_glue",
    "overlap_cover",
    "pullback",
    "refine_with_correction",
    "restrict_cochain",
    "restrict_to_piece",
    "simplicial_cover",
    "solve_coboundary",
    "trivialize_locally",
    "twist",
    "verify_cocycle",
]
