"""Finite groups, modules over them and their low-degree cohomology."""
from .bar import (
    CohomologyClass,
    CohomologyGroup,
    NotACocycle,
    WitnessResult,
    coboundary,
    coboundary_witness,
    cocycle_representatives,
    cohomology_group,
    first_cocycle_failure,
    inflation_map,
    is_cocycle,
    sparse_elementary_divisors,
    zero_cochain,
)
from .groups import FiniteGroupTable, GroupTableError
from .lattice import GLattice, GModuleError

__all__ = [
    "CohomologyClass",
    "CohomologyGroup",
    "FiniteGroupTable",
    "GLattice",
    "GModuleError",
    "GroupTableError",
    "NotACocycle",
    "WitnessResult",
    "coboundary",
    "coboundary_witness",
    "cocycle_representatives",
    "cohomology_group",
    "first_cocycle_failure",
    "inflation_map",
    "is_cocycle",
    "sparse_elementary_divisors",
    "zero_cochain",
]
