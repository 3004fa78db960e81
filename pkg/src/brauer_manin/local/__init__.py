"""Local analysis at the places of Q: Hilbert symbols, local points, invariant tables."""
from .hilbert import HALF, ZERO, bad_places, hilbert_formula, hilbert_oracle, hilbert_symbol
from .mpoly import (
    ExpressionError,
    MPoly,
    equation_polynomial,
    format_mpoly,
    parse_expression,
    parse_polynomial,
    square_class_polynomial,
)
from .search import (
    INCONCLUSIVE,
    OBSTRUCTED,
    UNOBSTRUCTED,
    Chart,
    InvariantTable,
    LocalError,
    LocalPoint,
    NoApplicableRepresentative,
    PlaceRow,
    QuaternionClass,
    SearchResult,
    Verdict,
    bm_verdict,
    box_values,
    class_value_on_box,
    evaluate_invariant,
    invariant_row,
    invariant_table,
    local_point_search,
)

__all__ = [
    "HALF", "ZERO", "bad_places", "hilbert_formula", "hilbert_oracle", "hilbert_symbol",
    "ExpressionError", "MPoly", "equation_polynomial", "format_mpoly", "parse_expression",
    "parse_polynomial", "square_class_polynomial",
    "INCONCLUSIVE", "OBSTRUCTED", "UNOBSTRUCTED", "Chart", "InvariantTable", "LocalError",
    "LocalPoint", "NoApplicableRepresentative", "PlaceRow", "QuaternionClass", "SearchResult",
    "Verdict", "bm_verdict", "box_values", "class_value_on_box", "evaluate_invariant",
    "invariant_row", "invariant_table", "local_point_search",
]
