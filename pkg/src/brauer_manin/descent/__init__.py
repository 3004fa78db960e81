"""Galois descent of Čech 2-cocycles along a finite group action."""
from .datum import DescentDatum, DescentError, DivisorClassMap, lift_class
from .steps import (
    Assembly,
    ConstantsModule,
    DescentOutcome,
    EpsilonResult,
    H3Result,
    ObstructionClass,
    ObstructionNonzero,
    all_c1,
    assemble_descent,
    c1_cocycle,
    constants_module,
    epsilon_adjust,
    h3_test_and_lift,
    obstruction_class,
    run_descent,
    verify_twisted_identity,
)

__all__ = [
    "Assembly",
    "ConstantsModule",
    "DescentDatum",
    "DescentError",
    "DescentOutcome",
    "DivisorClassMap",
    "EpsilonResult",
    "H3Result",
    "ObstructionClass",
    "ObstructionNonzero",
    "all_c1",
    "assemble_descent",
    "c1_cocycle",
    "constants_module",
    "epsilon_adjust",
    "h3_test_and_lift",
    "lift_class",
    "obstruction_class",
    "run_descent",
    "verify_twisted_identity",
]
