"""Sums of reciprocal fractional parts, lattice box counts, and the
empirical maximal phi step function, computed with rigorous enclosures."""

from ._core import (
    InvariantViolation,
    PrecisionExhausted,
    ResonanceError,
    cardinality_bridge,
    count,
    dyadic_profile,
    oracle_count,
    phi_table,
    sum_reciprocals,
)

__all__ = [
    "InvariantViolation",
    "PrecisionExhausted",
    "ResonanceError",
    "cardinality_bridge",
    "count",
    "dyadic_profile",
    "oracle_count",
    "phi_table",
    "sum_reciprocals",
]
