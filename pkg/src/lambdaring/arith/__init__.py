"""Exact arithmetic in O_K for K = Q or a quadratic field."""

from .cycle import Cycle
from .equivalence import EquivalenceResult, is_f_equivalent
from .field import (
    INERT,
    RAMIFIED,
    SPLIT,
    FieldElement,
    Ideal,
    NumberField,
    PrimeIdeal,
    QuadraticField,
    RationalField,
    UnitGroup,
    make_field,
)

__all__ = [
    "Cycle",
    "EquivalenceResult",
    "FieldElement",
    "INERT",
    "Ideal",
    "NumberField",
    "PrimeIdeal",
    "QuadraticField",
    "RAMIFIED",
    "RationalField",
    "SPLIT",
    "UnitGroup",
    "is_f_equivalent",
    "make_field",
]
