"""Finite-dimensional and finite rings: centers, radicals, socles and central essentiality."""

from .algebra import (
    DEFAULT_BOUND,
    Algebra,
    AlgebraFormatError,
    Element,
    EnumerationBoundExceeded,
    FiniteRing,
    Violation,
    dumps,
    from_json,
    is_commutative,
    loads,
    regular_representation,
    to_json,
    validate,
)
from .ce import CEReport, ce_witness, decide, is_ce_exhaustive, is_ce_subspace, lemma21_check, prop34_check
from .exactlin import GF, QQ, PrimeField, ResidueModule, Subspace
from .invariants import InvariantSet, center, compute_invariants, radical, socle_central, socle_right

__all__ = [
    "DEFAULT_BOUND", "Algebra", "AlgebraFormatError", "Element", "EnumerationBoundExceeded", "FiniteRing",
    "Violation", "dumps", "from_json", "is_commutative", "loads", "regular_representation", "to_json", "validate",
    "CEReport", "ce_witness", "decide", "is_ce_exhaustive", "is_ce_subspace", "lemma21_check", "prop34_check",
    "GF", "QQ", "PrimeField", "ResidueModule", "Subspace",
    "InvariantSet", "center", "compute_invariants", "radical", "socle_central", "socle_right",
]
__version__ = "0.1.0"
