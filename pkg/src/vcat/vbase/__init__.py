"""Pluggable finite enrichment bases and the structural property verifier."""

from .core import (
    BaseCategory,
    CommutingSquare,
    CoproductCone,
    PullbackCone,
    compose_base,
    comparison_morphism,
    count_factorizations,
    distribute,
    is_pullback_square,
    square_commutes,
    universal_into_pullback,
    verify_base_properties,
)
from .fincat import FINCAT, FinCatBase
from .finset import FINSET, FinSetBase, FinSetMor, FinSetObj

__all__ = [
    "BaseCategory",
    "CommutingSquare",
    "CoproductCone",
    "PullbackCone",
    "compose_base",
    "comparison_morphism",
    "count_factorizations",
    "distribute",
    "is_pullback_square",
    "square_commutes",
    "universal_into_pullback",
    "verify_base_properties",
    "FINSET",
    "FinSetBase",
    "FinSetObj",
    "FinSetMor",
    "FINCAT",
    "FinCatBase",
]
