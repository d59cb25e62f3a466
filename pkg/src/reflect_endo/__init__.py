"""Exact endomorphism counts, homomorphism tables and random-endomorphism
statistics for the irreducible finite reflection groups, together with a
brute-force oracle that re-derives the small cases from scratch."""

from .groups import (
    BudgetExceededError,
    CoxeterPresentation,
    DihedralElt,
    GroupId,
    SignedPerm,
    UnsupportedRepresentationError,
    compose,
    coxeter_generators,
    coxeter_presentation,
    enumerate_elements,
)

__all__ = [
    "BudgetExceededError",
    "CoxeterPresentation",
    "DihedralElt",
    "GroupId",
    "SignedPerm",
    "UnsupportedRepresentationError",
    "compose",
    "coxeter_generators",
    "coxeter_presentation",
    "enumerate_elements",
]

__version__ = "0.1.0"
