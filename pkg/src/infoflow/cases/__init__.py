"""Reproductions of the worked examples, each frozen as a JSON fixture.

The quasi-Borel and name-generation examples are not here: they need
measure theory on function spaces and have no finite reproduction."""

from .pointed import PointedMap, PointedSet
from .registry import CASES, CaseResult, compare, in_rank1_stochastic_subcategory, load_fixture, run_all, run_case

__all__ = [
    "CASES",
    "CaseResult",
    "PointedMap",
    "PointedSet",
    "compare",
    "in_rank1_stochastic_subcategory",
    "load_fixture",
    "run_all",
    "run_case",
]
