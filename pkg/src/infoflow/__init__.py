"""Exact finite Markov categories of semiring-valued kernels, with checkers
for determinism, positivity, causality, dilations and broadcasting."""

from .errors import InfoflowError, InternalInconsistency, NoConditional, UnsupportedOperation, UsageError
from .kernel import FinSet, Kernel, compose, tensor
from .semiring import get_semiring
from .verdict import Status, Strategy, Verdict

__version__ = "0.1.0"

__all__ = [
    "FinSet",
    "InfoflowError",
    "InternalInconsistency",
    "Kernel",
    "NoConditional",
    "Status",
    "Strategy",
    "UnsupportedOperation",
    "UsageError",
    "Verdict",
    "compose",
    "get_semiring",
    "tensor",
]
