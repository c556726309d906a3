"""Three-valued check outcomes and search strategies."""

from __future__ import annotations

import dataclasses
import enum
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Iterable, Optional

from .errors import UsageError


class Status(str, enum.Enum):
    HOLDS = "HOLDS"
    FAILS = "FAILS"
    UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class Verdict:
    """Outcome of a check.

    ``certificate`` is ``"exhaustive"``, ``"theory:<tag>"``, ``"bound:<n>"``,
    ``"vacuous"`` (antecedent false) or ``"witness"`` (for failures).
    ``violations`` lists every violating point when the check enumerated them;
    ``witness`` is the canonical one.
    """

    status: Status
    certificate: str
    witness: Any = None
    trace: tuple = ()
    violations: tuple = ()

    @classmethod
    def holds(cls, certificate: str = "exhaustive", trace: Iterable[str] = (), witness: Any = None) -> "Verdict":
        return cls(Status.HOLDS, certificate, witness, tuple(trace))

    @classmethod
    def fails(cls, witness: Any, trace: Iterable[str] = (), violations: Iterable = ()) -> "Verdict":
        return cls(Status.FAILS, "witness", witness, tuple(trace), tuple(violations))

    @classmethod
    def unknown(cls, bound: Any, trace: Iterable[str] = ()) -> "Verdict":
        return cls(Status.UNKNOWN, f"bound:{bound}", None, tuple(trace))

    @classmethod
    def vacuous(cls, trace: Iterable[str] = ()) -> "Verdict":
        return cls(Status.HOLDS, "vacuous", None, tuple(trace))

    @property
    def ok(self) -> bool:
        return self.status is Status.HOLDS

    @property
    def failed(self) -> bool:
        return self.status is Status.FAILS

    @property
    def is_vacuous(self) -> bool:
        return self.certificate == "vacuous"

    def with_trace(self, *lines: str) -> "Verdict":
        return dataclasses.replace(self, trace=self.trace + tuple(lines))

    def to_json(self) -> dict:
        return {
            "status": self.status.value,
            "certificate": self.certificate,
            "witness": jsonable(self.witness),
            "trace": list(self.trace),
        }

    def summary(self) -> str:
        return f"{self.status.value} ({self.certificate})"


@dataclass(frozen=True)
class Strategy:
    """How an infinite search is run.  ``auto`` is exhaustive for finite
    semirings and structured (plus theory certificates) otherwise."""

    kind: str = "auto"
    seed: Optional[int] = None
    samples: int = 10_000

    KINDS = ("auto", "exhaustive", "sampled", "certified")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise UsageError(f"unknown strategy {self.kind!r}")
        if self.kind == "sampled" and self.seed is None:
            raise UsageError("sampled strategies need an explicit seed")
        if self.samples < 0:
            raise UsageError("sample count must be nonnegative")

    @classmethod
    def sampled(cls, seed: int, samples: int = 10_000) -> "Strategy":
        return cls("sampled", seed, samples)

    @property
    def random_count(self) -> int:
        return self.samples if self.kind == "sampled" else 0


@dataclass
class Violation:
    point: dict
    lhs: Any
    rhs: Any
    rhs_zero: bool = field(default=False, repr=False)


def check_equations(semiring, items, trace: Iterable[str] = (), certificate: str = "exhaustive",
                    prefer: Optional[Callable[[Violation], bool]] = None,
                    explain: Optional[Callable[[Violation], str]] = None) -> Verdict:
    """Compare ``lhs == rhs`` for every ``(point, lhs, rhs)`` in ``items``.

    The canonical witness is the first violation accepted by ``prefer``,
    else the first whose right-hand (factored) side vanishes while the left
    does not -- mass that cancellation hid -- else the first overall.
    ``explain`` renders the chosen violation as a one-line equation.
    """
    zero = semiring.zero
    found = []
    for point, lhs, rhs in items:
        if lhs != rhs:
            found.append(Violation(point, lhs, rhs, rhs == zero and lhs != zero))
    if not found:
        return Verdict.holds(certificate, trace)
    primary = None
    if prefer is not None:
        primary = next((v for v in found if prefer(v)), None)
    if primary is None:
        primary = next((v for v in found if v.rhs_zero), found[0])
    fmt = semiring.format
    rendered = [dict(v.point, lhs=fmt(v.lhs), rhs=fmt(v.rhs)) for v in found]
    witness = dict(primary.point, lhs=fmt(primary.lhs), rhs=fmt(primary.rhs))
    if explain is not None:
        witness["detail"] = explain(primary)
    return Verdict.fails(witness, trace, rendered)


def jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if hasattr(obj, "to_json"):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    if dataclasses.is_dataclass(obj):
        return {f.name: jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
    return str(obj)
