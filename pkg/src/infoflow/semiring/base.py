"""Commutative semiring interface.

Kernels and checkers work on raw payloads through a ``Semiring`` object;
``SemiringValue`` wraps a payload with its owner for the public API, where
mixing semirings must be caught.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import reduce
from itertools import product
from typing import Any, Iterable, Optional

from ..errors import UnsupportedOperation, UsageError


class Semiring:
    """Base class.  Subclasses supply ``zero``, ``one``, ``add``, ``mul``,
    ``parse`` and ``format``, plus whatever optional structure they have."""

    name: str = "semiring"
    kind: str = "abstract"
    zero: Any = None
    one: Any = None
    # property -> theory tag naming why it holds without search
    certified: dict = {}
    division: bool = False

    # -- arithmetic ---------------------------------------------------
    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    def sum(self, values: Iterable):
        return reduce(self.add, values, self.zero)

    def prod(self, values: Iterable):
        return reduce(self.mul, values, self.one)

    def div(self, a, b):
        raise UnsupportedOperation(f"{self.name} has no division")

    def negate(self, a):
        raise UnsupportedOperation(f"{self.name} has no additive inverses")

    @property
    def has_negation(self) -> bool:
        return False

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_negative(self, a) -> bool:
        """Only ordered kinds with additive inverses have negative elements."""
        return False

    # -- enumeration --------------------------------------------------
    @property
    def finite(self) -> bool:
        return self.elements() is not None

    def elements(self) -> Optional[list]:
        """All elements for finite semirings, else ``None``."""
        return None

    def structured(self) -> list:
        """A small pool of interesting elements used before random sampling."""
        elems = self.elements()
        return list(elems) if elems is not None else [self.zero, self.one]

    def sample(self, rng: random.Random):
        pool = self.elements() or self.structured()
        return rng.choice(pool)

    def split(self, value, parts: int, rng: random.Random) -> Optional[list]:
        """Random ``parts`` summands adding to ``value``, or ``None``."""
        elems = self.elements()
        if elems is None:
            return None
        options = [t for t in product(elems, repeat=parts) if self.sum(t) == value]
        return list(rng.choice(options)) if options else None

    def seed_quadruples(self) -> list:
        """Known candidate counterexamples for the causality criterion."""
        return []

    def complement(self, r) -> Optional[Any]:
        """Closed-form complement for infinite kinds; finite kinds search."""
        elems = self.elements()
        if elems is None:
            return None
        return next((c for c in elems if self.add(r, c) == self.one), None)

    # -- literals -----------------------------------------------------
    def parse(self, text) -> Any:
        raise NotImplementedError

    def format(self, a) -> str:
        return str(a)

    def value(self, payload) -> "SemiringValue":
        return SemiringValue(self, payload)

    def __call__(self, text) -> "SemiringValue":
        return SemiringValue(self, self.parse(text))

    def __repr__(self):
        return f"<semiring {self.name}>"


@dataclass(frozen=True)
class SemiringValue:
    owner: Semiring
    payload: Any

    def _check(self, other: "SemiringValue"):
        if not isinstance(other, SemiringValue) or other.owner is not self.owner:
            other_name = getattr(getattr(other, "owner", None), "name", type(other).__name__)
            raise UsageError(f"cannot combine elements of {self.owner.name} and {other_name}")

    def __add__(self, other):
        self._check(other)
        return SemiringValue(self.owner, self.owner.add(self.payload, other.payload))

    def __mul__(self, other):
        self._check(other)
        return SemiringValue(self.owner, self.owner.mul(self.payload, other.payload))

    def __eq__(self, other):
        return (isinstance(other, SemiringValue) and other.owner is self.owner
                and other.payload == self.payload)

    def __hash__(self):
        return hash((self.owner.name, self.payload))

    def __str__(self):
        return self.owner.format(self.payload)

    def __repr__(self):
        return f"{self.owner.name}:{self}"


def add(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    return a + b


def mul(a: SemiringValue, b: SemiringValue) -> SemiringValue:
    return a * b
