"""Finite lattices given by join/meet tables, and the semiring they induce
(join as addition, meet as multiplication)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import gcd
from typing import Callable, Sequence

from ..errors import UsageError
from ..verdict import Verdict
from .base import Semiring


@dataclass(frozen=True)
class FiniteLattice:
    elements: tuple[str, ...]
    join: tuple[tuple[int, ...], ...]
    meet: tuple[tuple[int, ...], ...]
    bottom: int
    top: int

    def __post_init__(self):
        n = len(self.elements)
        if n == 0 or len(set(self.elements)) != n:
            raise UsageError("lattice labels must be nonempty and distinct")
        for name, table in (("join", self.join), ("meet", self.meet)):
            if len(table) != n or any(len(row) != n for row in table):
                raise UsageError(f"{name} table must be {n}x{n}")
            if any(not isinstance(v, int) or not 0 <= v < n for row in table for v in row):
                raise UsageError(f"{name} table has entries outside 0..{n - 1}")
        if not (0 <= self.bottom < n and 0 <= self.top < n):
            raise UsageError("bottom/top out of range")

    @classmethod
    def from_order(cls, labels: Sequence[str], leq: Callable[[int, int], bool]) -> "FiniteLattice":
        """Build tables from a partial order, failing if joins or meets are missing."""
        n = len(labels)
        idx = range(n)

        def extremum(i, j, upper):
            bounds = [k for k in idx if (leq(i, k) and leq(j, k) if upper else leq(k, i) and leq(k, j))]
            best = [k for k in bounds if all((leq(k, m) if upper else leq(m, k)) for m in bounds)]
            if len(best) != 1:
                raise UsageError(f"{labels[i]} and {labels[j]} have no {'join' if upper else 'meet'}")
            return best[0]

        join = tuple(tuple(extremum(i, j, True) for j in idx) for i in idx)
        meet = tuple(tuple(extremum(i, j, False) for j in idx) for i in idx)
        bottom = next(k for k in idx if all(leq(k, m) for m in idx))
        top = next(k for k in idx if all(leq(m, k) for m in idx))
        return cls(tuple(labels), join, meet, bottom, top)


def chain(n: int) -> FiniteLattice:
    return FiniteLattice.from_order([str(i) for i in range(n)], lambda i, j: i <= j)


def boolean_algebra(atoms: int) -> FiniteLattice:
    labels = ["{" + ",".join(str(b) for b in range(atoms) if s >> b & 1) + "}" for s in range(1 << atoms)]
    return FiniteLattice.from_order(labels, lambda i, j: i & j == i)


def divisor_lattice(n: int) -> FiniteLattice:
    divs = [d for d in range(1, n + 1) if n % d == 0]
    lat = FiniteLattice.from_order([str(d) for d in divs], lambda i, j: divs[j] % divs[i] == 0)
    # sanity: order-derived tables agree with gcd/lcm
    for i, j in product(range(len(divs)), repeat=2):
        assert divs[lat.meet[i][j]] == gcd(divs[i], divs[j])
    return lat


def diamond_m3() -> FiniteLattice:
    up = {(0, k) for k in range(5)} | {(k, 4) for k in range(5)} | {(k, k) for k in range(5)}
    return FiniteLattice.from_order(["0", "a", "b", "c", "1"], lambda i, j: (i, j) in up)


def pentagon_n5() -> FiniteLattice:
    # 0 < a < c < 1, 0 < b < 1
    up = {(0, k) for k in range(5)} | {(k, 4) for k in range(5)} | {(k, k) for k in range(5)} | {(1, 3)}
    return FiniteLattice.from_order(["0", "a", "b", "c", "1"], lambda i, j: (i, j) in up)


def validate_lattice(lat: FiniteLattice) -> Verdict:
    """Exhaustively check the bounded distributive lattice laws.

    The first violated law is named in the witness together with the
    offending elements."""
    J, M, L = lat.join, lat.meet, lat.elements
    n = len(L)
    idx = range(n)

    def fail(law, *elems):
        return Verdict.fails({"law": law, "elements": [L[e] for e in elems]},
                             trace=[f"{law} violated"])

    for a in idx:
        if J[a][a] != a:
            return fail("join-idempotent", a)
        if M[a][a] != a:
            return fail("meet-idempotent", a)
        if J[lat.bottom][a] != a:
            return fail("bottom-unit", a)
        if M[lat.top][a] != a:
            return fail("top-unit", a)
    for a, b in product(idx, repeat=2):
        if J[a][b] != J[b][a]:
            return fail("join-commutative", a, b)
        if M[a][b] != M[b][a]:
            return fail("meet-commutative", a, b)
        if J[a][M[a][b]] != a or M[a][J[a][b]] != a:
            return fail("absorption", a, b)
    for a, b, c in product(idx, repeat=3):
        if J[J[a][b]][c] != J[a][J[b][c]]:
            return fail("join-associative", a, b, c)
        if M[M[a][b]][c] != M[a][M[b][c]]:
            return fail("meet-associative", a, b, c)
    for a, b, c in product(idx, repeat=3):
        if M[a][J[b][c]] != J[M[a][b]][M[a][c]]:
            return fail("distributivity", a, b, c)
    return Verdict.holds("exhaustive", [f"{n} elements, {n ** 3} triples"])


class LatticeSemiring(Semiring):
    kind = "lattice"

    def __init__(self, name: str, lattice: FiniteLattice):
        verdict = validate_lattice(lattice)
        if not verdict.ok:
            raise UsageError(f"{name} is not a bounded distributive lattice: {verdict.witness}")
        self.name = name
        self.lattice = lattice
        self.zero = lattice.bottom
        self.one = lattice.top
        self._elements = list(range(len(lattice.elements)))
        self.certified = {}

    def add(self, a, b):
        return self.lattice.join[a][b]

    def mul(self, a, b):
        return self.lattice.meet[a][b]

    def elements(self):
        return self._elements

    def parse(self, text):
        try:
            return self.lattice.elements.index(str(text).strip())
        except ValueError:
            raise UsageError(f"{text!r} is not an element of {self.name}") from None

    def format(self, a):
        return self.lattice.elements[a]
