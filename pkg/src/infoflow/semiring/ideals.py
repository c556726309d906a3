"""Ideals of the ring Z[2i] = {m + 2ik} as a commutative semiring.

An element m + 2ik is stored as the integer pair (m, k).  An ideal is an
additive subgroup closed under multiplication by 2i, which acts on pairs as
T(m, k) = (-4k, m).  Subgroups are kept in Hermite normal form, so equal
ideals have equal bases.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass
from math import gcd
from typing import Iterable, Optional

from ..errors import UsageError
from .base import Semiring

Pair = tuple[int, int]


def hnf(vectors: Iterable[Pair]) -> tuple[Pair, ...]:
    """Hermite normal form of the subgroup of Z^2 generated by ``vectors``.

    Rows are ``(p, q), (0, r)`` with ``p > 0, r > 0, 0 <= q < r``, dropping
    rows that do not occur for lower-rank subgroups.
    """
    lead: Optional[list[int]] = None
    tail = 0
    for a, b in vectors:
        if a == 0:
            tail = gcd(tail, b)
            continue
        if lead is None:
            lead = [a, b]
            continue
        u, w = lead, [a, b]
        while w[0] != 0:
            k = u[0] // w[0]
            u, w = w, [u[0] - k * w[0], u[1] - k * w[1]]
        lead = u
        tail = gcd(tail, w[1])
    rows = []
    if lead is not None:
        p, q = lead
        if p < 0:
            p, q = -p, -q
        if tail:
            q %= tail
        rows.append((p, q))
    if tail:
        rows.append((0, tail))
    return tuple(rows)


def times_2i(v: Pair) -> Pair:
    return (-4 * v[1], v[0])


def element_mul(x: Pair, y: Pair) -> Pair:
    """(a1 + 2i b1)(a2 + 2i b2) = (a1 a2 - 4 b1 b2) + 2i (a1 b2 + a2 b1)."""
    return (x[0] * y[0] - 4 * x[1] * y[1], x[0] * y[1] + y[0] * x[1])


@dataclass(frozen=True, order=True)
class Ideal:
    basis: tuple[Pair, ...]

    def __contains__(self, v: Pair) -> bool:
        return hnf(self.basis + (tuple(v),)) == self.basis

    @property
    def is_zero(self) -> bool:
        return not self.basis

    def __str__(self):
        return format_ideal(self)


def canonicalize_ideal(generators: Iterable[Pair]) -> Ideal:
    """Smallest ideal containing ``generators``."""
    basis = hnf(tuple(map(tuple, generators)))
    while True:
        grown = hnf(basis + tuple(times_2i(v) for v in basis))
        if grown == basis:
            return Ideal(basis)
        basis = grown


def principal(m: int, k: int = 0) -> Ideal:
    """The ideal generated by m + 2ik."""
    return canonicalize_ideal([(m, k)])


ZERO = Ideal(())
UNIT = canonicalize_ideal([(1, 0)])


def ideal_add(i: Ideal, j: Ideal) -> Ideal:
    return canonicalize_ideal(i.basis + j.basis)


def ideal_mul(i: Ideal, j: Ideal) -> Ideal:
    return canonicalize_ideal([element_mul(x, y) for x in i.basis for y in j.basis])


def format_ideal(i: Ideal) -> str:
    if i.is_zero:
        return "(0)"
    (p, q), (_, r) = i.basis
    if q == 0:
        return f"({p},{2 * r}i)"
    return f"[[{p},{q}],[0,{r}]]"


_SPLIT = re.compile(r"^\(\s*(-?\d+)\s*,\s*(-?\d+)\s*i\s*\)$")
_MATRIX = re.compile(r"^\[\s*\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\]\s*,\s*\[\s*0\s*,\s*(-?\d+)\s*\]\s*\]$")


def parse_ideal(text: str) -> Ideal:
    """Parse ``(0)``, ``(m,ki)`` (the set mZ + kiZ) or ``[[p,q],[0,r]]``."""
    s = str(text).strip()
    if re.fullmatch(r"\(\s*0\s*\)", s):
        return ZERO
    found = _SPLIT.match(s)
    if found:
        m, k = int(found.group(1)), int(found.group(2))
        if m == 0 or k == 0 or k % 2:
            raise UsageError(f"{s!r} is not a full-rank subgroup of Z[2i]")
        gens = [(m, 0), (0, k // 2)]
    else:
        found = _MATRIX.match(s)
        if not found:
            raise UsageError(f"cannot parse ideal literal {s!r}")
        p, q, r = map(int, found.groups())
        gens = [(p, q), (0, r)]
    basis = hnf(gens)
    ideal = canonicalize_ideal(basis)
    if ideal.basis != basis:
        raise UsageError(f"{s!r} is a subgroup but not an ideal")
    return ideal


class IdealQuantale(Semiring):
    """Ideals of Z[2i] under sum and product.  Every element has the unit
    ideal as a complement, the ring is a domain (entire), and ideal sums
    vanish only for zero summands."""

    name = "ideal-z2i"
    kind = "ideal-quantale"
    zero = ZERO
    one = UNIT
    certified = {
        "entire": "theory:integral-domain",
        "zerosumfree": "theory:ideal-sum",
    }

    def add(self, a, b):
        return ideal_add(a, b)

    def mul(self, a, b):
        return ideal_mul(a, b)

    def structured(self):
        return [ZERO, UNIT, principal(2), principal(0, 1), principal(1, 1),
                principal(4), principal(2, 1), principal(3)]

    def sample(self, rng: random.Random):
        gens = [(rng.randint(-6, 6), rng.randint(-3, 3)) for _ in range(rng.randint(0, 2))]
        return canonicalize_ideal(gens)

    def split(self, value, parts, rng):
        # I = I + J whenever J is contained in I
        pool = self.structured()
        return [value] + [ideal_mul(value, rng.choice(pool)) for _ in range(parts - 1)]

    def complement(self, r):
        return UNIT

    def seed_quadruples(self):
        two, two_i = principal(2), principal(0, 1)
        return [(two, two_i, two, two_i)]

    def parse(self, text):
        if isinstance(text, Ideal):
            return text
        return parse_ideal(text)

    def format(self, a):
        return format_ideal(a)
