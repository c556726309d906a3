"""Semiring-level property checks: axioms, complements, zerosumfreeness,
entireness and the causality criterion."""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Any, Iterable, Optional

from ..verdict import Status, Strategy, Verdict
from .base import Semiring, SemiringValue


def _pool(sr: Semiring, strategy: Strategy) -> tuple[list, bool]:
    """Elements to search and whether the search covers the whole semiring."""
    elems = sr.elements()
    if elems is not None and strategy.kind != "sampled":
        return list(elems), True
    return sr.structured(), False


def _random_tuples(sr: Semiring, strategy: Strategy, arity: int) -> Iterable[tuple]:
    if strategy.random_count == 0:
        return
    rng = random.Random(strategy.seed)
    for _ in range(strategy.random_count):
        yield tuple(sr.sample(rng) for _ in range(arity))


def _searched(sr, strategy, arity):
    pool, complete = _pool(sr, strategy)
    yield from product(pool, repeat=arity)
    if not complete:
        yield from _random_tuples(sr, strategy, arity)


def _bound(sr, strategy, arity):
    pool, _ = _pool(sr, strategy)
    return len(pool) ** arity + strategy.random_count


def _fmt(sr, names, values):
    return {n: sr.format(v) for n, v in zip(names, values)}


def check_semiring_axioms(sr: Semiring, strategy: Strategy = Strategy()) -> Verdict:
    """Commutative semiring laws; exhaustive on finite carriers."""
    z, o = sr.zero, sr.one
    add, mul = sr.add, sr.mul
    if z == o:
        return Verdict.fails({"law": "nontrivial", "zero": sr.format(z)})
    pool, complete = _pool(sr, strategy)
    for a in pool:
        if add(a, z) != a:
            return Verdict.fails({"law": "additive-unit", "a": sr.format(a)})
        if mul(a, o) != a:
            return Verdict.fails({"law": "multiplicative-unit", "a": sr.format(a)})
        if mul(a, z) != z:
            return Verdict.fails({"law": "annihilation", "a": sr.format(a)})
    for a, b in product(pool, repeat=2):
        if add(a, b) != add(b, a):
            return Verdict.fails({"law": "additive-commutativity", **_fmt(sr, "ab", (a, b))})
        if mul(a, b) != mul(b, a):
            return Verdict.fails({"law": "multiplicative-commutativity", **_fmt(sr, "ab", (a, b))})
    for a, b, c in _searched(sr, strategy, 3):
        if add(add(a, b), c) != add(a, add(b, c)):
            return Verdict.fails({"law": "additive-associativity", **_fmt(sr, "abc", (a, b, c))})
        if mul(mul(a, b), c) != mul(a, mul(b, c)):
            return Verdict.fails({"law": "multiplicative-associativity", **_fmt(sr, "abc", (a, b, c))})
        if mul(a, add(b, c)) != add(mul(a, b), mul(a, c)):
            return Verdict.fails({"law": "distributivity", **_fmt(sr, "abc", (a, b, c))})
    if complete:
        return Verdict.holds("exhaustive")
    return Verdict.holds(f"bound:{_bound(sr, strategy, 3)}", ["laws checked on a finite pool only"])


def find_complement(r: Any, sr: Optional[Semiring] = None) -> Optional[Any]:
    """Some element c with r + c = 1, or ``None``.

    Accepts a ``SemiringValue`` (returns one) or a raw payload with its
    semiring.  Finite carriers are searched; infinite kinds use the closed
    form for that kind, never sampling.
    """
    if isinstance(r, SemiringValue):
        c = r.owner.complement(r.payload)
        return None if c is None else SemiringValue(r.owner, c)
    return sr.complement(r)


@lru_cache(maxsize=None)
def check_zerosumfree(sr: Semiring, strategy: Strategy = Strategy()) -> Verdict:
    if "zerosumfree" in sr.certified:
        return Verdict.holds(sr.certified["zerosumfree"])
    z = sr.zero
    candidates = _searched(sr, strategy, 2)
    if sr.has_negation:
        extra = [(a, sr.negate(a)) for a in sr.structured()]
        candidates = _chain(extra, candidates)
    for r, s in candidates:
        if sr.add(r, s) == z and not (r == z and s == z):
            return Verdict.fails(_fmt(sr, "rs", (r, s)), [f"{sr.format(r)} + {sr.format(s)} = 0"])
    if sr.finite and strategy.kind != "sampled":
        return Verdict.holds("exhaustive")
    return Verdict.unknown(_bound(sr, strategy, 2))


@lru_cache(maxsize=None)
def check_entire(sr: Semiring, strategy: Strategy = Strategy()) -> Verdict:
    if "entire" in sr.certified:
        return Verdict.holds(sr.certified["entire"])
    z = sr.zero
    if z == sr.one:
        return Verdict.fails({"law": "nontrivial"})
    for a, b in _searched(sr, strategy, 2):
        if a != z and b != z and sr.mul(a, b) == z:
            return Verdict.fails(_fmt(sr, "ab", (a, b)), [f"{sr.format(a)} * {sr.format(b)} = 0"])
    if sr.finite and strategy.kind != "sampled":
        return Verdict.holds("exhaustive")
    return Verdict.unknown(_bound(sr, strategy, 2))


def _causal_violation(sr: Semiring, s, t, v, w) -> bool:
    vw = sr.add(v, w)
    if sr.complement(s) is None or sr.complement(t) is None or sr.complement(vw) is None:
        return False
    if sr.mul(s, vw) != sr.mul(t, vw):
        return False
    return sr.mul(s, v) != sr.mul(t, v) or sr.mul(s, w) != sr.mul(t, w)


@lru_cache(maxsize=None)
def check_causality_criterion(sr: Semiring, strategy: Strategy = Strategy()) -> Verdict:
    """Search for complemented s, t, v+w with s(v+w) = t(v+w) but sv != tv
    or sw != tw.  Known counterexamples are tried first."""
    names = ("s", "t", "v", "w")
    for quad in sr.seed_quadruples():
        if _causal_violation(sr, *quad):
            return Verdict.fails(_fmt(sr, names, quad), ["seeded counterexample"])
    if "causal-criterion" in sr.certified:
        return Verdict.holds(sr.certified["causal-criterion"])
    # complements are structural, so precompute which elements have one
    pool, complete = _pool(sr, strategy)
    has_c = {i: sr.complement(a) is not None for i, a in enumerate(pool)}
    comp_pool = [a for i, a in enumerate(pool) if has_c[i]]
    for s, t in product(comp_pool, repeat=2):
        for v, w in product(pool, repeat=2):
            if _causal_violation(sr, s, t, v, w):
                return Verdict.fails(_fmt(sr, names, (s, t, v, w)))
    if not complete:
        for quad in _random_tuples(sr, strategy, 4):
            if _causal_violation(sr, *quad):
                return Verdict.fails(_fmt(sr, names, quad), ["found by sampling"])
        return Verdict.unknown(_bound(sr, strategy, 4))
    return Verdict.holds("exhaustive", [f"{len(pool) ** 4} quadruples"])


def _chain(first, second):
    yield from first
    yield from second


@dataclass(frozen=True)
class MetaRow:
    semiring: str
    zerosumfree: Verdict
    causal: Verdict


def audit_meta_implication(semirings: Iterable[Semiring], strategy: Strategy = Strategy()):
    """Check that the causality criterion implies zerosumfreeness on each
    semiring and list the semirings refuting the converse.

    Returns ``(rows, verdict, refutations)``; the verdict fails if any
    semiring satisfies the criterion without being zerosumfree.
    """
    rows, refutations, violations = [], [], []
    for sr in semirings:
        zsf = check_zerosumfree(sr, strategy)
        causal = check_causality_criterion(sr, strategy)
        rows.append(MetaRow(sr.name, zsf, causal))
        if causal.status is Status.HOLDS and zsf.status is Status.FAILS:
            violations.append(sr.name)
        if zsf.status is Status.HOLDS and causal.status is Status.FAILS:
            refutations.append(sr.name)
    trace = [f"converse refuted by: {', '.join(refutations) or 'none'}"]
    if violations:
        return rows, Verdict.fails({"semirings": violations}, trace), refutations
    return rows, Verdict.holds("exhaustive", trace), refutations
