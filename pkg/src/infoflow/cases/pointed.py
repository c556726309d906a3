"""Pointed sets with arrows reversed: a morphism from X to Y is a
basepoint-preserving function Y -> X.  The monoidal product is the product
set with the product basepoint, and the one-point set is the unit.

Everything here is concrete enumeration over small sets; no semiring is
involved."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Optional

from ..errors import UsageError
from ..verdict import Verdict

BASE = "∗"


@dataclass(frozen=True)
class PointedSet:
    elements: tuple
    base: object = BASE

    def __post_init__(self):
        if len(set(self.elements)) != len(self.elements):
            raise UsageError("pointed set elements must be distinct")
        if self.elements.count(self.base) != 1:
            raise UsageError(f"basepoint {self.base!r} must occur exactly once")

    @classmethod
    def of_size(cls, n: int, prefix: str = "") -> "PointedSet":
        if n < 1:
            raise UsageError("a pointed set has at least its basepoint")
        return cls((BASE,) + tuple(f"{prefix}{i}" for i in range(1, n)))

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __mul__(self, other: "PointedSet") -> "PointedSet":
        return PointedSet(tuple(product(self.elements, other.elements)), (self.base, other.base))

    @property
    def others(self) -> tuple:
        return tuple(e for e in self.elements if e != self.base)


@dataclass(frozen=True)
class PointedMap:
    """A morphism from ``dom`` to ``cod``; ``mapping`` is the underlying
    function cod -> dom."""

    dom: PointedSet
    cod: PointedSet
    mapping: tuple  # images of cod.elements, in order

    def __post_init__(self):
        if len(self.mapping) != len(self.cod):
            raise UsageError("mapping must be total on the codomain")
        if any(v not in self.dom.elements for v in self.mapping):
            raise UsageError("mapping leaves the domain")
        if self(self.cod.base) != self.dom.base:
            raise UsageError("basepoint must map to basepoint")

    @classmethod
    def from_function(cls, dom: PointedSet, cod: PointedSet, fn) -> "PointedMap":
        return cls(dom, cod, tuple(fn(y) for y in cod.elements))

    def __call__(self, y):
        return self.mapping[self.cod.elements.index(y)]

    def then(self, other: "PointedMap") -> "PointedMap":
        """``other`` after ``self`` in the reversed category: functions compose
        the other way round."""
        if other.dom != self.cod:
            raise UsageError("morphisms do not compose")
        return PointedMap.from_function(self.dom, other.cod, lambda z: self(other(z)))


def functions(src: PointedSet, dst: PointedSet, pointed: bool = True) -> list[tuple]:
    """All functions src -> dst as image tuples, basepoint-preserving unless
    ``pointed`` is false."""
    choices = [[dst.base] if pointed and s == src.base else list(dst.elements) for s in src.elements]
    return list(product(*choices))


def fmt_function(src: PointedSet, images: tuple) -> str:
    return "[" + ",".join(f"{s}→{t}" for s, t in zip(src.elements, images)) + "]"


def hom_set(X: PointedSet, pointed: bool = True) -> PointedSet:
    """Self-maps of X with the identity as basepoint.  ``pointed=False``
    admits every function, which is the only way evaluation can be initial."""
    ident = tuple(X.elements)
    return PointedSet(tuple(functions(X, X, pointed)), ident)


def evaluation(X: PointedSet, pointed: bool = True) -> PointedMap:
    """ev_X: X ← X × X^X, (x, φ) ↦ φ(x)."""
    H = hom_set(X, pointed)
    idx = {x: i for i, x in enumerate(X.elements)}
    return PointedMap.from_function(X, X * H, lambda xe: xe[1][idx[xe[0]]])


def is_dilation_of_identity(pi: PointedMap, X: PointedSet, E: PointedSet) -> Verdict:
    """π: X ← X × E is a dilation of id_X iff π(x, ∗) = x for every x."""
    if pi.dom != X or pi.cod != X * E:
        raise UsageError("expected a morphism X ← X × E")
    for x in X:
        if pi((x, E.base)) != x:
            return Verdict.fails({"x": x, "value": pi((x, E.base))})
    return Verdict.holds("exhaustive")


def dilations_of_identity(X: PointedSet, E: PointedSet):
    """Every π: X ← X × E with π(x, ∗) = x; π(∗, ∗) = ∗ comes for free."""
    XE = X * E
    free = [xe for xe in XE.elements if xe[1] != E.base]
    for values in product(X.elements, repeat=len(free)):
        table = dict(zip(free, values))
        yield PointedMap.from_function(X, XE, lambda xe: xe[0] if xe[1] == E.base else table[xe])


def environments(max_env: int) -> list[PointedSet]:
    return [PointedSet.of_size(k, prefix="e") for k in range(1, max_env + 1)]


def _mediators(ev: PointedMap, pi: PointedMap, X: PointedSet, E: PointedSet) -> list[tuple]:
    """Pointed functions φ: E -> X^X with ev(x, φ(e)) = π(x, e)."""
    H = PointedSet(tuple(dict.fromkeys(h for _, h in ev.cod.elements)), ev.cod.base[1])
    found = []
    for phi in functions(E, H):
        if all(ev((x, phi[k])) == pi((x, e)) for x in X for k, e in enumerate(E.elements)):
            found.append(phi)
    return found


def check_evaluation_initial(X: PointedSet, max_env: int = 3, pointed: bool = True,
                             stats: Optional[dict] = None) -> Verdict:
    """Every dilation of id_X with |E| <= max_env factors through ev_X by
    exactly one pointed φ: E -> X^X."""
    ev = evaluation(X, pointed)
    counts = {"dilations": 0, "factored": 0}
    for E in environments(max_env):
        for pi in dilations_of_identity(X, E):
            counts["dilations"] += 1
            found = _mediators(ev, pi, X, E)
            if len(found) != 1:
                table = {f"({x},{e})": pi((x, e)) for x in X for e in E}
                witness = {"env": list(E.elements), "pi": table, "mediators": len(found)}
                if not found:
                    bad = next(e for e in E.others if pi((X.base, e)) != X.base) if pointed else None
                    if bad is not None:
                        witness["reason"] = (f"π(∗,{bad}) = {pi((X.base, bad))}, so π(·,{bad}) "
                                             "is not basepoint-preserving and lies outside X^X")
                if stats is not None:
                    stats.update(counts)
                return Verdict.fails(witness, [f"{counts['dilations']} dilations examined"])
            counts["factored"] += 1
    if stats is not None:
        stats.update(counts)
    return Verdict.holds("exhaustive", [f"{counts['dilations']} dilations, each with a unique mediator"])


def evaluation_env_marginal(X: PointedSet, pointed: bool = True) -> Verdict:
    """The X^X-marginal of ev_X is φ ↦ φ(∗); check it is the constant
    basepoint morphism."""
    H = hom_set(X, pointed)
    ev = evaluation(X, pointed)
    for phi in H:
        value = ev((X.base, phi))
        if value != X.base:
            return Verdict.fails({"phi": fmt_function(X, phi), "value": value})
    return Verdict.holds("exhaustive", [f"{len(H)} maps all send ∗ to ∗"])


def check_constant_noncreative(X: PointedSet, pointed: bool = True) -> Verdict:
    """Try to write ev_X, seen as a dilation of the constant morphism
    X → X^X with environment X, as (const ⊗ id)∘ι for a dilation ι of id_X.

    Composed with ι, the right-hand side sends (φ, y) to ι(∗, y) whatever φ
    is, while the left-hand side sends it to φ(y)."""
    H = hom_set(X, pointed)
    tried = 0
    for iota in dilations_of_identity(X, X):
        tried += 1
        if all(iota((X.base, y)) == phi[k] for phi in H for k, y in enumerate(X.elements)):
            return Verdict.holds("exhaustive", [f"factored after {tried} candidates"], witness={
                "iota": {f"({x},{y})": iota((x, y)) for x in X for y in X}})
    for k, y in enumerate(X.elements):
        values = {}
        for phi in H:
            values.setdefault(phi[k], phi)
        if len(values) > 1:
            (v1, f1), (v2, f2) = list(values.items())[:2]
            return Verdict.fails({"y": y, "f1": fmt_function(X, f1), "f2": fmt_function(X, f2),
                                  "f1(y)": v1, "f2(y)": v2, "iota_candidates": tried},
                                 [f"none of the {tried} dilations of id_X works: the left-hand side "
                                  f"depends on the function, the right-hand side does not"])
    raise AssertionError("unreachable: a single-valued left-hand side would have factored")


__all__ = [
    "BASE",
    "PointedMap",
    "PointedSet",
    "check_constant_noncreative",
    "check_evaluation_initial",
    "dilations_of_identity",
    "environments",
    "evaluation",
    "evaluation_env_marginal",
    "fmt_function",
    "functions",
    "hom_set",
    "is_dilation_of_identity",
]
