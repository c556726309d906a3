"""Dilations, dilational equality, initiality, non-creativity and
broadcasting.

A dilation of p: A -> X is a kernel π: A -> X⊗E whose X-marginal is p.
Statements quantifying over "all dilations" are checked against an explicit
family (exhaustive for finite semirings, structured plus seeded-random
otherwise) and report their bound.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import islice, product
from math import prod
from typing import Iterator, Optional

from .errors import InternalInconsistency, UsageError
from .kernel import (
    FinSet,
    Kernel,
    as_equal,
    compose,
    compose_all,
    copy,
    identity,
    is_deterministic,
    marginalize,
    swap,
    tensor,
)
from .linalg import lp_solve, solve_affine
from .semiring import Semiring
from .semiring.properties import check_causality_criterion, check_zerosumfree
from .verdict import Status, Verdict, check_equations

RATIONAL_KINDS = ("rational", "nonneg-rational")

# enumerations larger than this are truncated and reported as bounded
ENUMERATION_LIMIT = 20_000


def env_set(k: int) -> FinSet:
    return FinSet.of(*(f"e{i + 1}" for i in range(k)))


@dataclass(frozen=True)
class Dilation:
    """π: A -> X⊗E with X-marginal equal to ``base``."""

    base: Kernel
    total: Kernel
    name: str = ""

    def __post_init__(self):
        _check_shape(self.total, self.base)
        verdict = verify_dilation(self.total, self.base)
        if not verdict.ok:
            raise UsageError(f"not a dilation of the base: {verdict.witness}")

    @property
    def x_rank(self) -> int:
        return self.base.cod.rank

    @property
    def env(self) -> FinSet:
        return self.total.cod.sub(range(self.x_rank, self.total.cod.rank))

    @property
    def env_marginal(self) -> Kernel:
        return marginalize(self.total, range(self.x_rank, self.total.cod.rank))

    @property
    def semiring(self) -> Semiring:
        return self.base.semiring


def _check_shape(total: Kernel, base: Kernel):
    if total.semiring is not base.semiring:
        raise UsageError("dilation and base live over different semirings")
    if total.dom != base.dom:
        raise UsageError(f"dilation domain {total.dom} differs from base domain {base.dom}")
    r = base.cod.rank
    if total.cod.factors[:r] != base.cod.factors:
        raise UsageError(f"dilation codomain {total.cod} does not start with {base.cod}")


def verify_dilation(total: Kernel, base: Kernel) -> Verdict:
    """Exact check that discarding the environment of ``total`` gives ``base``."""
    _check_shape(total, base)
    marg = marginalize(total, range(base.cod.rank))
    al, xl = base.dom.labels, base.cod.labels

    def items():
        for i in range(len(al)):
            for j in range(len(xl)):
                yield {"a": al[i], "x": xl[j]}, marg.cols[i][j], base.cols[i][j]

    return check_equations(base.semiring, items(), ["Σ_e π(x,e|a) = p(x|a)"])


@dataclass(frozen=True)
class DilationMorphism:
    """f: E -> E' with (id_X ⊗ f)∘π = π'."""

    source: Dilation
    target: Dilation
    representative: Kernel

    def __post_init__(self):
        if self.source.base != self.target.base:
            raise UsageError("dilation morphisms need a common base")
        pushed = push_environment(self.source, self.representative)
        if pushed != self.target.total:
            raise UsageError("representative does not carry the source onto the target")

    def then(self, other: "DilationMorphism") -> "DilationMorphism":
        return DilationMorphism(self.source, other.target, compose(other.representative, self.representative))


def push_environment(d: Dilation, f: Kernel) -> Kernel:
    """(id_X ⊗ f)∘π."""
    return compose(tensor(identity(d.semiring, d.base.cod), f), d.total)


def make_dilation(kind: str, of: Kernel, m: Optional[Kernel] = None, k: Optional[Kernel] = None) -> Dilation:
    """Construct a named dilation of ``of``.

    ``bloom``: (p⊗id_A)∘copy_A, environment A.
    ``ioc``: ((copy_X∘p)⊗id_A)∘copy_A, environment X⊗A.
    ``output_copy``: copy_X∘p, environment X.
    ``from_decomposition``: π(x,e|a) = k(x|e) m(e|a) for m: A -> E and
    k: E -> X (or k: E⊗A -> X, then π(x,e|a) = k(x|e,a) m(e|a)).
    """
    p = of
    sr = p.semiring
    A, X = p.dom, p.cod
    if kind == "bloom":
        total = compose(tensor(p, identity(sr, A)), copy(sr, A))
    elif kind == "ioc":
        total = compose(tensor(compose(copy(sr, X), p), identity(sr, A)), copy(sr, A))
    elif kind == "output_copy":
        total = compose(copy(sr, X), p)
    elif kind == "from_decomposition":
        if m is None or k is None:
            raise UsageError("from_decomposition needs m and k")
        total = _from_decomposition(p, m, k)
    else:
        raise UsageError(f"unknown dilation kind {kind!r}")
    return Dilation(p, total, kind)


def _from_decomposition(p: Kernel, m: Kernel, k: Kernel) -> Kernel:
    sr = p.semiring
    A, E = p.dom, m.cod
    if m.dom != A:
        raise UsageError(f"m must start at {A}")
    if k.cod != p.cod:
        raise UsageError(f"k must land in {p.cod}")
    if k.dom == E:
        recombined = compose(k, m)
        total = compose(tensor(k, identity(sr, E)), compose(copy(sr, E), m))
    elif k.dom == E @ A:
        joint = compose(tensor(m, identity(sr, A)), copy(sr, A))
        recombined = compose(k, joint)
        total = compose_all(
            tensor(k, identity(sr, E)),
            tensor(identity(sr, E), swap(sr, E, A)),
            tensor(copy(sr, E), identity(sr, A)),
            joint,
        )
    else:
        raise UsageError(f"k must start at {E} or {E @ A}")
    if recombined != p:
        raise UsageError("k∘m does not recover the base morphism")
    return total


# -- equational checks ------------------------------------------------------

def check_dmi_instance(d: Dilation) -> Verdict:
    """π(x,e|a) = p(x|a) π_E(e|a) for a deterministic base p.

    The canonical witness is a point the base rules out (p(x|a) = 0) that
    still carries joint mass."""
    base_det = is_deterministic(d.base)
    if not base_det.ok:
        raise UsageError("DMI instances need a deterministic base")
    sr = d.semiring
    mul, zero = sr.mul, sr.zero
    pi, p, env = d.total, d.base, d.env_marginal
    al, xl, el = p.dom.labels, p.cod.labels, env.cod.labels
    ne = len(el)

    def items():
        for i in range(len(al)):
            for j in range(len(xl)):
                for k in range(ne):
                    yield ({"a": al[i], "x": xl[j], "e": el[k]},
                           pi.cols[i][j * ne + k], mul(p.cols[i][j], env.cols[i][k]))

    def prefer(v):
        i, j = al.index(v.point["a"]), xl.index(v.point["x"])
        return p.cols[i][j] == zero and v.lhs != zero

    return check_equations(sr, items(), ["π(x,e|a) = p(x|a) π_E(e|a)"], prefer=prefer)


def is_deterministic_in(q: Kernel, x_rank: int = 1) -> Verdict:
    """[x1=x2] q(x2,e|a) = q_X(x1|a) q(x2,e|a) for all a, x1, x2, e."""
    if not 0 < x_rank <= q.cod.rank:
        raise UsageError(f"cannot split {q.cod} after {x_rank} factors")
    sr = q.semiring
    mul, one, zero = sr.mul, sr.one, sr.zero
    qx = marginalize(q, range(x_rank))
    X = q.cod.sub(range(x_rank))
    E = q.cod.sub(range(x_rank, q.cod.rank))
    al, xl, el = q.dom.labels, X.labels, E.labels
    ne = len(el)
    fmt = sr.format

    def items():
        for i in range(len(al)):
            for j1 in range(len(xl)):
                for j2 in range(len(xl)):
                    for k in range(ne):
                        v = q.cols[i][j2 * ne + k]
                        yield ({"a": al[i], "x1": xl[j1], "x2": xl[j2], "e": el[k]},
                               v if j1 == j2 else zero, mul(qx.cols[i][j1], v))

    def explain(v):
        i = al.index(v.point["a"])
        j1, j2 = xl.index(v.point["x1"]), xl.index(v.point["x2"])
        val = q.cols[i][j2 * ne + el.index(v.point["e"])]
        ind = one if j1 == j2 else zero
        return f"{fmt(ind)}·{fmt(val)} ≠ {fmt(qx.cols[i][j1])}·{fmt(val)}"

    return check_equations(sr, items(), ["[x1=x2] q(x2,e|a) = q_X(x1|a) q(x2,e|a)"], explain=explain)


def dilation_equation(f: Kernel, g: Kernel, total: Kernel, x_rank: Optional[int] = None) -> Verdict:
    """f(y|x) π(x,e|a) = g(y|x) π(x,e|a) for all a, x, y, e.

    This keeps X visible; quantified over all dilations it is equivalent to
    comparing (f⊗id)∘π with (g⊗id)∘π, since copying X into the environment
    is again a dilation."""
    if f.dom != g.dom or f.cod != g.cod:
        raise UsageError("f and g must have the same type")
    x_rank = f.dom.rank if x_rank is None else x_rank
    if total.cod.factors[:x_rank] != f.dom.factors:
        raise UsageError(f"dilation codomain {total.cod} does not start with {f.dom}")
    sr = f.semiring
    mul = sr.mul
    E = total.cod.sub(range(x_rank, total.cod.rank))
    al, xl, yl, el = total.dom.labels, f.dom.labels, f.cod.labels, E.labels
    ne = len(el)

    def items():
        for i in range(len(al)):
            col = total.cols[i]
            for j in range(len(xl)):
                for y in range(len(yl)):
                    for k in range(ne):
                        v = col[j * ne + k]
                        yield ({"a": al[i], "x": xl[j], "y": yl[y], "e": el[k]},
                               mul(f.cols[j][y], v), mul(g.cols[j][y], v))

    return check_equations(sr, items(), ["f(y|x) π(x,e|a) = g(y|x) π(x,e|a)"])


# -- families of dilations ------------------------------------------------------

@dataclass
class DilationFamily:
    """Iterable of named dilations of ``base`` with environment size at most
    ``max_env``.  After iteration, ``complete`` says whether every such
    dilation was produced (finite semirings within the enumeration limit)."""

    base: Kernel
    max_env: int
    random_count: int = 0
    seed: int = 0
    limit: int = ENUMERATION_LIMIT
    complete: bool = field(default=False, init=False)
    produced: int = field(default=0, init=False)

    def __post_init__(self):
        if self.max_env < 1:
            raise UsageError("max_env must be at least 1")

    def __iter__(self) -> Iterator[Dilation]:
        self.produced = 0
        source = self._finite() if self.base.semiring.finite else self._infinite()
        for d in source:
            self.produced += 1
            yield d

    def _finite(self):
        p = self.base
        sr = p.semiring
        elems = sr.elements()
        self.complete = True
        for k in range(1, self.max_env + 1):
            E = env_set(k)
            splits = {}
            for v in set(c for col in p.cols for c in col):
                splits[v] = [t for t in product(elems, repeat=k) if sr.sum(t) == v]
            cells = [[splits[v] for v in col] for col in p.cols]
            count = prod(len(s) for col in cells for s in col)
            if count > self.limit:
                self.complete = False
            choices = product(*(product(*col) for col in cells))
            for n, choice in enumerate(islice(choices, self.limit)):
                cols = [[v for part in col for v in part] for col in choice]
                yield Dilation(p, Kernel(sr, p.dom, p.cod @ E, cols, check=False), f"enum[{k}]#{n}")

    def _infinite(self):
        p = self.base
        sr = p.semiring
        seen = set()
        for d in self._structured():
            if len(d.env) <= self.max_env and d.total not in seen:
                seen.add(d.total)
                yield d
        rng = random.Random(self.seed)
        for n in range(self.random_count):
            k = rng.randint(1, self.max_env)
            cols = []
            for col in p.cols:
                out = []
                for v in col:
                    parts = sr.split(v, k, rng)
                    if parts is None:
                        return
                    out.extend(parts)
                cols.append(out)
            yield Dilation(p, Kernel(sr, p.dom, p.cod @ env_set(k), cols, check=False), f"random#{n}")

    def _structured(self):
        p = self.base
        sr = p.semiring
        X = p.cod
        base_members = [Dilation(p, _trivial(p), "trivial")]
        for kind in ("output_copy", "bloom", "ioc"):
            base_members.append(make_dilation(kind, p))
        if sr.has_negation:
            base_members.extend(_signed_perturbations(p))
        yield from base_members
        for d in base_members:
            if len(X) * len(d.env) <= self.max_env:
                padded = compose(tensor(copy(sr, X), identity(sr, d.env)), d.total)
                yield Dilation(p, padded, f"copy-padded({d.name})")


def _trivial(p: Kernel) -> Kernel:
    """p with a one-point environment."""
    sr = p.semiring
    return Kernel(sr, p.dom, p.cod @ env_set(1), p.cols, check=False)


def _signed_perturbations(p: Kernel) -> list[Dilation]:
    """Split every column evenly over two environment points, then move
    +1/2 and -1/2 of extra mass onto one cell: the marginal is unchanged but
    the environment sees mass the base does not."""
    sr = p.semiring
    half = sr.div(sr.one, sr.add(sr.one, sr.one))
    E = env_set(2)
    cells = [(i, j) for i in range(len(p.dom)) for j in range(len(p.cod))]
    out = []
    for target in cells + [None]:
        cols = []
        for i, col in enumerate(p.cols):
            new = []
            for j, v in enumerate(col):
                h = sr.mul(v, half)
                if target is None or target == (i, j):
                    new.extend([sr.add(h, half), sr.add(h, sr.negate(half))])
                else:
                    new.extend([h, h])
            cols.append(new)
        label = "all" if target is None else f"{p.dom.labels[target[0]]},{p.cod.labels[target[1]]}"
        out.append(Dilation(p, Kernel(sr, p.dom, p.cod @ E, cols, check=False), f"signed[{label}]"))
    return out


# -- dilational equality ----------------------------------------------------------

def dilational_equal(f: Kernel, g: Kernel, p: Kernel, max_env: int = 3,
                     random_count: int = 50, seed: int = 0) -> Verdict:
    """Decide f ≈_p g as far as possible.

    1. If f and g differ p-almost surely, copy∘p is a witness.
    2. If the semiring satisfies the causality criterion, a.s. equality
       upgrades to dilational equality.
    3. Otherwise search dilations of p for a distinguishing one.
    """
    if p.cod != f.dom:
        raise UsageError(f"p lands in {p.cod}, not {f.dom}")
    sr = f.semiring
    ase = as_equal(f, g, p)
    if ase.failed:
        total = compose(copy(sr, p.cod), p)
        eq = dilation_equation(f, g, total)
        if not eq.failed:
            raise InternalInconsistency("a.s. inequality not visible through copy∘p")
        return Verdict.fails({"dilation": "copy∘p", "total": total.to_json(), "point": eq.witness},
                             ["not even p-almost surely equal"])
    causal = check_causality_criterion(sr)
    if causal.ok:
        return Verdict.holds("theory:pes-causality",
                             [f"a.s. equal; {sr.name} satisfies the causality criterion ({causal.certificate})"])
    family = DilationFamily(p, max_env, random_count, seed)
    for d in family:
        eq = dilation_equation(f, g, d.total)
        if eq.failed:
            return Verdict.fails({"dilation": d.name, "total": d.total.to_json(), "point": eq.witness},
                                 ["a.s. equal but separated by a dilation"])
    return Verdict.unknown(max_env, [f"no separating dilation among {family.produced} with |E| <= {max_env}"])


# -- mediators --------------------------------------------------------------

@dataclass
class MediatorSearch:
    """Solutions f: E -> E' of (id_X ⊗ f)∘π = π'.

    ``status`` is HOLDS if one was found, FAILS if none exists (proved by
    infeasibility or exhaustive enumeration), UNKNOWN otherwise.  For
    rational kinds ``null_basis`` spans the differences between solutions.
    """

    status: Status
    mediators: list = field(default_factory=list)
    null_basis: list = field(default_factory=list)
    note: str = ""

    @property
    def mediator(self) -> Optional[Kernel]:
        return self.mediators[0] if self.mediators else None


def _morphism_system(source: Kernel, target: Kernel, x_rank: int):
    X = source.cod.sub(range(x_rank))
    E = source.cod.sub(range(x_rank, source.cod.rank))
    E2 = target.cod.sub(range(x_rank, target.cod.rank))
    ne, ne2 = len(E), len(E2)
    rows, rhs = [], []
    for i in range(len(source.dom)):
        for j in range(len(X)):
            for k2 in range(ne2):
                row = [Fraction(0)] * (ne * ne2)
                for k in range(ne):
                    row[k * ne2 + k2] = source.cols[i][j * ne + k]
                rows.append(row)
                rhs.append(target.cols[i][j * ne2 + k2])
    for k in range(ne):
        row = [Fraction(0)] * (ne * ne2)
        for k2 in range(ne2):
            row[k * ne2 + k2] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    return E, E2, rows, rhs


def _columns_summing_to_one(sr: Semiring, n: int) -> list[tuple]:
    return [t for t in product(sr.elements(), repeat=n) if sr.sum(t) == sr.one]


def search_dilation_morphism(source: Dilation, target: Dilation, limit: int = ENUMERATION_LIMIT) -> MediatorSearch:
    if source.base != target.base:
        raise UsageError("dilations of different morphisms")
    sr = source.semiring
    xr = source.x_rank
    E, E2 = source.env, target.env
    ne, ne2 = len(E), len(E2)

    def kernel_of(flat):
        return Kernel(sr, E, E2, [flat[k * ne2:(k + 1) * ne2] for k in range(ne)], check=False)

    if sr.kind in RATIONAL_KINDS:
        _, _, rows, rhs = _morphism_system(source.total, target.total, xr)
        solved = solve_affine(rows, rhs)
        if solved is None:
            return MediatorSearch(Status.FAILS, note="linear system inconsistent")
        x0, basis = solved
        if sr.kind == "rational" or (not basis and all(v >= 0 for v in x0)):
            return MediatorSearch(Status.HOLDS, [kernel_of(x0)], basis)
        if not basis:
            return MediatorSearch(Status.FAILS, note="unique solution has negative entries")
        found = lp_solve(rows, rhs)
        if found is None:
            return MediatorSearch(Status.FAILS, note="no nonnegative solution")
        return MediatorSearch(Status.HOLDS, [kernel_of(found[0])], basis)

    if sr.finite:
        options = _columns_summing_to_one(sr, ne2)
        total_count = len(options) ** ne
        found = []
        for choice in islice(product(options, repeat=ne), limit):
            f = Kernel(sr, E, E2, choice, check=False)
            if push_environment(source, f) == target.total:
                found.append(f)
        complete = total_count <= limit
        if found:
            return MediatorSearch(Status.HOLDS, found, note="" if complete else "enumeration truncated")
        if complete:
            return MediatorSearch(Status.FAILS, note=f"none among {total_count} kernels")
        return MediatorSearch(Status.UNKNOWN, note=f"first {limit} of {total_count} kernels tried")

    # other infinite semirings: deterministic candidates only
    found = []
    for images in product(range(ne2), repeat=ne):
        cols = [[sr.one if k2 == images[k] else sr.zero for k2 in range(ne2)] for k in range(ne)]
        f = Kernel(sr, E, E2, cols, check=False)
        if push_environment(source, f) == target.total:
            found.append(f)
    if found:
        return MediatorSearch(Status.HOLDS, found, note="deterministic mediators only")
    return MediatorSearch(Status.UNKNOWN, note="no deterministic mediator; general search unsupported")


def find_dilation_morphism(source: Dilation, target: Dilation) -> Optional[DilationMorphism]:
    found = search_dilation_morphism(source, target)
    if found.mediator is None:
        return None
    return DilationMorphism(source, target, found.mediator)


def _support_coordinates(d: Dilation, ne2: int) -> set[int]:
    ne = len(d.env)
    zero = d.semiring.zero
    live = {k for col in d.total.cols for idx, v in enumerate(col) if v != zero for k in [idx % ne]}
    return {k * ne2 + k2 for k in live for k2 in range(ne2)}


def _mediator_uniqueness(candidate: Dilation, target: Dilation, found: MediatorSearch,
                         max_env: int) -> Verdict:
    """Are all mediators candidate-dilationally equal?"""
    sr = candidate.semiring
    X = candidate.base.cod
    idX = identity(sr, X)
    ne2 = len(target.env)

    def compare(f1, f2):
        return dilational_equal(tensor(idX, f1), tensor(idX, f2), candidate.total, max_env)

    if sr.kind in RATIONAL_KINDS:
        if not found.null_basis:
            return Verdict.holds("exhaustive", ["mediator unique"])
        support = _support_coordinates(candidate, ne2)
        moving = [v for v in found.null_basis if any(v[c] != 0 for c in support)]
        base = found.mediator
        flat = [v for col in base.cols for v in col]
        E, E2 = candidate.env, target.env

        def kernel_of(vec):
            return Kernel(sr, E, E2, [vec[k * ne2:(k + 1) * ne2] for k in range(len(E))], check=False)

        if sr.kind == "nonneg-rational":
            _, _, rows, rhs = _morphism_system(candidate.total, target.total, candidate.x_rank)
            for c in sorted(support):
                lo = lp_solve(rows, rhs, [int(i == c) for i in range(len(flat))])
                hi = lp_solve(rows, rhs, [int(i == c) for i in range(len(flat))], maximize=True)
                if lo[1] != hi[1]:
                    return compare(kernel_of(lo[0]), kernel_of(hi[0]))
            return Verdict.holds("theory:pes-causality", ["mediators agree wherever the candidate has mass"])
        if not moving:
            others = [kernel_of([a + b for a, b in zip(flat, v)]) for v in found.null_basis]
        else:
            others = [kernel_of([a + b for a, b in zip(flat, v)]) for v in moving]
        verdicts = [compare(base, o) for o in others]
        bad = next((v for v in verdicts if v.failed), None)
        if bad is not None:
            return bad
        if all(v.ok for v in verdicts):
            return Verdict.holds("exhaustive", ["every null direction is dilationally trivial"])
        return Verdict.unknown(max_env, ["mediator unique only up to undecided dilational equality"])

    if sr.finite:
        first = found.mediators[0]
        for other in found.mediators[1:]:
            v = compare(first, other)
            if not v.ok:
                return v
        return Verdict.holds("exhaustive", [f"{len(found.mediators)} mediators, all equivalent"])
    return Verdict.unknown(max_env, ["uniqueness undecidable without a complete mediator search"])


def verify_initial(candidate: Dilation, max_env: int = 3, random_count: int = 50, seed: int = 0,
                   details: Optional[list] = None) -> Verdict:
    """Check that every dilation of the base (within the family) factors
    through ``candidate`` by a mediator unique up to dilational equality."""
    family = DilationFamily(candidate.base, max_env, random_count, seed)
    unknown = []
    for d in family:
        found = search_dilation_morphism(candidate, d)
        if details is not None:
            details.append((d, found))
        if found.status is Status.FAILS:
            return Verdict.fails({"dilation": d.name, "total": d.total.to_json(), "reason": found.note},
                                 [f"{d.name} does not factor through {candidate.name or 'the candidate'}"])
        if found.status is Status.UNKNOWN:
            unknown.append(d.name)
            continue
        unique = _mediator_uniqueness(candidate, d, found, max_env)
        if unique.failed:
            return Verdict.fails({"dilation": d.name, "total": d.total.to_json(),
                                  "reason": "mediators are not dilationally equal",
                                  "separation": unique.witness},
                                 [f"mediator for {d.name} is not unique"])
        if not unique.ok:
            unknown.append(d.name)
    if unknown:
        return Verdict.unknown(max_env, [f"undecided for {len(unknown)} dilations: {', '.join(unknown[:5])}"])
    if family.complete:
        return Verdict.holds("exhaustive", [f"all {family.produced} dilations with |E| <= {max_env}"])
    return Verdict.holds(f"bound:{family.produced}", [f"{family.produced} dilations with |E| <= {max_env} checked"])


# -- non-creativity ------------------------------------------------------------------

def _factored_through_identity(p: Kernel, d: Dilation, limit: int) -> MediatorSearch:
    """Find ι: A -> A⊗E, a dilation of id_A, with (p⊗id_E)∘ι = π."""
    sr = p.semiring
    A, E = p.dom, d.env
    na, ne = len(A), len(E)
    push = tensor(p, identity(sr, E))
    # first try the environment marginal attached to a copy of the input
    iota0 = compose(tensor(identity(sr, A), d.env_marginal), copy(sr, A))
    if compose(push, iota0) == d.total:
        return MediatorSearch(Status.HOLDS, [iota0], note="input copy with environment marginal")

    def kernel_of(flat):
        return Kernel(sr, A, A @ E, [flat[i * na * ne:(i + 1) * na * ne] for i in range(na)], check=False)

    if sr.kind in RATIONAL_KINDS:
        nvars = na * na * ne
        rows, rhs = [], []
        for i in range(na):
            base = i * na * ne
            for i2 in range(na):
                row = [0] * nvars
                for k in range(ne):
                    row[base + i2 * ne + k] = 1
                rows.append(row)
                rhs.append(1 if i == i2 else 0)
            for j in range(len(p.cod)):
                for k in range(ne):
                    row = [Fraction(0)] * nvars
                    for i2 in range(na):
                        row[base + i2 * ne + k] = p.cols[i2][j]
                    rows.append(row)
                    rhs.append(d.total.cols[i][j * ne + k])
        if sr.kind == "rational":
            solved = solve_affine(rows, rhs)
            if solved is None:
                return MediatorSearch(Status.FAILS, note="linear system inconsistent")
            return MediatorSearch(Status.HOLDS, [kernel_of(solved[0])], solved[1])
        found = lp_solve(rows, rhs)
        if found is None:
            return MediatorSearch(Status.FAILS, note="no nonnegative solution")
        return MediatorSearch(Status.HOLDS, [kernel_of(found[0])])

    if sr.finite:
        if len(sr.elements()) ** (na * ne) > limit:
            return MediatorSearch(Status.UNKNOWN, note="column enumeration too large")
        # columns of ι are independent: column a must be a dilation of δ_a
        per_col = []
        for i in range(na):
            opts = []
            for cand in product(sr.elements(), repeat=na * ne):
                if all(sr.sum(cand[i2 * ne:(i2 + 1) * ne]) == (sr.one if i2 == i else sr.zero) for i2 in range(na)):
                    col = Kernel(sr, FinSet.unit(), A @ E, [cand], check=False)
                    pushed = compose(push, col)
                    if list(pushed.cols[0]) == list(d.total.cols[i]):
                        opts.append(cand)
            if not opts:
                return MediatorSearch(Status.FAILS, note=f"no column works for input {A.labels[i]}")
            per_col.append(opts[0])
        return MediatorSearch(Status.HOLDS, [Kernel(sr, A, A @ E, per_col, check=False)])
    return MediatorSearch(Status.UNKNOWN, note="general search unsupported for this semiring")


def is_noncreative(p: Kernel, max_env: int = 3, random_count: int = 50, seed: int = 0) -> Verdict:
    """Every dilation π of p is (p⊗id_E)∘ι for some dilation ι of id_A."""
    sr = p.semiring
    theory = None
    if p.cod.rank == 0:
        theory = "theory:broadcasting"
    elif is_deterministic(p).ok and check_zerosumfree(sr).ok:
        theory = "theory:dmi"
    family = DilationFamily(p, max_env, random_count, seed)
    unknown = []
    for d in family:
        found = _factored_through_identity(p, d, ENUMERATION_LIMIT)
        if found.status is Status.FAILS:
            if theory is not None:
                raise InternalInconsistency(f"{d.name} defeats a proven non-creativity ({theory})")
            return Verdict.fails({"dilation": d.name, "total": d.total.to_json(), "reason": found.note},
                                 [f"{d.name} is not of the form (p⊗id)∘ι"])
        if found.status is Status.UNKNOWN:
            unknown.append(d.name)
    if theory is not None:
        return Verdict.holds(theory, [f"{family.produced} dilations factored as a cross-check"])
    if unknown:
        return Verdict.unknown(max_env, [f"undecided for {len(unknown)} dilations"])
    if family.complete:
        return Verdict.holds("exhaustive", [f"all {family.produced} dilations with |E| <= {max_env}"])
    return Verdict.holds(f"bound:{family.produced}", [f"{family.produced} dilations with |E| <= {max_env}"])


# -- broadcasting ------------------------------------------------------------------

def is_broadcasting(b: Kernel) -> Verdict:
    sr = b.semiring
    X = b.dom
    if b.cod != X @ X:
        raise UsageError(f"broadcasting maps {X} to {X @ X}, not {b.cod}")
    idX = identity(sr, X)
    left = marginalize(b, range(X.rank))
    right = marginalize(b, range(X.rank, 2 * X.rank))
    xl = X.labels

    def items():
        for name, m in (("first", left), ("second", right)):
            for i in range(len(xl)):
                for j in range(len(xl)):
                    yield {"marginal": name, "x0": xl[i], "x": xl[j]}, m.cols[i][j], idX.cols[i][j]

    return check_equations(sr, items(), ["both marginals are the identity"])


@dataclass
class BroadcastResult:
    solutions: list
    dimension: Optional[int]
    verdict: Verdict  # HOLDS iff copy is the only broadcasting morphism
    complete: bool


def _broadcast_system(n: int):
    """Unknown b(x1,x2|x0) at index x0*n*n + x1*n + x2."""
    nv = n ** 3
    rows, rhs = [], []
    for x0 in range(n):
        for x1 in range(n):
            row = [0] * nv
            for x2 in range(n):
                row[x0 * n * n + x1 * n + x2] = 1
            rows.append(row)
            rhs.append(int(x1 == x0))
        for x2 in range(n):
            row = [0] * nv
            for x1 in range(n):
                row[x0 * n * n + x1 * n + x2] = 1
            rows.append(row)
            rhs.append(int(x2 == x0))
    return rows, rhs


def find_broadcasting(sr: Semiring, X: FinSet, limit: int = ENUMERATION_LIMIT) -> BroadcastResult:
    n = len(X)
    XX = X @ X
    cp = copy(sr, X)

    def kernel_of(flat):
        return Kernel(sr, X, XX, [flat[i * n * n:(i + 1) * n * n] for i in range(n)], check=False)

    if sr.finite:
        one, zero = sr.one, sr.zero
        per_col = []
        for x0 in range(n):
            opts = []
            for cand in product(sr.elements(), repeat=n * n):
                rows_ok = all(sr.sum(cand[x1 * n:(x1 + 1) * n]) == (one if x1 == x0 else zero) for x1 in range(n))
                if rows_ok and all(sr.sum(cand[x2::n]) == (one if x2 == x0 else zero) for x2 in range(n)):
                    opts.append(cand)
            per_col.append(opts)
        count = prod(len(o) for o in per_col)
        sols = [Kernel(sr, X, XX, cols, check=False) for cols in islice(product(*per_col), limit)]
        others = [b for b in sols if b != cp]
        verdict = (Verdict.holds("exhaustive", ["copy is the only broadcasting morphism"]) if not others
                   else Verdict.fails({"broadcasting": others[0].to_json()}, [f"{count} broadcasting morphisms"]))
        return BroadcastResult(sols, None, verdict, count <= limit)

    if sr.kind in RATIONAL_KINDS:
        rows, rhs = _broadcast_system(n)
        x0, basis = solve_affine(rows, rhs)
        dim = len(basis)
        copy_flat = [v for col in cp.cols for v in col]
        if sr.kind == "rational":
            sols = [cp] + [kernel_of([a + b for a, b in zip(copy_flat, v)]) for v in basis]
            verdict = (Verdict.holds("exhaustive") if dim == 0 else
                       Verdict.fails({"broadcasting": sols[1].to_json()}, [f"affine solution space of dimension {dim}"]))
            return BroadcastResult(sols, dim, verdict, False)
        # nonnegative: the polytope is a point iff every coordinate has min = max
        for c in range(n ** 3):
            obj = [int(i == c) for i in range(n ** 3)]
            lo, hi = lp_solve(rows, rhs, obj), lp_solve(rows, rhs, obj, maximize=True)
            if lo[1] != hi[1]:
                other = kernel_of(hi[0] if kernel_of(hi[0]) != cp else lo[0])
                return BroadcastResult([cp, other], dim, Verdict.fails({"broadcasting": other.to_json()}), False)
        return BroadcastResult([cp], dim, Verdict.holds("exhaustive", [
            f"affine dimension {dim}, but nonnegativity leaves only copy"]), True)

    if check_zerosumfree(sr).ok:
        return BroadcastResult([cp], None, Verdict.holds("theory:zerosumfree", [
            "off-diagonal rows sum to zero, so every entry there vanishes"]), True)
    return BroadcastResult([cp], None, Verdict.unknown(0, ["no search available"]), False)


def signed_broadcasting(sr: Semiring, X: FinSet) -> Kernel:
    """b(x1,x2|x0) = (-1)^(x1+x2) + copy(x1,x2|x0) on a two-element set."""
    if len(X) != 2 or not sr.has_negation:
        raise UsageError("defined for two-element sets over a semiring with negatives")
    cp = copy(sr, X)
    cols = []
    for i in range(2):
        col = []
        for j, (x1, x2) in enumerate(product(range(2), repeat=2)):
            sign = sr.one if (x1 + x2) % 2 == 0 else sr.negate(sr.one)
            col.append(sr.add(sign, cp.cols[i][j]))
        cols.append(col)
    return Kernel(sr, X, X @ X, cols)
