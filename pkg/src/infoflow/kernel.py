"""Semiring-valued kernels between finite sets.

A kernel f: A -> X stores ``cols[i][j] = f(x_j | a_i)``; each column sums to
the semiring's one.  Objects are formal tensors of labelled factors, so
marginalisation and swapping act on factor boundaries instead of raw indices.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from itertools import product
from pathlib import Path
from typing import Callable, Iterable, Optional, Sequence

from .errors import InternalInconsistency, NoConditional, UnsupportedOperation, UsageError
from .semiring import Semiring, get_semiring
from .semiring.properties import check_entire
from .verdict import Verdict, check_equations

UNIT_LABEL = "•"

Element = tuple


@dataclass(frozen=True)
class FinSet:
    """A tensor of finite label sets; the empty tensor is the unit object."""

    factors: tuple[tuple[str, ...], ...]

    def __post_init__(self):
        for f in self.factors:
            if not f:
                raise UsageError("empty factor; finite sets here are nonempty")
            if len(set(f)) != len(f):
                raise UsageError(f"duplicate labels in factor {list(f)}")

    @classmethod
    def of(cls, *labels: str) -> "FinSet":
        return cls((tuple(str(x) for x in labels),))

    @classmethod
    def range(cls, n: int, prefix: str = "") -> "FinSet":
        return cls.of(*(f"{prefix}{i}" for i in range(n)))

    @classmethod
    def unit(cls) -> "FinSet":
        return cls(())

    def __matmul__(self, other: "FinSet") -> "FinSet":
        return FinSet(self.factors + other.factors)

    def factor(self, i: int) -> "FinSet":
        return FinSet((self.factors[i],))

    def sub(self, indices: Sequence[int]) -> "FinSet":
        return FinSet(tuple(self.factors[i] for i in indices))

    @property
    def rank(self) -> int:
        return len(self.factors)

    @cached_property
    def elements(self) -> list[Element]:
        return list(product(*self.factors))

    @cached_property
    def index(self) -> dict:
        return {e: i for i, e in enumerate(self.elements)}

    @cached_property
    def labels(self) -> list[str]:
        return [self.label(e) for e in self.elements]

    @cached_property
    def label_index(self) -> dict:
        return {lab: i for i, lab in enumerate(self.labels)}

    def __len__(self):
        return len(self.elements)

    def label(self, e: Element) -> str:
        if not e:
            return UNIT_LABEL
        if len(e) == 1:
            return e[0]
        return "(" + ",".join(e) + ")"

    def locate(self, key) -> int:
        """Index of an element given as a tuple or a label string."""
        if isinstance(key, tuple):
            if key in self.index:
                return self.index[key]
        elif key in self.label_index:
            return self.label_index[key]
        elif self.rank == 1 and (str(key),) in self.index:
            return self.index[(str(key),)]
        raise UsageError(f"{key!r} is not an element of {self}")

    def to_json(self):
        if self.rank == 1:
            return list(self.factors[0])
        return [list(f) for f in self.factors]

    @classmethod
    def from_json(cls, doc) -> "FinSet":
        if not isinstance(doc, list):
            raise UsageError(f"object must be a list of labels, got {doc!r}")
        if not doc:
            return cls.unit()
        if all(isinstance(f, list) for f in doc):
            return cls(tuple(tuple(str(x) for x in f) for f in doc))
        if any(isinstance(f, list) for f in doc):
            raise UsageError("mixed factor list; use a list of labels or a list of lists")
        return cls.of(*doc)

    def __str__(self):
        if not self.factors:
            return "I"
        return "⊗".join("{" + ",".join(f) + "}" for f in self.factors)


class Kernel:
    """A normalised kernel dom -> cod over a semiring."""

    __slots__ = ("semiring", "dom", "cod", "cols")

    def __init__(self, semiring: Semiring, dom: FinSet, cod: FinSet, cols, check: bool = True):
        self.semiring = semiring
        self.dom = dom
        self.cod = cod
        self.cols = tuple(tuple(c) for c in cols)
        if len(self.cols) != len(dom) or any(len(c) != len(cod) for c in self.cols):
            raise UsageError(f"entry table does not have shape {len(cod)}x{len(dom)}")
        if check:
            bad = self.unnormalized_column()
            if bad is not None:
                total = semiring.format(semiring.sum(self.cols[bad]))
                raise UsageError(f"column {dom.labels[bad]} sums to {total}, not one")

    def unnormalized_column(self) -> Optional[int]:
        one, total = self.semiring.one, self.semiring.sum
        return next((i for i, c in enumerate(self.cols) if total(c) != one), None)

    # -- constructors ---------------------------------------------------
    @classmethod
    def from_function(cls, sr: Semiring, dom: FinSet, cod: FinSet,
                      fn: Callable[[Element, Element], object]) -> "Kernel":
        """Entries ``fn(x, a)`` on element tuples."""
        return cls(sr, dom, cod, [[fn(x, a) for x in cod.elements] for a in dom.elements])

    @classmethod
    def from_matrix(cls, sr: Semiring, dom: FinSet, cod: FinSet, rows) -> "Kernel":
        """Rows indexed by codomain, columns by domain; literals are parsed."""
        rows = [[sr.parse(v) for v in row] for row in rows]
        if len(rows) != len(cod) or any(len(r) != len(dom) for r in rows):
            raise UsageError(f"matrix must be {len(cod)}x{len(dom)}")
        return cls(sr, dom, cod, [[rows[j][i] for j in range(len(cod))] for i in range(len(dom))])

    @classmethod
    def state(cls, sr: Semiring, cod: FinSet, values) -> "Kernel":
        return cls(sr, FinSet.unit(), cod, [[sr.parse(v) for v in values]])

    # -- access -----------------------------------------------------------
    def __call__(self, x, a=()) -> object:
        return self.cols[self.dom.locate(a)][self.cod.locate(x)]

    def column(self, a) -> tuple:
        return self.cols[self.dom.locate(a)]

    def __eq__(self, other):
        return (isinstance(other, Kernel) and self.semiring is other.semiring
                and self.dom == other.dom and self.cod == other.cod and self.cols == other.cols)

    def __hash__(self):
        return hash((self.dom, self.cod, self.cols))

    def __repr__(self):
        return f"Kernel({self.dom} -> {self.cod} over {self.semiring.name})"

    def table(self) -> str:
        fmt = self.semiring.format
        head = [""] + self.dom.labels
        rows = [[xl] + [fmt(self.cols[i][j]) for i in range(len(self.dom))]
                for j, xl in enumerate(self.cod.labels)]
        widths = [max(len(r[k]) for r in [head] + rows) for k in range(len(head))]
        return "\n".join("  ".join(c.rjust(w) for c, w in zip(r, widths)) for r in [head] + rows)

    def to_json(self) -> dict:
        fmt = self.semiring.format
        entries = {}
        for i, al in enumerate(self.dom.labels):
            entries[al] = {xl: fmt(v) for xl, v in zip(self.cod.labels, self.cols[i])}
        return {"semiring": self.semiring.name, "dom": self.dom.to_json(),
                "cod": self.cod.to_json(), "entries": entries}

    def __matmul__(self, other: "Kernel") -> "Kernel":
        return tensor(self, other)


def _same_semiring(*kernels: Kernel) -> Semiring:
    sr = kernels[0].semiring
    for k in kernels[1:]:
        if k.semiring is not sr:
            raise UsageError(f"kernels over {sr.name} and {k.semiring.name} cannot be combined")
    return sr


def kernel_from_json(doc: dict, semiring: Optional[Semiring] = None) -> Kernel:
    """Load a kernel document; omitted entries are zero."""
    if not isinstance(doc, dict):
        raise UsageError("kernel document must be a JSON object")
    sr = semiring
    if sr is None:
        if "semiring" not in doc:
            raise UsageError("kernel document names no semiring")
        sr = get_semiring(doc["semiring"])
    for key in ("dom", "cod", "entries"):
        if key not in doc:
            raise UsageError(f"kernel document lacks {key!r}")
    dom, cod = FinSet.from_json(doc["dom"]), FinSet.from_json(doc["cod"])
    entries = doc["entries"]
    if not isinstance(entries, dict):
        raise UsageError("entries must map domain labels to columns")
    cols = [[sr.zero] * len(cod) for _ in dom.elements]
    for al, col in entries.items():
        i = dom.locate(al)
        if not isinstance(col, dict):
            raise UsageError(f"column {al!r} must map codomain labels to values")
        for xl, v in col.items():
            cols[i][cod.locate(xl)] = sr.parse(v)
    return Kernel(sr, dom, cod, cols)


def load_kernel(path, semiring: Optional[Semiring] = None) -> Kernel:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"{path} is not valid JSON: {exc}") from None
    return kernel_from_json(doc, semiring)


# -- categorical structure ------------------------------------------------

def compose(g: Kernel, f: Kernel) -> Kernel:
    """g after f: (g∘f)(z|a) = Σ_x g(z|x) f(x|a)."""
    sr = _same_semiring(g, f)
    if f.cod != g.dom:
        raise UsageError(f"cannot compose: {f.cod} is not {g.dom}")
    add, mul, zero = sr.add, sr.mul, sr.zero
    cols = []
    for fcol in f.cols:
        out = [zero] * len(g.cod)
        for x, fx in enumerate(fcol):
            if fx == zero:
                continue
            for z, gz in enumerate(g.cols[x]):
                if gz != zero:
                    out[z] = add(out[z], mul(gz, fx))
        cols.append(out)
    return _checked(Kernel(sr, f.dom, g.cod, cols, check=False), "compose")


def compose_all(*kernels: Kernel) -> Kernel:
    """compose_all(h, g, f) = h∘g∘f."""
    result = kernels[-1]
    for k in reversed(kernels[:-1]):
        result = compose(k, result)
    return result


def tensor(f: Kernel, g: Kernel) -> Kernel:
    sr = _same_semiring(f, g)
    mul = sr.mul
    cols = []
    for fc in f.cols:
        for gc in g.cols:
            cols.append([mul(u, v) for u in fc for v in gc])
    return _checked(Kernel(sr, f.dom @ g.dom, f.cod @ g.cod, cols, check=False), "tensor")


def tensor_all(*kernels: Kernel) -> Kernel:
    result = kernels[0]
    for k in kernels[1:]:
        result = tensor(result, k)
    return result


def _checked(k: Kernel, op: str) -> Kernel:
    bad = k.unnormalized_column()
    if bad is not None:
        raise InternalInconsistency(f"{op} produced an unnormalised column {k.dom.labels[bad]}")
    return k


def deterministic(sr: Semiring, dom: FinSet, cod: FinSet, fn: Callable[[Element], Element]) -> Kernel:
    """The delta kernel of a function on element tuples."""
    one, zero = sr.one, sr.zero
    cols = []
    for a in dom.elements:
        target = cod.index.get(tuple(fn(a)))
        if target is None:
            raise UsageError(f"function sends {dom.label(a)} outside {cod}")
        col = [zero] * len(cod)
        col[target] = one
        cols.append(col)
    return Kernel(sr, dom, cod, cols, check=False)


def delta(sr: Semiring, dom: FinSet, cod: FinSet, mapping: dict) -> Kernel:
    """Delta kernel of a function given as ``{dom label: cod label}``."""
    lookup = {}
    for al, xl in mapping.items():
        lookup[dom.elements[dom.locate(al)]] = cod.elements[cod.locate(xl)]
    missing = [dom.label(a) for a in dom.elements if a not in lookup]
    if missing:
        raise UsageError(f"mapping is not total; missing {missing}")
    return deterministic(sr, dom, cod, lookup.__getitem__)


def point(sr: Semiring, cod: FinSet, x) -> Kernel:
    """The deterministic state δ_x."""
    target = cod.elements[cod.locate(x)]
    return deterministic(sr, FinSet.unit(), cod, lambda _a: target)


def identity(sr: Semiring, X: FinSet) -> Kernel:
    return deterministic(sr, X, X, lambda a: a)


def copy(sr: Semiring, X: FinSet) -> Kernel:
    return deterministic(sr, X, X @ X, lambda a: a + a)


def discard(sr: Semiring, X: FinSet) -> Kernel:
    return deterministic(sr, X, FinSet.unit(), lambda a: ())


def swap(sr: Semiring, X: FinSet, Y: FinSet) -> Kernel:
    n = X.rank
    return deterministic(sr, X @ Y, Y @ X, lambda a: a[n:] + a[:n])


def permute(sr: Semiring, X: FinSet, order: Sequence[int]) -> Kernel:
    """Reorder tensor factors: output factor k is input factor order[k]."""
    if sorted(order) != list(range(X.rank)):
        raise UsageError(f"{list(order)} is not a permutation of {X.rank} factors")
    return deterministic(sr, X, X.sub(order), lambda a: tuple(a[i] for i in order))


def uniform(sr: Semiring, X: FinSet) -> Kernel:
    n = len(X)
    weight = sr.div(sr.one, sr.parse(str(n)))
    return Kernel(sr, FinSet.unit(), X, [[weight] * n])


STRUCTURAL_KINDS = ("identity", "copy", "discard", "swap", "delta")


def structural(kind: str, sr: Semiring, *objects: FinSet, mapping: Optional[dict] = None) -> Kernel:
    if kind == "identity":
        return identity(sr, *objects)
    if kind == "copy":
        return copy(sr, *objects)
    if kind == "discard":
        return discard(sr, *objects)
    if kind == "swap":
        return swap(sr, *objects)
    if kind == "delta":
        if mapping is None or len(objects) != 2:
            raise UsageError("delta needs a domain, a codomain and a mapping")
        return delta(sr, objects[0], objects[1], mapping)
    raise UsageError(f"unknown structural morphism {kind!r}")


def marginalize(f: Kernel, keep: Iterable[int]) -> Kernel:
    """Sum out every codomain factor not listed in ``keep`` (kept in the
    order given)."""
    keep = list(keep)
    for k in keep:
        if not 0 <= k < f.cod.rank:
            raise UsageError(f"factor {k} out of range for {f.cod}")
    if len(set(keep)) != len(keep):
        raise UsageError("repeated factor index")
    sr = f.semiring
    target = f.cod.sub(keep)
    proj = [target.index[tuple(x[k] for k in keep)] for x in f.cod.elements]
    cols = []
    for col in f.cols:
        out = [sr.zero] * len(target)
        for j, v in enumerate(col):
            out[proj[j]] = sr.add(out[proj[j]], v)
        cols.append(out)
    return _checked(Kernel(sr, f.dom, target, cols, check=False), "marginalize")


# -- predicates -------------------------------------------------------------

def as_function(f: Kernel) -> Optional[dict]:
    """``{dom element: cod element}`` if every column is a delta, else None."""
    one, zero = f.semiring.one, f.semiring.zero
    out = {}
    for a, col in zip(f.dom.elements, f.cols):
        hits = [j for j, v in enumerate(col) if v != zero]
        if len(hits) != 1 or col[hits[0]] != one:
            return None
        out[a] = f.cod.elements[hits[0]]
    return out


def _copy_form(f: Kernel) -> Verdict:
    sr = f.semiring
    mul, zero = sr.mul, sr.zero
    dl, cl = f.dom.labels, f.cod.labels

    def items():
        for i, col in enumerate(f.cols):
            for j1, v1 in enumerate(col):
                for j2, v2 in enumerate(col):
                    yield ({"a": dl[i], "x1": cl[j1], "x2": cl[j2]},
                           mul(v1, v2), v1 if j1 == j2 else zero)

    return check_equations(sr, items(), ["f(x1|a) f(x2|a) = [x1=x2] f(x1|a)"])


def is_deterministic(f: Kernel) -> Verdict:
    """Check that f commutes with copying.  Over entire semirings the delta
    form is computed independently and must agree."""
    verdict = _copy_form(f)
    if check_entire(f.semiring).ok:
        delta_form = as_function(f) is not None
        if delta_form != verdict.ok:
            raise InternalInconsistency(
                f"copy-form ({verdict.status.value}) and delta-form ({delta_form}) disagree on {f!r}")
    return verdict


def as_equal(f: Kernel, g: Kernel, m: Kernel) -> Verdict:
    """m-almost-sure equality: m(x|θ) f(y|x) = m(x|θ) g(y|x) everywhere."""
    sr = _same_semiring(f, g, m)
    if f.dom != g.dom or f.cod != g.cod:
        raise UsageError("f and g must have the same type")
    if m.cod != f.dom:
        raise UsageError(f"m lands in {m.cod}, not {f.dom}")
    mul = sr.mul
    tl, xl, yl = m.dom.labels, f.dom.labels, f.cod.labels

    def items():
        for t, mcol in enumerate(m.cols):
            for x, mx in enumerate(mcol):
                for y in range(len(yl)):
                    yield ({"theta": tl[t], "x": xl[x], "y": yl[y]},
                           mul(mx, f.cols[x][y]), mul(mx, g.cols[x][y]))

    return check_equations(sr, items(), ["m(x|θ) f(y|x) = m(x|θ) g(y|x)"])


def conditional(f: Kernel, split: int = 1) -> Kernel:
    """The conditional f_|X : X⊗A -> Y of f: A -> X⊗Y, where X is the first
    ``split`` codomain factors.  Zero-mass points get δ on the first label."""
    sr = f.semiring
    if not sr.division:
        raise UnsupportedOperation(f"conditionals need division; {sr.name} has none")
    if not 0 < split < f.cod.rank:
        raise UsageError(f"split {split} must leave factors on both sides of {f.cod}")
    X, Y = f.cod.sub(range(split)), f.cod.sub(range(split, f.cod.rank))
    zero = sr.zero
    cols = []
    for x in X.elements:
        for i, a in enumerate(f.dom.elements):
            joint = [f.cols[i][f.cod.index[x + y]] for y in Y.elements]
            mass = sr.sum(joint)
            if mass == zero:
                if any(v != zero for v in joint):
                    raise NoConditional(
                        f"marginal vanishes at x={X.label(x)}, a={f.dom.label(a)} but the joint does not")
                cols.append([sr.one] + [zero] * (len(Y) - 1))
            else:
                cols.append([sr.div(v, mass) for v in joint])
    return Kernel(sr, X @ f.dom, Y, cols)


def reconstruct(cond: Kernel, f_x: Kernel) -> Kernel:
    """(id_X ⊗ cond) ∘ (copy_X ⊗ id_A) ∘ (f_X ⊗ id_A) ∘ copy_A."""
    sr = _same_semiring(cond, f_x)
    A, X = f_x.dom, f_x.cod
    return compose_all(
        tensor(identity(sr, X), cond),
        tensor(copy(sr, X), identity(sr, A)),
        tensor(f_x, identity(sr, A)),
        copy(sr, A),
    )
