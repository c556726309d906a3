"""Concrete semirings and the name registry."""

from __future__ import annotations

import json
import random
from fractions import Fraction
from functools import lru_cache
from pathlib import Path

from ..errors import UsageError
from .base import Semiring
from .ideals import IdealQuantale
from .lattice import LatticeSemiring, boolean_algebra, chain, divisor_lattice


def parse_fraction(text) -> Fraction:
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool) or isinstance(text, float):
        raise UsageError(f"expected an exact rational literal, got {text!r}")
    try:
        return Fraction(str(text).strip())
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"cannot parse rational literal {text!r}") from None


def _small_fraction(rng: random.Random, signed: bool) -> Fraction:
    num = rng.randint(-4 if signed else 0, 4)
    return Fraction(num, rng.randint(1, 4))


class RationalSemiring(Semiring):
    """The field Q.  Kernels over it are the signed stochastic matrices."""

    name = "rational"
    kind = "rational"
    zero = Fraction(0)
    one = Fraction(1)
    division = True
    certified = {
        "entire": "theory:field",
        "cancellative": "theory:field",
    }

    def add(self, a, b):
        return a + b

    def mul(self, a, b):
        return a * b

    def div(self, a, b):
        return a / b

    def negate(self, a):
        return -a

    def is_negative(self, a):
        return a < 0

    @property
    def has_negation(self):
        return True

    def structured(self):
        F = Fraction
        return [F(0), F(1), F(-1), F(1, 2), F(-1, 2), F(2), F(-2), F(1, 3)]

    def sample(self, rng):
        return _small_fraction(rng, True)

    def split(self, value, parts, rng):
        head = [_small_fraction(rng, True) for _ in range(parts - 1)]
        return head + [value - sum(head, Fraction(0))]

    def complement(self, r):
        return 1 - r

    def seed_quadruples(self):
        F = Fraction
        return [(F(1), F(0), F(1), F(-1))]

    def parse(self, text):
        return parse_fraction(text)

    def format(self, a):
        return str(a)


class NonnegRationalSemiring(RationalSemiring):
    """Nonnegative rationals: ordinary finite probability with exact weights."""

    name = "nonneg-rational"
    kind = "nonneg-rational"
    certified = {
        "entire": "theory:subsemiring-of-field",
        "zerosumfree": "theory:ordered-nonnegative",
        "cancellative": "theory:subsemiring-of-field",
        "causal-criterion": "theory:cancellative-zerosumfree",
    }

    def negate(self, a):
        return Semiring.negate(self, a)

    @property
    def has_negation(self):
        return False

    def structured(self):
        F = Fraction
        return [F(0), F(1), F(1, 2), F(1, 3), F(2, 3), F(2), F(1, 4)]

    def sample(self, rng):
        return _small_fraction(rng, False)

    def split(self, value, parts, rng):
        weights = [rng.randint(0, 4) for _ in range(parts)]
        if not any(weights):
            weights[rng.randrange(parts)] = 1
        total = sum(weights)
        return [value * Fraction(w, total) for w in weights]

    def complement(self, r):
        return 1 - r if r <= 1 else None

    def seed_quadruples(self):
        return []

    def parse(self, text):
        value = parse_fraction(text)
        if value < 0:
            raise UsageError(f"{text!r} is negative; not a nonnegative rational")
        return value


class BooleanSemiring(Semiring):
    name = "boolean"
    kind = "boolean"
    zero = False
    one = True

    def add(self, a, b):
        return a or b

    def mul(self, a, b):
        return a and b

    def elements(self):
        return [False, True]

    def parse(self, text):
        s = str(text).strip().lower()
        if s in ("0", "false"):
            return False
        if s in ("1", "true"):
            return True
        raise UsageError(f"cannot parse boolean literal {text!r}")

    def format(self, a):
        return "1" if a else "0"


NEG_INF = None


class TropicalSemiring(Semiring):
    """(max, +) on Q with a bottom element -inf (encoded as ``None``)."""

    name = "tropical"
    kind = "tropical"
    zero = NEG_INF
    one = Fraction(0)
    certified = {
        "entire": "theory:tropical-no-zero-divisors",
        "zerosumfree": "theory:max-bottom",
        "cancellative": "theory:tropical-group",
        "causal-criterion": "theory:cancellative-zerosumfree",
    }

    def add(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        return max(a, b)

    def mul(self, a, b):
        if a is None or b is None:
            return None
        return a + b

    def structured(self):
        F = Fraction
        return [None, F(0), F(-1), F(1), F(1, 2), F(-2)]

    def sample(self, rng):
        if rng.random() < 0.15:
            return None
        return _small_fraction(rng, True)

    def split(self, value, parts, rng):
        if value is None:
            return [None] * parts
        rest = [rng.choice([None, value - rng.randint(0, 3)]) for _ in range(parts - 1)]
        return [value] + rest

    def complement(self, r):
        if r is None or r <= 0:
            return Fraction(0)
        return None

    def parse(self, text):
        s = str(text).strip().lower()
        if s in ("-inf", "-infinity", "bottom"):
            return None
        return parse_fraction(s)

    def format(self, a):
        return "-inf" if a is None else str(a)


class TableSemiring(Semiring):
    """A finite semiring given by addition and multiplication tables."""

    kind = "finite-table"

    def __init__(self, name: str, elements, add, mul, zero, one, validate: bool = True):
        labels = [str(e) for e in elements]
        n = len(labels)
        if n == 0 or len(set(labels)) != n:
            raise UsageError("element labels must be nonempty and distinct")
        self.name = name
        self.labels = labels
        self._index = {lab: i for i, lab in enumerate(labels)}
        self.add_table = self._table(add, "add")
        self.mul_table = self._table(mul, "mul")
        self.zero = self._lookup(zero)
        self.one = self._lookup(one)
        self.certified = {}
        if validate:
            from .properties import check_semiring_axioms
            verdict = check_semiring_axioms(self)
            if not verdict.ok:
                raise UsageError(f"{name} violates the semiring axioms: {verdict.witness}")

    def _lookup(self, label):
        key = str(label)
        if key in self._index:
            return self._index[key]
        raise UsageError(f"{label!r} is not an element of {self.name}")

    def _table(self, rows, what):
        n = len(self.labels)
        if not isinstance(rows, list) or len(rows) != n or any(not isinstance(r, list) or len(r) != n for r in rows):
            raise UsageError(f"{what} table must be a {n}x{n} list of lists")
        return tuple(tuple(self._lookup(v) for v in row) for row in rows)

    @classmethod
    def from_json(cls, name: str, doc: dict) -> "TableSemiring":
        missing = {"elements", "add", "mul", "zero", "one"} - set(doc)
        if missing:
            raise UsageError(f"semiring file lacks {sorted(missing)}")
        return cls(name, doc["elements"], doc["add"], doc["mul"], doc["zero"], doc["one"])

    def add(self, a, b):
        return self.add_table[a][b]

    def mul(self, a, b):
        return self.mul_table[a][b]

    def elements(self):
        return list(range(len(self.labels)))

    def parse(self, text):
        return self._lookup(text)

    def format(self, a):
        return self.labels[a]


def _f2() -> TableSemiring:
    return TableSemiring("f2", ["0", "1"], [["0", "1"], ["1", "0"]], [["0", "0"], ["0", "1"]], "0", "1")


_BUILDERS = {
    "rational": RationalSemiring,
    "nonneg-rational": NonnegRationalSemiring,
    "boolean": BooleanSemiring,
    "tropical": TropicalSemiring,
    "chain-2": lambda: LatticeSemiring("chain-2", chain(2)),
    "chain-3": lambda: LatticeSemiring("chain-3", chain(3)),
    "chain-4": lambda: LatticeSemiring("chain-4", chain(4)),
    "chain-5": lambda: LatticeSemiring("chain-5", chain(5)),
    "boolean-algebra-4": lambda: LatticeSemiring("boolean-algebra-4", boolean_algebra(2)),
    "boolean-algebra-8": lambda: LatticeSemiring("boolean-algebra-8", boolean_algebra(3)),
    "divisors-12": lambda: LatticeSemiring("divisors-12", divisor_lattice(12)),
    "ideal-z2i": IdealQuantale,
    "f2": _f2,
}

BUILTIN_NAMES = tuple(_BUILDERS)


@lru_cache(maxsize=None)
def get_semiring(selector: str) -> Semiring:
    """Look up a bundled semiring by name, or load a table file by path."""
    if selector in _BUILDERS:
        return _BUILDERS[selector]()
    path = Path(selector)
    if path.suffix == ".json" or path.exists():
        try:
            doc = json.loads(path.read_text())
        except OSError as exc:
            raise UsageError(f"cannot read semiring file {selector}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise UsageError(f"{selector} is not valid JSON: {exc}") from None
        return TableSemiring.from_json(doc.get("name", path.stem), doc)
    raise UsageError(f"unknown semiring {selector!r}; bundled: {', '.join(BUILTIN_NAMES)}")


def all_builtin() -> list[Semiring]:
    return [get_semiring(n) for n in BUILTIN_NAMES]

