from __future__ import annotations

import random
from fractions import Fraction

import pytest
from hypothesis import strategies as st

from infoflow.kernel import FinSet, Kernel
from infoflow.semiring import get_semiring


@pytest.fixture(scope="session")
def Q():
    return get_semiring("rational")


@pytest.fixture(scope="session")
def Qp():
    return get_semiring("nonneg-rational")


def random_kernel(sr, dom: FinSet, cod: FinSet, rng: random.Random, signed: bool = False) -> Kernel:
    """Random normalised rational kernel; the last entry of each column is
    whatever makes the column sum to one (resampled until nonnegative when
    ``signed`` is false)."""
    cols = []
    for _ in dom.elements:
        while True:
            head = [Fraction(rng.randint(-3 if signed else 0, 4), rng.randint(1, 4)) for _ in range(len(cod) - 1)]
            last = 1 - sum(head, Fraction(0))
            if signed or last >= 0:
                break
            head = [h / (sum(head) or 1) / 2 for h in head]
            last = 1 - sum(head, Fraction(0))
            if last >= 0:
                break
        cols.append(head + [last])
    return Kernel(sr, dom, cod, cols)


def kernels(sr, dom: FinSet, cod: FinSet, signed: bool = False):
    """Hypothesis strategy for rational kernels of a fixed type."""
    return st.integers(0, 2 ** 32).map(lambda seed: random_kernel(sr, dom, cod, random.Random(seed), signed))


def naive_compose(g: Kernel, f: Kernel) -> list[list[Fraction]]:
    """(g∘f)(z|a) by explicit double loop over labels, as an oracle."""
    out = []
    for a in f.dom.labels:
        col = []
        for z in g.cod.labels:
            total = Fraction(0)
            for x in f.cod.labels:
                total += g(z, x) * f(x, a)
            col.append(total)
        out.append(col)
    return out


# criterion number -> (title, "PASS" | "FAIL"), filled by tests/test_acceptance.py
ACCEPTANCE: dict = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        title, outcome = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n:>2}: {outcome}  {title}")
