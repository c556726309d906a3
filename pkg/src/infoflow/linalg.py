"""Exact linear algebra over Fractions: reduced row echelon form, affine
solution sets, and a small two-phase simplex for feasibility under x >= 0."""

from __future__ import annotations

from fractions import Fraction
from typing import Optional, Sequence

Matrix = list[list[Fraction]]


def _copy(rows: Sequence[Sequence]) -> Matrix:
    return [[Fraction(v) for v in row] for row in rows]


def rref(rows: Sequence[Sequence]) -> tuple[Matrix, list[int]]:
    """Return the reduced row echelon form and its pivot columns."""
    m = _copy(rows)
    if not m:
        return m, []
    ncols = len(m[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pivot is None:
            continue
        m[r], m[pivot] = m[pivot], m[r]
        lead = m[r][c]
        if lead != 1:
            m[r] = [v / lead for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                factor = m[i][c]
                m[i] = [a - factor * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m, pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1])


def solve_affine(A: Sequence[Sequence], b: Sequence) -> Optional[tuple[list[Fraction], list[list[Fraction]]]]:
    """Solve ``A x = b`` exactly.

    Returns ``(x0, basis)`` where ``x0`` is a particular solution (free
    variables set to zero) and ``basis`` spans the null space, or ``None``
    if the system is inconsistent.
    """
    n = len(A[0]) if A else 0
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    red, pivots = rref(aug)
    if n in pivots:
        return None
    x0 = [Fraction(0)] * n
    for i, c in enumerate(pivots):
        x0[c] = red[i][n]
    free = [c for c in range(n) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -red[i][f]
        basis.append(v)
    return x0, basis


def nullspace(A: Sequence[Sequence]) -> list[list[Fraction]]:
    if not A:
        return []
    return solve_affine(A, [0] * len(A))[1]


def lp_solve(A: Sequence[Sequence], b: Sequence, c: Optional[Sequence] = None,
             maximize: bool = False) -> Optional[tuple[list[Fraction], Fraction]]:
    """Optimize ``c.x`` subject to ``A x = b, x >= 0`` exactly.

    Returns ``(x, value)`` at an optimal vertex, or ``None`` if infeasible.
    Without ``c`` this is a pure feasibility test.  Bland's rule keeps the
    simplex from cycling.  Unbounded objectives raise ``ValueError``.
    """
    m = len(A)
    n = len(A[0]) if A else 0
    rows = _copy(A)
    rhs = [Fraction(v) for v in b]
    for i in range(m):
        if rhs[i] < 0:
            rows[i] = [-v for v in rows[i]]
            rhs[i] = -rhs[i]
    # phase one: artificial variables n..n+m-1
    tab = [rows[i] + [Fraction(int(i == j)) for j in range(m)] + [rhs[i]] for i in range(m)]
    basis = [n + i for i in range(m)]
    width = n + m
    obj = [Fraction(0)] * (width + 1)
    for i in range(m):
        for j in range(n):
            obj[j] -= tab[i][j]
        obj[width] -= tab[i][width]
    _simplex(tab, basis, obj, width)
    if obj[width] != 0:
        return None
    # drive remaining artificials out of the basis
    for i in range(m):
        if basis[i] >= n:
            col = next((j for j in range(n) if tab[i][j] != 0), None)
            if col is not None:
                _pivot(tab, basis, obj, i, col)
    keep = [i for i in range(m) if basis[i] < n]
    tab = [tab[i][:n] + [tab[i][width]] for i in keep]
    basis = [basis[i] for i in keep]
    if c is None:
        c = [0] * n
    sign = Fraction(-1) if maximize else Fraction(1)
    obj = [sign * Fraction(v) for v in c] + [Fraction(0)]
    for i, bv in enumerate(basis):
        if obj[bv] != 0:
            f = obj[bv]
            obj = [a - f * t for a, t in zip(obj, tab[i])]
    if not _simplex(tab, basis, obj, n):
        raise ValueError("unbounded objective")
    x = [Fraction(0)] * n
    for i, bv in enumerate(basis):
        x[bv] = tab[i][n]
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return x, value


def _pivot(tab, basis, obj, r, col):
    lead = tab[r][col]
    tab[r] = [v / lead for v in tab[r]]
    for i in range(len(tab)):
        if i != r and tab[i][col] != 0:
            f = tab[i][col]
            tab[i] = [a - f * t for a, t in zip(tab[i], tab[r])]
    if obj[col] != 0:
        f = obj[col]
        obj[:] = [a - f * t for a, t in zip(obj, tab[r])]
    basis[r] = col


def _simplex(tab, basis, obj, ncols) -> bool:
    """Minimize in place; ``obj`` holds reduced costs with -value last.
    Returns False if unbounded."""
    while True:
        col = next((j for j in range(ncols) if obj[j] < 0), None)
        if col is None:
            return True
        best = None
        for i, row in enumerate(tab):
            if row[col] > 0:
                ratio = row[-1] / row[col]
                if best is None or ratio < best[0] or (ratio == best[0] and basis[i] < basis[best[1]]):
                    best = (ratio, i)
        if best is None:
            return False
        _pivot(tab, basis, obj, best[1], col)
