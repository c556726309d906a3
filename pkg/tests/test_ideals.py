from __future__ import annotations

import random
from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from infoflow.errors import UsageError
from infoflow.semiring import get_semiring
from infoflow.semiring.ideals import (
    UNIT,
    ZERO,
    Ideal,
    canonicalize_ideal,
    element_mul,
    format_ideal,
    hnf,
    ideal_add,
    ideal_mul,
    parse_ideal,
    principal,
)

BOX = 20


def closure_in_box(generators, box=BOX):
    """Oracle: points of the smallest T-closed subgroup containing the
    generators, restricted to |a|, |b| <= box.  Breadth-first closure under
    ± generators and multiplication by 2i, with a generous working box so
    that every box point is reached."""
    work = 4 * box
    # T^2 is multiplication by -4, so g and T(g) generate everything
    gens = {g for g0 in generators for g in (tuple(g0), (-4 * g0[1], g0[0])) if g != (0, 0)}
    seen = {(0, 0)}
    queue = [(0, 0)]
    while queue:
        a, b = queue.pop()
        for ga, gb in gens:
            for s in (1, -1):
                pt = (a + s * ga, b + s * gb)
                if abs(pt[0]) <= work and abs(pt[1]) <= work and pt not in seen:
                    seen.add(pt)
                    queue.append(pt)
    return {p for p in seen if abs(p[0]) <= box and abs(p[1]) <= box}


def ideal_points(ideal: Ideal, box=BOX):
    return {p for p in product(range(-box, box + 1), repeat=2) if p in ideal}


def test_canonicalize_examples():
    assert format_ideal(canonicalize_ideal([(2, 0)])) == "(2,4i)"
    assert canonicalize_ideal([]) == ZERO
    assert format_ideal(ZERO) == "(0)"
    assert format_ideal(canonicalize_ideal([(0, 1)])) == "(4,2i)"
    assert format_ideal(UNIT) == "(1,2i)"


@pytest.mark.parametrize("gens", [[(2, 0)], [(0, 1)], [(2, 0), (0, 2), (4, 0), (0, 1)], [(1, 1)], [(3, 0)], [(2, 1)]])
def test_canonical_form_matches_subgroup_closure(gens):
    assert ideal_points(canonicalize_ideal(gens)) == closure_in_box(gens)


def test_sum_of_example_ideals_against_oracle():
    s, t = parse_ideal("(2,4i)"), parse_ideal("(4,2i)")
    total = ideal_add(s, t)
    assert format_ideal(total) == "(2,2i)"
    assert ideal_points(total) == closure_in_box([(2, 0), (0, 2), (4, 0), (0, 1)])


def test_products_from_the_quantale_example():
    s, t = parse_ideal("(2,4i)"), parse_ideal("(4,2i)")
    assert format_ideal(ideal_mul(s, s)) == "(4,8i)"
    assert format_ideal(ideal_mul(t, t)) == "(4,8i)"
    assert format_ideal(ideal_mul(s, t)) == "(8,4i)"
    vw = ideal_add(s, t)
    assert format_ideal(ideal_mul(s, vw)) == format_ideal(ideal_mul(t, vw)) == "(4,4i)"
    # (4,4i) is the sum of (4,8i) and (8,4i)
    assert ideal_points(parse_ideal("(4,4i)")) == closure_in_box([(4, 0), (0, 4), (8, 0), (0, 2)])


def test_non_split_ideal_literal():
    i = canonicalize_ideal([(1, 1)])
    assert format_ideal(i) == "[[1,1],[0,5]]"
    assert parse_ideal("[[1,1],[0,5]]") == i


def test_parse_rejects_non_ideals():
    with pytest.raises(UsageError):
        parse_ideal("(2,2i)x")
    with pytest.raises(UsageError):
        parse_ideal("(2,3i)")  # odd coefficient of i is not in Z[2i]
    # Z + 4iZ is a subgroup, but 2i·1 = 2i lies outside it
    with pytest.raises(UsageError):
        parse_ideal("[[1,0],[0,2]]")


def test_round_trip_through_literals():
    sr = get_semiring("ideal-z2i")
    for ideal in sr.structured():
        assert sr.parse(sr.format(ideal)) == ideal


pairs = st.tuples(st.integers(-12, 12), st.integers(-6, 6))
generator_lists = st.lists(pairs, min_size=0, max_size=3)


def _re_present(gens, rng):
    """Same ideal, different generators: add integer combinations and
    2i-multiples of the originals."""
    out = list(gens)
    for _ in range(3):
        if not gens:
            break
        a, b = rng.choice(gens), rng.choice(gens)
        c1, c2 = rng.randint(-3, 3), rng.randint(-3, 3)
        out.append((c1 * a[0] + c2 * b[0], c1 * a[1] + c2 * b[1]))
        out.append((-4 * a[1], a[0]))
    rng.shuffle(out)
    return out


@settings(max_examples=150, deadline=None)
@given(generator_lists, generator_lists, st.integers(0, 10 ** 6))
def test_sum_and_product_ignore_presentation(g1, g2, seed):
    rng = random.Random(seed)
    i, j = canonicalize_ideal(g1), canonicalize_ideal(g2)
    i2, j2 = canonicalize_ideal(_re_present(g1, rng)), canonicalize_ideal(_re_present(g2, rng))
    assert i == i2 and j == j2
    assert ideal_add(i, j) == ideal_add(i2, j2)
    assert ideal_mul(i, j) == ideal_mul(i2, j2)


@settings(max_examples=150, deadline=None)
@given(pairs, pairs)
def test_principal_product_is_element_product(x, y):
    assert ideal_mul(principal(*x), principal(*y)) == principal(*element_mul(x, y))


@settings(max_examples=60, deadline=None)
@given(st.lists(pairs, min_size=1, max_size=2))
def test_canonical_form_is_closed_and_minimal(gens):
    ideal = canonicalize_ideal(gens)
    for v in ideal.basis:
        assert (-4 * v[1], v[0]) in ideal
    for g in gens:
        assert tuple(g) in ideal
    assert ideal_points(ideal, 8) == closure_in_box(gens, 8)


def test_hnf_shape():
    rows = hnf([(6, 4), (4, 2), (0, 6)])
    (p, q), (zero, r) = rows
    assert zero == 0 and p > 0 and r > 0 and 0 <= q < r
