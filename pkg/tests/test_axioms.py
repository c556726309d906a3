from __future__ import annotations

import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import random_kernel
from infoflow.axioms import (
    audit_equivalences,
    audit_semirings,
    check_pes_instance,
    check_positivity_instance,
    check_relative_positivity_instance,
    positivity_sides,
)
from infoflow.dilation import env_set
from infoflow.errors import UsageError
from infoflow.kernel import FinSet, Kernel, compose, identity, load_kernel, point, uniform
from infoflow.semiring import all_builtin, get_semiring
from infoflow.verdict import Status

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
X2 = FinSet.of("x1", "x2")
Y2 = FinSet.of("y1", "y2")


def rank1_pair():
    return load_kernel(FIXTURES / "f_rank1.json"), load_kernel(FIXTURES / "g_rank1.json")


def test_positivity_counterexample():
    f, g = rank1_pair()
    report = check_positivity_instance(f, g)
    v = report.verdict
    assert v.failed
    assert v.witness == {"a": "•", "x": "x3", "y": "z2", "lhs": "-1", "rhs": "0", "detail": "1·-1 ≠ 0·-1"}
    assert len(v.violations) == 4
    names = [n for n, _ in report.cross_checks]
    assert names == ["deterministic g∘f", "dmi"]
    assert report.cross_checks[1][1].failed
    doc = report.to_json()
    assert doc["axiom"] == "positivity" and doc["status"] == "FAILS"


def test_positivity_vacuous_when_composite_is_random(Q):
    f = uniform(Q, X2)
    report = check_positivity_instance(f, identity(Q, X2))
    assert report.verdict.ok and report.verdict.is_vacuous


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_positivity_holds_over_nonneg_rationals(seed):
    Qp = get_semiring("nonneg-rational")
    rng = random.Random(seed)
    A, X, Y = (FinSet.range(rng.randint(1, 3), c) for c in "axy")
    f = random_kernel(Qp, A, X, rng)
    g = random_kernel(Qp, X, Y, rng)
    v = check_positivity_instance(f, g).verdict
    assert v.status is Status.HOLDS
    # never a failure from a vacuous antecedent
    if v.is_vacuous:
        assert not check_positivity_instance(f, g).cross_checks[0][1].ok


def test_positivity_sides_agree_when_it_holds(Qp):
    f = Kernel.from_matrix(Qp, FinSet.of("a", "b"), X2, [["1", "0"], ["0", "1"]])
    g = identity(Qp, X2)
    left, right = positivity_sides(f, g)
    assert left == right
    assert check_positivity_instance(f, g).verdict.ok


def test_pes_over_signed_rationals(Q):
    h1 = Kernel.from_matrix(Q, X2, Y2, [["1", "1"], ["0", "0"]])
    h2 = Kernel.from_matrix(Q, X2, Y2, [["0", "1"], ["1", "0"]])
    p = Kernel.from_matrix(Q, FinSet.unit(), X2, [["0"], ["1"]])
    pi = Kernel.from_matrix(Q, FinSet.unit(), X2 @ env_set(2), [["1"], ["-1"], ["1"], ["0"]])
    report = check_pes_instance(h1, h2, p, pi=pi)
    assert report.cross_checks[0][0] == "antecedent"
    assert report.cross_checks[0][1].ok and not report.cross_checks[0][1].is_vacuous
    v = report.verdict
    assert v.failed and (v.witness["x"], v.witness["y"], v.witness["e"]) == ("x1", "y1", "e1")
    assert (v.witness["lhs"], v.witness["rhs"]) == ("1", "0")
    assert report.cross_checks[1][1].failed
    # without a given dilation the search finds one
    assert check_pes_instance(h1, h2, p, max_env=2, random_count=5).verdict.failed


def test_pes_holds_by_theory_over_nonneg(Qp):
    h1 = Kernel.from_matrix(Qp, X2, Y2, [["1", "1"], ["0", "0"]])
    h2 = Kernel.from_matrix(Qp, X2, Y2, [["0", "1"], ["1", "0"]])
    p = point(Qp, X2, "x2")
    v = check_pes_instance(h1, h2, p).verdict
    assert v.ok and v.certificate.startswith("theory:")


def test_pes_vacuous_and_trivial(Q):
    h1 = identity(Q, X2)
    h2 = Kernel.from_matrix(Q, X2, X2, [["0", "1"], ["1", "0"]])
    p = point(Q, X2, "x1")
    assert check_pes_instance(h1, h2, p).verdict.is_vacuous
    assert check_pes_instance(h1, h1, p, max_env=1, random_count=2).verdict.status is not Status.FAILS
    with pytest.raises(UsageError):
        check_pes_instance(h1, h2, point(Q, Y2, "y1"))


def test_relative_positivity(Q):
    f, g = rank1_pair()
    # with p the identity on the one-point input, the relative form is the plain one
    plain = check_positivity_instance(f, g).verdict
    rel = check_relative_positivity_instance(f, g, identity(Q, FinSet.unit())).verdict
    assert rel.status is plain.status is Status.FAILS


def test_relative_positivity_masking(Q):
    # g∘f is deterministic only at input a; p = δ_a masks the rest
    A = FinSet.of("a", "b")
    f = Kernel.from_matrix(Q, A, X2, [["1", "1/2"], ["0", "1/2"]])
    g = identity(Q, X2)
    assert check_positivity_instance(f, g).verdict.is_vacuous
    rel = check_relative_positivity_instance(f, g, point(Q, A, "a")).verdict
    assert rel.ok and not rel.is_vacuous
    vac = check_relative_positivity_instance(f, g, point(Q, A, "b")).verdict
    assert vac.is_vacuous


def test_audit_nonneg_has_no_disagreement(Qp):
    report = audit_equivalences(Qp, 3, seed=0, samples=120)
    assert report.verdict.ok
    assert report.stats["positivity_failures"] == 0
    assert report.stats["internal_inconsistencies"] == 0
    assert report.stats["vacuous"] > 0 and report.stats["holds"] > 0


def test_audit_signed_reports_expected_failures(Q):
    report = audit_equivalences(Q, 3, seed=0, samples=120)
    assert report.verdict.ok
    assert report.stats["positivity_failures"] > 0
    assert report.stats["internal_inconsistencies"] == 0
    assert report.verdict.witness["positivity_counterexample"] is not None


def test_audit_is_seeded(Q):
    a = audit_equivalences(Q, 2, seed=7, samples=40).to_json()
    b = audit_equivalences(Q, 2, seed=7, samples=40).to_json()
    assert a == b


def test_meta_implication_audit():
    report = audit_semirings(all_builtin())
    assert report.verdict.ok
    assert report.stats["converse_refuted_by"] == ["ideal-z2i"]
