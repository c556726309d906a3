from __future__ import annotations

import pytest

from infoflow.cases import CASES, compare, load_fixture, run_all, run_case
from infoflow.errors import UsageError


def test_every_case_matches():
    results = run_all()
    assert [r.case_id for r in results] == list(CASES)
    for r in results:
        assert r.match, (r.case_id, r.mismatches)


def test_fixtures_are_well_formed():
    for case_id in CASES:
        doc = load_fixture(case_id)
        assert {"title", "tags", "inputs", "expected"} <= set(doc)


def test_tag_filter():
    assert [r.case_id for r in run_all("pointed")] == ["pointed_ev_initial", "pointed_discard_creative"]
    assert run_all("no-such-tag") == []


def test_unknown_case():
    with pytest.raises(UsageError):
        run_case("nope")


def test_runs_are_deterministic():
    assert run_case("dileq_vs_ase").to_json() == run_case("dileq_vs_ase").to_json()


def test_compare_is_subset_matching():
    assert compare({"a": 1}, {"a": 1, "b": 2}) == []
    assert compare({"a": {"b": 1}}, {"a": {"b": 2}}) == ["/a/b: expected 1, got 2"]
    assert compare({"a": 1}, {}) == ["/a: missing"]
    assert compare([1], [1, 2]) != []


def test_pointed_fixture_records_the_claim():
    doc = load_fixture("pointed_ev_initial")
    assert doc["claimed"] == {"initial": "HOLDS"}
    assert doc["expected"]["2"]["initial"]["status"] == "FAILS"
