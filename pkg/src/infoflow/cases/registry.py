"""Named reproductions.  Each case reads its inputs and expected values
from ``data/<case_id>.json``, runs the checkers, and compares."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from importlib import resources
from typing import Any, Callable

from ..axioms import check_positivity_instance
from ..dilation import (
    Dilation,
    check_dmi_instance,
    dilational_equal,
    find_broadcasting,
    is_broadcasting,
    is_deterministic_in,
    make_dilation,
    signed_broadcasting,
    verify_dilation,
    verify_initial,
)
from ..errors import UsageError
from ..kernel import (
    FinSet,
    Kernel,
    as_equal,
    compose,
    conditional,
    copy,
    is_deterministic,
    kernel_from_json,
    marginalize,
    point,
)
from ..linalg import rank
from ..semiring import (
    LatticeSemiring,
    check_causality_criterion,
    check_entire,
    check_zerosumfree,
    diamond_m3,
    get_semiring,
    validate_lattice,
)
from ..verdict import Verdict
from . import pointed as pt


@dataclass
class CaseResult:
    case_id: str
    title: str
    tags: list
    expected: dict
    actual: dict
    match: bool
    mismatches: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {"case": self.case_id, "title": self.title, "tags": self.tags, "match": self.match,
                "expected": self.expected, "actual": self.actual, "mismatches": self.mismatches}

    def summary(self) -> str:
        return f"{self.case_id}: {'match' if self.match else 'MISMATCH'}"


def compare(expected: Any, actual: Any, path: str = "") -> list[str]:
    """Paths where ``actual`` disagrees with ``expected``.  Dictionaries in
    ``expected`` only constrain the keys they list."""
    if isinstance(expected, dict):
        if not isinstance(actual, dict):
            return [f"{path or '/'}: expected an object"]
        out = []
        for key, value in expected.items():
            if key not in actual:
                out.append(f"{path}/{key}: missing")
            else:
                out.extend(compare(value, actual[key], f"{path}/{key}"))
        return out
    if expected != actual:
        return [f"{path or '/'}: expected {expected!r}, got {actual!r}"]
    return []


def load_fixture(case_id: str) -> dict:
    try:
        text = resources.files(__package__).joinpath("data", f"{case_id}.json").read_text(encoding="utf-8")
    except FileNotFoundError:
        raise UsageError(f"unknown case {case_id!r}; known: {', '.join(CASES)}") from None
    return json.loads(text)


def _v(verdict: Verdict) -> dict:
    return verdict.to_json()


def _entries(k: Kernel) -> dict:
    return k.to_json()["entries"]


def _kernels(inputs: dict, *names: str) -> list[Kernel]:
    return [kernel_from_json(inputs[n]) for n in names]


# -- runners ----------------------------------------------------------------------

def _finstoch_pm_dmi(inputs):
    (q,) = _kernels(inputs, "q")
    qx, qe = marginalize(q, [0]), marginalize(q, [1])
    delta_x = point(q.semiring, qx.cod, ("x",))
    return {
        "x_marginal": _entries(qx),
        "x_marginal_is_delta_x": qx == delta_x,
        "e_marginal": _entries(qe),
        "deterministic_in_x": _v(is_deterministic_in(q)),
        "dmi": _v(check_dmi_instance(Dilation(qx, q, "q"))),
    }


def in_rank1_stochastic_subcategory(k: Kernel) -> Verdict:
    """Membership in the wide subcategory of signed kernels that are either
    stochastic (no negative entry) or of rank one."""
    sr = k.semiring
    negatives = [(k.dom.labels[i], k.cod.labels[j]) for i, col in enumerate(k.cols)
                 for j, v in enumerate(col) if sr.is_negative(v)]
    if not negatives:
        return Verdict.holds("exhaustive", ["stochastic"])
    r = rank([list(col) for col in k.cols])
    if r == 1:
        return Verdict.holds("exhaustive", ["rank 1"])
    return Verdict.fails({"rank": r, "negative_entry": list(negatives[0])})


def _rank1_positivity(inputs):
    f, g = _kernels(inputs, "f", "g")
    gf = compose(g, f)
    report = check_positivity_instance(f, g)
    return {
        "gf": _entries(gf),
        "gf_deterministic": _v(is_deterministic(gf)),
        "positivity": _v(report.verdict),
        "positivity_violations": list(report.verdict.violations),
        "f_rank": rank([list(col) for col in f.cols]),
        "f_in_subcategory": _v(in_rank1_stochastic_subcategory(f)),
        "g_in_subcategory": _v(in_rank1_stochastic_subcategory(g)),
    }


def _quantale(inputs):
    sr = get_semiring(inputs["semiring"])
    s, t, v, w = (sr(inputs[n]) for n in "stvw")
    return {
        "s+t": str(s + t),
        "s2": str(s * s),
        "t2": str(t * t),
        "st": str(s * t),
        "s(v+w)": str(s * (v + w)),
        "t(v+w)": str(t * (v + w)),
        "sv": str(s * v),
        "tv": str(t * v),
        "zerosumfree": _v(check_zerosumfree(sr)),
        "entire": _v(check_entire(sr)),
        "causality": _v(check_causality_criterion(sr)),
    }


def _lattice_causal(inputs):
    causality, valid = {}, {}
    for name in inputs["semirings"]:
        sr = get_semiring(name)
        if not isinstance(sr, LatticeSemiring):
            raise UsageError(f"{name} is not a lattice")
        valid[name] = _v(validate_lattice(sr.lattice))
        causality[name] = _v(check_causality_criterion(sr))
    return {"causality": causality, "validate": valid, "diamond-m3": _v(validate_lattice(diamond_m3()))}


def _convex_decomposition(inputs):
    p, m, k = _kernels(inputs, "p", "m", "k")
    d = make_dilation("from_decomposition", p, m=m, k=k)
    return {
        "k_after_m_equals_p": compose(k, m) == p,
        "dilation": _v(verify_dilation(d.total, p)),
        "pi": _entries(d.total),
        "env_marginal": _entries(d.env_marginal),
    }


def _dileq_vs_ase(inputs):
    p, f, g = _kernels(inputs, "p", "f", "g")
    return {
        "compose_equal": compose(f, p) == compose(g, p),
        "as_equal": _v(as_equal(f, g, p)),
        "dilational_equal": _v(dilational_equal(f, g, p)),
    }


def _broadcasting_pm(inputs):
    (b,) = _kernels(inputs, "b")
    signed = find_broadcasting(b.semiring, b.dom)
    nonneg = get_semiring("nonneg-rational")
    out = {}
    for n in inputs["sizes"]:
        res = find_broadcasting(nonneg, FinSet.range(n))
        out[str(n)] = {"solutions": len(res.solutions), "unique": _v(res.verdict)}
    return {
        "b_is_broadcasting": _v(is_broadcasting(b)),
        "b_differs_from_copy": b != copy(b.semiring, b.dom),
        "b_matches_formula": b == signed_broadcasting(b.semiring, b.dom),
        "signed_dimension": signed.dimension,
        "signed_unique": _v(signed.verdict),
        "nonneg": out,
    }


def _pointed_ev_initial(inputs):
    out = {}
    for n in inputs["sizes"]:
        X = pt.PointedSet.of_size(n, "x")
        H = pt.hom_set(X)
        ev = pt.evaluation(X)
        stats, stats_all = {}, {}
        out[str(n)] = {
            "self_maps": len(H),
            "ev_is_dilation": _v(pt.is_dilation_of_identity(ev, X, H)),
            "initial": _v(pt.check_evaluation_initial(X, inputs["max_env"], stats=stats)),
            "initial_stats": stats,
            "initial_all_functions": _v(pt.check_evaluation_initial(X, inputs["max_env"], pointed=False,
                                                                    stats=stats_all)),
            "initial_all_functions_stats": stats_all,
            "env_marginal_all_functions": _v(pt.evaluation_env_marginal(X, pointed=False)),
        }
    return out


def _pointed_discard_creative(inputs):
    out = {}
    for n in inputs["sizes"]:
        X = pt.PointedSet.of_size(n, "x")
        out[str(n)] = {
            "env_marginal_constant": _v(pt.evaluation_env_marginal(X)),
            "noncreative": _v(pt.check_constant_noncreative(X)),
        }
    return out


def _ioc_initial(inputs):
    out = {}
    for name, doc in inputs["kernels"].items():
        p = kernel_from_json(doc)
        d = make_dilation("ioc", p)
        details = []
        verdict = verify_initial(d, inputs["max_env"], inputs["random_count"], inputs["seed"], details=details)
        agree = True
        for target, found in details:
            mediator = found.mediator
            if mediator is None or mediator != conditional(target.total):
                agree = False
        out[name] = {"initial": _v(verdict), "mediators_are_conditionals": agree and bool(details),
                     "dilations_checked": len(details)}
    return out


CASES: dict[str, Callable[[dict], dict]] = {
    "finstoch_pm_dmi": _finstoch_pm_dmi,
    "rank1_positivity": _rank1_positivity,
    "quantale_z2i": _quantale,
    "lattice_causal": _lattice_causal,
    "convex_decomposition": _convex_decomposition,
    "dileq_vs_ase": _dileq_vs_ase,
    "broadcasting_pm": _broadcasting_pm,
    "pointed_ev_initial": _pointed_ev_initial,
    "pointed_discard_creative": _pointed_discard_creative,
    "ioc_initial": _ioc_initial,
}


def run_case(case_id: str) -> CaseResult:
    if case_id not in CASES:
        raise UsageError(f"unknown case {case_id!r}; known: {', '.join(CASES)}")
    doc = load_fixture(case_id)
    actual = CASES[case_id](doc["inputs"])
    actual = json.loads(json.dumps(actual, ensure_ascii=False, default=str))
    mismatches = compare(doc["expected"], actual)
    return CaseResult(case_id, doc.get("title", ""), list(doc.get("tags", [])), doc["expected"], actual,
                      not mismatches, mismatches)


def case_tags(case_id: str) -> list[str]:
    return list(load_fixture(case_id).get("tags", []))


def run_all(tag: str | None = None) -> list[CaseResult]:
    ids = [c for c in CASES if tag is None or tag in case_tags(c)]
    return [run_case(c) for c in ids]
