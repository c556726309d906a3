"""Instance-level checks of positivity, causality (parametrized equality
strengthening) and relative positivity, plus an audit cross-checking the
equivalent formulations of positivity against each other."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from .dilation import (
    Dilation,
    check_dmi_instance,
    dilation_equation,
    dilational_equal,
    env_set,
)
from .errors import InternalInconsistency, UsageError
from .kernel import (
    FinSet,
    Kernel,
    as_equal,
    compose,
    copy,
    discard,
    identity,
    is_deterministic,
    marginalize,
    tensor,
)
from .semiring import Semiring
from .semiring.properties import audit_meta_implication, check_zerosumfree
from .verdict import Status, Verdict, check_equations, jsonable


@dataclass
class AxiomReport:
    axiom: str
    inputs: dict
    verdict: Verdict
    cross_checks: list = field(default_factory=list)
    stats: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        doc = self.verdict.to_json()
        doc["axiom"] = self.axiom
        doc["cross_checks"] = [{"formulation": name, **v.to_json()} for name, v in self.cross_checks]
        if self.stats:
            doc["stats"] = jsonable(self.stats)
        return doc


def _kernel_inputs(**kernels) -> dict:
    return {name: k.to_json() for name, k in kernels.items() if k is not None}


def check_positivity_instance(f: Kernel, g: Kernel) -> AxiomReport:
    """If g∘f is deterministic, check g(y|x) f(x|a) = (g∘f)(y|a) f(x|a).

    The same equation is the DMI instance of the dilation (g⊗id)∘copy∘f of
    g∘f; that formulation is run too and must agree."""
    if f.cod != g.dom:
        raise UsageError(f"cannot compose: {f.cod} is not {g.dom}")
    sr = f.semiring
    gf = compose(g, f)
    det = is_deterministic(gf)
    inputs = _kernel_inputs(f=f, g=g)
    if not det.ok:
        return AxiomReport("positivity", inputs, Verdict.vacuous(["g∘f is not deterministic"]),
                           [("deterministic g∘f", det)])
    mul, fmt = sr.mul, sr.format
    al, xl, yl = f.dom.labels, f.cod.labels, g.cod.labels

    def items():
        for i in range(len(al)):
            for j in range(len(xl)):
                fx = f.cols[i][j]
                for y in range(len(yl)):
                    yield ({"a": al[i], "x": xl[j], "y": yl[y]},
                           mul(g.cols[j][y], fx), mul(gf.cols[i][y], fx))

    def explain(v):
        i, j, y = al.index(v.point["a"]), xl.index(v.point["x"]), yl.index(v.point["y"])
        fx = fmt(f.cols[i][j])
        return f"{fmt(g.cols[j][y])}·{fx} ≠ {fmt(gf.cols[i][y])}·{fx}"

    def prefer(v):
        # negative mass that the deterministic composite cancelled away
        return v.rhs_zero and sr.is_negative(v.lhs)

    verdict = check_equations(sr, items(), ["g(y|x) f(x|a) = (g∘f)(y|a) f(x|a)"],
                              prefer=prefer, explain=explain)
    joint = compose(tensor(g, identity(sr, f.cod)), compose(copy(sr, f.cod), f))
    dmi = check_dmi_instance(Dilation(gf, joint, "(g⊗id)∘copy∘f"))
    if dmi.status != verdict.status:
        raise InternalInconsistency("positivity and its DMI form disagree")
    return AxiomReport("positivity", inputs, verdict, [("deterministic g∘f", det), ("dmi", dmi)])


def check_pes_instance(h1: Kernel, h2: Kernel, p: Kernel, max_env: int = 3,
                       pi: Optional[Kernel] = None, random_count: int = 50, seed: int = 0) -> AxiomReport:
    """If h1∘p = h2∘p, the two must agree in the presence of every dilation
    of p.  With ``pi`` given, that dilation is tested directly."""
    if h1.dom != p.cod or h2.dom != p.cod or h1.cod != h2.cod:
        raise UsageError("need h1, h2: X -> Y and p: A -> X")
    sr = p.semiring
    c1, c2 = compose(h1, p), compose(h2, p)
    al, yl = p.dom.labels, h1.cod.labels
    antecedent = check_equations(sr, (({"a": al[i], "y": yl[y]}, c1.cols[i][y], c2.cols[i][y])
                                      for i in range(len(al)) for y in range(len(yl))),
                                 ["h1∘p = h2∘p"])
    inputs = _kernel_inputs(h1=h1, h2=h2, p=p, pi=pi)
    if not antecedent.ok:
        return AxiomReport("pes", inputs, Verdict.vacuous(["h1∘p differs from h2∘p"]),
                           [("antecedent", antecedent)])
    checks = [("antecedent", antecedent)]
    if pi is not None:
        d = Dilation(p, pi, "given")
        verdict = dilation_equation(h1, h2, d.total)
        checks.append(("dilational-equality", dilational_equal(h1, h2, p, max_env, random_count, seed)))
        if verdict.failed and checks[-1][1].ok:
            raise InternalInconsistency("a given dilation separates h1, h2 but dilational equality holds")
    else:
        verdict = dilational_equal(h1, h2, p, max_env, random_count, seed)
    return AxiomReport("pes", inputs, verdict, checks)


def positivity_sides(f: Kernel, g: Kernel) -> tuple[Kernel, Kernel]:
    """(g⊗id_X)∘copy_X∘f and ((g∘f)⊗f)∘copy_A, both A -> Y⊗X."""
    sr = f.semiring
    left = compose(tensor(g, identity(sr, f.cod)), compose(copy(sr, f.cod), f))
    right = compose(tensor(compose(g, f), f), copy(sr, f.dom))
    return left, right


def check_relative_positivity_instance(f: Kernel, g: Kernel, p: Kernel) -> AxiomReport:
    """If g∘f is p-a.s. deterministic, the positivity equation must hold
    p-almost surely."""
    if p.cod != f.dom or f.cod != g.dom:
        raise UsageError("need p: Θ -> A, f: A -> X, g: X -> Y")
    sr = f.semiring
    gf = compose(g, f)
    copied = compose(copy(sr, gf.cod), gf)
    doubled = compose(tensor(gf, gf), copy(sr, gf.dom))
    antecedent = as_equal(copied, doubled, p)
    inputs = _kernel_inputs(f=f, g=g, p=p)
    if not antecedent.ok:
        return AxiomReport("relative-positivity", inputs,
                           Verdict.vacuous(["g∘f is not p-a.s. deterministic"]), [("antecedent", antecedent)])
    left, right = positivity_sides(f, g)
    verdict = as_equal(left, right, p)
    return AxiomReport("relative-positivity", inputs, verdict, [("antecedent", antecedent)])


# -- audit ---------------------------------------------------------------------

def random_deterministic(sr: Semiring, A: FinSet, X: FinSet, rng: random.Random) -> Kernel:
    cols = []
    for _ in A.elements:
        j = rng.randrange(len(X))
        cols.append([sr.one if k == j else sr.zero for k in range(len(X))])
    return Kernel(sr, A, X, cols, check=False)


def random_dilation(p: Kernel, k: int, rng: random.Random) -> Optional[Kernel]:
    sr = p.semiring
    cols = []
    for col in p.cols:
        out = []
        for v in col:
            parts = sr.split(v, k, rng)
            if parts is None:
                return None
            out.extend(parts)
        cols.append(out)
    return Kernel(sr, p.dom, p.cod @ env_set(k), cols, check=False)


def random_kernel(sr: Semiring, A: FinSet, X: FinSet, rng: random.Random) -> Optional[Kernel]:
    """A random normalised kernel, built by splitting one over the codomain."""
    cols = []
    for _ in A.elements:
        parts = sr.split(sr.one, len(X), rng)
        if parts is None:
            return None
        cols.append(parts)
    return Kernel(sr, A, X, cols, check=False)


def _sizes(rng, bound):
    return [FinSet.range(rng.randint(1, bound), prefix=pfx) for pfx in ("a", "x", "e")]


def audit_equivalences(sr: Semiring, size_bound: int = 3, seed: int = 0, samples: int = 500) -> AxiomReport:
    """Run DMI, deterministic-in-X and positivity (with g the projection
    onto X) on random dilations of random deterministic morphisms, plus
    random joints with arbitrary marginals.

    Disagreement among the three formulations is an internal
    inconsistency.  Instances whose X-marginal is deterministic but which
    are not deterministic in X are counterexamples to positivity; they are
    expected exactly when the semiring is not zerosumfree.
    """
    from .dilation import is_deterministic_in

    rng = random.Random(seed)
    stats = {"samples": 0, "dilations": 0, "arbitrary": 0, "holds": 0, "vacuous": 0,
             "positivity_failures": 0, "internal_inconsistencies": 0}
    first_failure = None
    inconsistencies = []
    for n in range(samples):
        A, X, E = _sizes(rng, size_bound)
        if n % 4 == 3:
            q = random_kernel(sr, A, X @ E, rng)
            stats["arbitrary"] += 1
        else:
            p = random_deterministic(sr, A, X, rng)
            q = random_dilation(p, len(E), rng)
            stats["dilations"] += 1
        if q is None:
            continue
        stats["samples"] += 1
        qx = marginalize(q, [0])
        proj = tensor(identity(sr, X), discard(sr, q.cod.sub([1])))
        marginal_det = is_deterministic(qx).ok
        det_in_x = is_deterministic_in(q)
        positivity = check_positivity_instance(q, proj).verdict
        outcomes = {"deterministic-in-X": det_in_x.ok}
        if marginal_det:
            outcomes["dmi"] = check_dmi_instance(Dilation(qx, q)).ok
            outcomes["positivity"] = positivity.ok
        else:
            stats["vacuous"] += 1
            if not positivity.is_vacuous:
                outcomes["positivity-vacuity"] = False
            # deterministic-in-X implies a deterministic marginal
            outcomes["marginal-implied"] = not det_in_x.ok
        values = set(v for k, v in outcomes.items() if k not in ("positivity-vacuity", "marginal-implied"))
        consistent = outcomes.get("positivity-vacuity", True) and outcomes.get("marginal-implied", True)
        if marginal_det and len(values) > 1 or not consistent:
            stats["internal_inconsistencies"] += 1
            inconsistencies.append({"sample": n, "outcomes": outcomes, "q": q.to_json()})
            continue
        if marginal_det and not det_in_x.ok:
            stats["positivity_failures"] += 1
            if first_failure is None:
                first_failure = {"sample": n, "q": q.to_json(), "point": det_in_x.witness}
        elif marginal_det:
            stats["holds"] += 1
    zsf = check_zerosumfree(sr)
    trace = [f"{stats['samples']} samples, {stats['positivity_failures']} positivity counterexamples, "
             f"{stats['internal_inconsistencies']} internal inconsistencies"]
    checks = [("zerosumfree", zsf)]
    if inconsistencies:
        verdict = Verdict.fails({"internal_inconsistency": inconsistencies[0]}, trace)
    elif stats["positivity_failures"] and zsf.ok:
        verdict = Verdict.fails({"unexpected_positivity_failure": first_failure},
                                trace + ["zerosumfree semirings admit no such instance"])
    else:
        if first_failure is not None:
            trace.append("positivity counterexamples are expected: the semiring is not zerosumfree")
        verdict = Verdict.holds(f"bound:{stats['samples']}", trace,
                                witness={"positivity_counterexample": first_failure} if first_failure else None)
    return AxiomReport("equivalence-audit", {"semiring": sr.name, "size_bound": size_bound,
                                             "seed": seed, "samples": samples},
                       verdict, checks, stats)


def audit_semirings(semirings) -> AxiomReport:
    """Causality criterion implies zerosumfree on every semiring given; the
    semirings refuting the converse are listed."""
    rows, verdict, refutations = audit_meta_implication(semirings)
    checks = []
    for row in rows:
        checks.append((f"{row.semiring}: zerosumfree", row.zerosumfree))
        checks.append((f"{row.semiring}: causality-criterion", row.causal))
    return AxiomReport("semiring-meta-implication", {"semirings": [r.semiring for r in rows]}, verdict, checks,
                       {"converse_refuted_by": refutations})


__all__ = [
    "AxiomReport",
    "audit_equivalences",
    "audit_semirings",
    "check_pes_instance",
    "check_positivity_instance",
    "check_relative_positivity_instance",
    "positivity_sides",
    "random_deterministic",
    "random_dilation",
    "random_kernel",
    "Status",
]
