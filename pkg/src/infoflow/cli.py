"""Command-line entry point.

Exit codes: 0 when every check holds (or every case matches), 1 when a
property fails or a case mismatches, 2 on usage or I/O errors.
"""

from __future__ import annotations

import argparse
import sys
from typing import Optional

from . import axioms, dilation as dil, kernel as kn
from .cases import CASES, run_all, run_case
from .errors import InfoflowError, UsageError
from .report import Entry, render_report
from .semiring import (
    all_builtin,
    check_causality_criterion,
    check_entire,
    check_semiring_axioms,
    check_zerosumfree,
    get_semiring,
)
from .verdict import Strategy

SEMIRING_PROPERTIES = {
    "axioms": check_semiring_axioms,
    "zerosumfree": check_zerosumfree,
    "entire": check_entire,
    "causality": check_causality_criterion,
}
DEFAULT_RANDOM_DILATIONS = 50
DEFAULT_AUDIT_SAMPLES = 500


def _positive(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return value


def _nonnegative(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return value


def _seed(text: str) -> int:
    value = int(text)
    if not 0 <= value < 2 ** 64:
        raise argparse.ArgumentTypeError("seed must be a 64-bit unsigned integer")
    return value


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("text", "json"), default="text")
    common.add_argument("--max-env", type=_positive, default=3, help="largest environment searched")
    common.add_argument("--seed", type=_seed, default=None, help="seed for sampled searches")
    common.add_argument("--samples", type=_nonnegative, default=None,
                        help="random samples (semiring sampling: 10000; random dilations: 50; audits: 500)")
    common.add_argument("--semiring", default=None, help="builtin name or JSON table file")

    parser = _Parser(prog="infoflow", description="Exact checks of information-flow axioms for semiring-valued kernels.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sr = sub.add_parser("semiring", help="semiring-level properties").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    p = sr.add_parser("check", parents=[common])
    p.add_argument("selector", help="builtin name or JSON table file")
    p.add_argument("--property", choices=tuple(SEMIRING_PROPERTIES) + ("all",), default="all")
    p.add_argument("--strategy", choices=("auto", "sampled"), default="auto")
    sr.add_parser("list", parents=[common])

    k = sub.add_parser("kernel", help="kernel operations").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    for name in ("compose", "tensor"):
        p = k.add_parser(name, parents=[common])
        p.add_argument("--f", required=True)
        p.add_argument("--g", required=True)
    p = k.add_parser("marginal", parents=[common])
    p.add_argument("--f", required=True)
    p.add_argument("--keep", type=int, nargs="+", required=True, help="codomain factor indices to keep")
    p = k.add_parser("deterministic", parents=[common])
    p.add_argument("--f", required=True)
    p = k.add_parser("conditional", parents=[common])
    p.add_argument("--f", required=True)
    p.add_argument("--split", type=_positive, default=1, help="number of leading factors conditioned on")

    a = sub.add_parser("axiom", help="axiom instances").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    p = a.add_parser("positivity", parents=[common])
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p = a.add_parser("pes", parents=[common])
    p.add_argument("--h1", required=True)
    p.add_argument("--h2", required=True)
    p.add_argument("--p", required=True)
    p.add_argument("--pi", default=None, help="a specific dilation of p to test")
    p = a.add_parser("relpos", parents=[common])
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--p", required=True)
    p = a.add_parser("dmi", parents=[common])
    p.add_argument("--pi", required=True, help="dilation A -> X⊗E")
    p.add_argument("--x-rank", type=_positive, default=1)
    p = a.add_parser("audit", parents=[common])
    p.add_argument("--size-bound", type=_positive, default=3)
    p.add_argument("--audit", action="append", default=None, metavar="SEMIRING",
                   help="semiring for the equivalence audit (repeatable; default nonneg-rational and rational)")

    d = sub.add_parser("dilation", help="dilations").add_subparsers(
        dest="action", required=True, parser_class=_Parser)
    p = d.add_parser("verify", parents=[common])
    p.add_argument("--pi", required=True)
    p.add_argument("--p", required=True)
    p = d.add_parser("initial", parents=[common])
    p.add_argument("--p", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pi", help="candidate dilation")
    group.add_argument("--kind", choices=("bloom", "ioc", "output_copy"))
    p = d.add_parser("noncreative", parents=[common])
    p.add_argument("--p", required=True)
    p = d.add_parser("broadcasting", parents=[common])
    p.add_argument("--size", type=_positive, required=True)
    p = d.add_parser("dileq", parents=[common])
    p.add_argument("--f", required=True)
    p.add_argument("--g", required=True)
    p.add_argument("--p", required=True)

    p = sub.add_parser("repro", parents=[common], help="reproduce the worked examples")
    p.add_argument("case", nargs="?", choices=tuple(CASES))
    p.add_argument("--all", action="store_true")
    p.add_argument("--tag", default=None)
    return parser


# -- commands ------------------------------------------------------------------------

def _load(args, path):
    semiring = get_semiring(args.semiring) if args.semiring else None
    return kn.load_kernel(path, semiring)


def _random_count(args):
    return DEFAULT_RANDOM_DILATIONS if args.samples is None else args.samples


def _seed_or_zero(args):
    return 0 if args.seed is None else args.seed


def _kernel_entry(name, k) -> Entry:
    return Entry(name, data={"kernel": k.to_json()}, text=k.table())


def cmd_semiring(args):
    if args.action == "list":
        return [Entry(s.name, data={"kind": s.kind, "finite": s.finite}) for s in all_builtin()]
    sr = get_semiring(args.selector)
    if args.strategy == "sampled":
        if args.seed is None:
            raise UsageError("--strategy sampled needs --seed")
        strategy = Strategy.sampled(args.seed, 10_000 if args.samples is None else args.samples)
    else:
        strategy = Strategy()
    props = list(SEMIRING_PROPERTIES) if args.property == "all" else [args.property]
    return [Entry(f"{sr.name} {prop}", SEMIRING_PROPERTIES[prop](sr, strategy)) for prop in props]


def cmd_kernel(args):
    f = _load(args, args.f)
    if args.action == "compose":
        return [_kernel_entry("g∘f", kn.compose(_load(args, args.g), f))]
    if args.action == "tensor":
        return [_kernel_entry("f⊗g", kn.tensor(f, _load(args, args.g)))]
    if args.action == "marginal":
        return [_kernel_entry(f"marginal {args.keep}", kn.marginalize(f, args.keep))]
    if args.action == "deterministic":
        return [Entry("deterministic", kn.is_deterministic(f))]
    return [_kernel_entry("conditional", kn.conditional(f, args.split))]


def _report_entries(report: axioms.AxiomReport) -> list[Entry]:
    entries = [Entry(report.axiom, report.verdict, {"stats": report.stats} if report.stats else {})]
    for name, v in report.cross_checks:
        entries.append(Entry(f"  {name}", v, {"cross_check_of": report.axiom}))
    return entries


def cmd_axiom(args):
    if args.action == "positivity":
        return _report_entries(axioms.check_positivity_instance(_load(args, args.f), _load(args, args.g)))
    if args.action == "pes":
        pi = _load(args, args.pi) if args.pi else None
        report = axioms.check_pes_instance(_load(args, args.h1), _load(args, args.h2), _load(args, args.p),
                                           args.max_env, pi, _random_count(args), _seed_or_zero(args))
        return _report_entries(report)
    if args.action == "relpos":
        report = axioms.check_relative_positivity_instance(_load(args, args.f), _load(args, args.g),
                                                           _load(args, args.p))
        return _report_entries(report)
    if args.action == "dmi":
        total = _load(args, args.pi)
        base = kn.marginalize(total, range(args.x_rank))
        return [Entry("dmi", dil.check_dmi_instance(dil.Dilation(base, total)))]
    entries = _report_entries(axioms.audit_semirings(all_builtin()))
    samples = DEFAULT_AUDIT_SAMPLES if args.samples is None else args.samples
    for name in args.audit or ["nonneg-rational", "rational"]:
        report = axioms.audit_equivalences(get_semiring(name), args.size_bound, _seed_or_zero(args), samples)
        entries += _report_entries(report)
        entries[-len(report.cross_checks) - 1].name = f"{report.axiom} {name}"
    return entries


def cmd_dilation(args):
    if args.action == "broadcasting":
        sr = get_semiring(args.semiring or "nonneg-rational")
        res = dil.find_broadcasting(sr, kn.FinSet.range(args.size))
        data = {"solutions": [b.to_json() for b in res.solutions], "dimension": res.dimension,
                "complete": res.complete}
        return [Entry("broadcasting unique", res.verdict, data)]
    p = _load(args, args.p)
    if args.action == "verify":
        return [Entry("dilation", dil.verify_dilation(_load(args, args.pi), p))]
    if args.action == "initial":
        cand = dil.make_dilation(args.kind, p) if args.kind else dil.Dilation(p, _load(args, args.pi), "given")
        v = dil.verify_initial(cand, args.max_env, _random_count(args), _seed_or_zero(args))
        return [Entry(f"initial {cand.name or 'dilation'}", v)]
    if args.action == "noncreative":
        return [Entry("noncreative", dil.is_noncreative(p, args.max_env, _random_count(args), _seed_or_zero(args)))]
    v = dil.dilational_equal(_load(args, args.f), _load(args, args.g), p, args.max_env,
                             _random_count(args), _seed_or_zero(args))
    return [Entry("dilational equality", v)]


def cmd_repro(args):
    if args.all or args.tag:
        if args.case:
            raise UsageError("give a case or --all, not both")
        return run_all(args.tag)
    if not args.case:
        raise UsageError("repro needs a case id or --all")
    return [run_case(args.case)]


COMMANDS = {"semiring": cmd_semiring, "kernel": cmd_kernel, "axiom": cmd_axiom,
            "dilation": cmd_dilation, "repro": cmd_repro}


def _failed(results) -> bool:
    for r in results:
        if hasattr(r, "match") and not r.match:
            return True
        if isinstance(r, Entry) and r.failed:
            return True
    return False


def main(argv: Optional[list] = None) -> int:
    fmt = "text"
    try:
        args = build_parser().parse_args(argv)
        fmt = getattr(args, "format", "text")
        results = COMMANDS[args.command](args)
        print(render_report(results, fmt))
        return 1 if _failed(results) else 0
    except (InfoflowError, OSError) as exc:
        print(f"infoflow: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
