"""Deterministic text and JSON rendering of check results."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable, Optional

from .errors import UsageError
from .verdict import Status, Verdict, jsonable

SCHEMA = 1


@dataclass
class Entry:
    """One named line of a report: a verdict, plain data, or both."""

    name: str
    verdict: Optional[Verdict] = None
    data: dict = field(default_factory=dict)
    text: str = ""  # preformatted body for text output, e.g. a kernel table

    @property
    def failed(self) -> bool:
        return self.verdict is not None and self.verdict.failed

    def to_json(self) -> dict:
        doc = {"name": self.name}
        if self.verdict is not None:
            doc.update(self.verdict.to_json())
        doc.update(jsonable(self.data))
        return doc


def _render_witness(witness: Any) -> str:
    def compact(v):
        if isinstance(v, (dict, list, tuple)):
            return json.dumps(jsonable(v), ensure_ascii=False, sort_keys=True, separators=(",", ":"))
        return str(v)

    if isinstance(witness, dict):
        return ", ".join(f"{k}={compact(v)}" for k, v in witness.items())
    return compact(witness)


def _text_lines(item) -> list[str]:
    if hasattr(item, "case_id"):
        lines = [f"{item.case_id}  {'MATCH' if item.match else 'MISMATCH'}"]
        lines += [f"  {m}" for m in item.mismatches]
        return lines
    if isinstance(item, Entry):
        if item.verdict is None:
            head = [item.name]
        else:
            head = [f"{item.name}  {item.verdict.summary()}"]
        body = [f"  {line}" for line in item.text.splitlines()] if item.text else []
        v = item.verdict
        if v is not None and v.status is Status.FAILS:
            body.append(f"  witness: {_render_witness(v.witness)}")
            body += [f"  {t}" for t in v.trace]
        elif v is not None and v.status is Status.UNKNOWN:
            body += [f"  {t}" for t in v.trace]
        return head + body
    return [str(item)]


def render_report(results: Iterable, fmt: str = "text") -> str:
    results = list(results)
    if fmt == "json":
        doc = {"schema": SCHEMA, "results": [jsonable(r) for r in results]}
        return json.dumps(doc, ensure_ascii=False, sort_keys=True, indent=2)
    if fmt != "text":
        raise UsageError(f"unknown format {fmt!r}")
    lines = []
    for item in results:
        lines.extend(_text_lines(item))
    return "\n".join(lines)
