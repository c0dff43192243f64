"""JSON, CSV and plain-table renderings of sieve reports.

Rationals are written as ``"num/den"`` strings and integers as plain
integers, so a JSON report can be re-read without losing exactness.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from typing import Any

from .arith import format_rat
from .sieve import SieveReport, Verdict


def jsonable(obj: Any) -> Any:
    if isinstance(obj, Fraction):
        return obj.numerator if obj.denominator == 1 else format_rat(obj)
    if isinstance(obj, dict):
        return {str(k): jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [jsonable(v) for v in obj]
    return obj


def degree_key(kind: str) -> str:
    return "c1_squared" if kind == "surface" else "c1_cubed"


def verdict_dict(v: Verdict, kind: str = "threefold") -> dict:
    c = v.candidate
    return {
        "q": c.q,
        "J": c.J,
        degree_key(kind): c.degree,
        "k": c.k,
        "status": v.status,
        "stage": v.stage,
        "witness": jsonable(v.witness),
    }


def report_dict(report: SieveReport) -> dict:
    return {
        "kind": report.kind,
        "range": {"q_min": report.q_min, "q_max": report.q_max},
        "stages": list(report.stages),
        "verdicts": [verdict_dict(v, report.kind) for v in report.verdicts],
        "survivors": list(report.survivors),
        "no_candidates": list(report.no_candidates),
        "discrepancies": jsonable(report.discrepancies),
    }


def dump_json(data: Any) -> str:
    return json.dumps(jsonable(data), indent=2, ensure_ascii=False) + "\n"


def witness_summary(w: dict) -> str:
    stage = w.get("stage")
    if stage == "budget":
        return f"{format_rat(w['lhs'])} > {format_rat(w['rhs'])}"
    if stage == "basket-empty":
        return f"cheapest {format_rat(w['cheapest'])} > budget {format_rat(w['budget'])}"
    if stage == "rr":
        parts = []
        for e in w["baskets"]:
            if "uniform_s" in e:
                parts.append(f"{{{e['basket']}}} s={e['uniform_s'][0]}")
            else:
                parts.append(f"{{{e['basket']}}} per-assignment({len(e['failures'])})")
        return "; ".join(parts)
    if stage == "degree-bound":
        return f"degree {w['degree']} vs ceiling {w['ceiling']}"
    if stage == "divisibility":
        return ", ".join(k for k, ok in w.items() if k != "stage" and not ok) + " violated"
    bits = []
    if "budget" in w:
        bits.append(f"{format_rat(w['budget']['lhs'])} <= {format_rat(w['budget']['rhs'])}")
    if "basket" in w:
        bits.append(f"{w['basket']['count']} baskets")
    if "rr" in w:
        bits.append(f"{{{w['rr']['basket']}}} x={tuple(w['rr']['assignment'])}")
    return "; ".join(bits)


def format_table(rows: list[dict]) -> str:
    if not rows:
        return "(no rows)\n"
    cols = list(rows[0])
    cells = [[str(r.get(c, "")) for c in cols] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(cols)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(cols, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    lines += ["  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip() for row in cells]
    return "\n".join(lines) + "\n"


def _rows(report: SieveReport) -> list[dict]:
    key = degree_key(report.kind)
    return [
        {
            "q": v.candidate.q,
            "J": v.candidate.J,
            key: v.candidate.degree,
            "k": v.candidate.k,
            "status": v.status,
            "stage": v.stage or "-",
            "witness": witness_summary(v.witness),
        }
        for v in report.verdicts
    ]


def render_table(report: SieveReport) -> str:
    out = [f"{report.kind} sieve, q in [{report.q_min}, {report.q_max}], stages: {', '.join(report.stages)}", ""]
    out.append(format_table(_rows(report)))
    out.append("survivors: " + ", ".join(map(str, report.survivors)))
    if report.no_candidates:
        out.append("no candidates: " + ", ".join(map(str, report.no_candidates)))
    for d in report.discrepancies:
        out.append(f"DISCREPANCY q={d['q']}: {d['issue']}, expected {d['expected']}")
    return "\n".join(out) + "\n"


def render_csv(report: SieveReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["q", "J", degree_key(report.kind), "k", "status", "stage", "witness"])
    for v in report.verdicts:
        c = v.candidate
        writer.writerow([c.q, c.J, c.degree, c.k, v.status, v.stage or "",
                         json.dumps(jsonable(v.witness), separators=(",", ":"))])
    return buf.getvalue()


def render_report(report: SieveReport, fmt: str) -> str:
    if fmt == "json":
        return dump_json(report_dict(report))
    if fmt == "csv":
        return render_csv(report)
    return render_table(report)
