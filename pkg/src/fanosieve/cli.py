"""Command-line front end.

    fano-sieve sieve threefold --q-min 23 --q-max 66 --stages all --format json
    fano-sieve sieve surface --q-min 3 --q-max 9
    fano-sieve wps enumerate --gorenstein
    fano-sieve rr check --q 40 --deg 40 --basket 5:1,8:1 --trace 5
    fano-sieve arith phi-set --bound 20 --exclude 60
    fano-sieve basket enumerate --J 40 --budget 14

Exit status: 0 on success, 1 when a sieve disagrees with the known
eliminations, 2 on usage errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from pathlib import Path

from . import _kernel
from .arith import as_rat, euler_phi, format_rat, phi_index_set
from .basket import Basket, basket_cost, enumerate_baskets, lcm_index
from .report import dump_json, format_table, jsonable, render_report
from .rr import rr_admissible, rr_lhs
from .sieve import STAGES, SURFACE_STAGES, normalize_stages, surface_sieve, threefold_sieve
from .wps import enumerate_gorenstein_wps3, enumerate_well_formed_wps3, wps_row

EXIT_OK, EXIT_DISCREPANCY, EXIT_USAGE = 0, 1, 2
FORMATS = ("table", "json", "csv")


@dataclass
class RunConfig:
    command: str
    fmt: str = "table"
    output: Path | None = None
    q_min: int | None = None
    q_max: int | None = None
    stages: tuple[str, ...] = ()
    workers: int | None = None
    backend: str | None = None
    q: int | None = None
    degree: Fraction | None = None
    basket: Basket | None = None
    trace: list[int] = field(default_factory=list)
    gorenstein: bool = False
    max_sum: int | None = None
    bound: int | None = None
    exclude: tuple[int, ...] = ()
    J: int | None = None
    budget: Fraction | None = None


def _rational(text: str) -> Fraction:
    try:
        return as_rat(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise argparse.ArgumentTypeError(f"not an exact rational: {text!r}") from exc


def _basket(text: str) -> Basket:
    try:
        return Basket.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def _int_list(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fano-sieve", description=__doc__.split("\n\n")[0])
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=FORMATS, default="table")
    common.add_argument("--output", type=Path, help="write here instead of stdout")
    groups = parser.add_subparsers(dest="group", required=True)

    sieve = groups.add_parser("sieve", help="run an index sieve").add_subparsers(dest="action", required=True)
    for name, stages in (("threefold", STAGES), ("surface", SURFACE_STAGES)):
        p = sieve.add_parser(name, parents=[common])
        p.add_argument("--q-min", type=int, default=3)
        p.add_argument("--q-max", type=int, default=66 if name == "threefold" else 9)
        p.add_argument("--stages", default="all", help="'all' or a comma list of " + ", ".join(stages))
        p.add_argument("--workers", type=int, help="worker processes (default: $FANO_SIEVE_THREADS or 1; 0 = auto)")
        if name == "threefold":
            p.add_argument("--backend", choices=_kernel.BACKENDS)

    wps = groups.add_parser("wps", help="weighted projective spaces").add_subparsers(dest="action", required=True)
    p = wps.add_parser("enumerate", parents=[common])
    p.add_argument("--gorenstein", action="store_true", help="the Gorenstein spaces (default)")
    p.add_argument("--max-sum", type=int, help="instead list every well-formed space with weight sum <= N")

    rr = groups.add_parser("rr", help="Riemann-Roch integrality test").add_subparsers(dest="action", required=True)
    p = rr.add_parser("check", parents=[common])
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--deg", type=_rational, required=True, help="anti-canonical degree c1^3")
    p.add_argument("--basket", type=_basket, required=True, help="r:d,... or r:d:x,... to fix residues")
    p.add_argument("--trace", type=int, action="append", default=[], metavar="S",
                   help="print the exact left-hand side at this s (repeatable)")
    p.add_argument("--backend", choices=_kernel.BACKENDS)

    arith = groups.add_parser("arith", help="arithmetic helpers").add_subparsers(dest="action", required=True)
    p = arith.add_parser("phi-set", parents=[common])
    p.add_argument("--bound", type=int, default=20)
    p.add_argument("--exclude", type=_int_list, default=())

    basket = groups.add_parser("basket", help="basket enumeration").add_subparsers(dest="action", required=True)
    p = basket.add_parser("enumerate", parents=[common])
    p.add_argument("--J", type=int, required=True)
    p.add_argument("--budget", type=_rational, required=True)
    return parser


def parse_config(argv: list[str], parser: argparse.ArgumentParser | None = None) -> RunConfig:
    """Parse and validate; any problem exits with status 2 before computing."""
    parser = parser or build_parser()
    ns = parser.parse_args(argv)
    cfg = RunConfig(command=f"{ns.group} {ns.action}", fmt=ns.fmt, output=ns.output)
    try:
        if ns.group == "sieve":
            cfg.q_min, cfg.q_max, cfg.workers = ns.q_min, ns.q_max, ns.workers
            cfg.backend = getattr(ns, "backend", None)
            allowed = STAGES if ns.action == "threefold" else SURFACE_STAGES
            cfg.stages = normalize_stages(ns.stages, allowed)
            if not 3 <= cfg.q_min <= cfg.q_max:
                raise ValueError("need 3 <= --q-min <= --q-max")
            if cfg.workers is not None and cfg.workers < 0:
                raise ValueError("--workers must be >= 0")
        elif ns.group == "wps":
            cfg.gorenstein, cfg.max_sum = ns.gorenstein or ns.max_sum is None, ns.max_sum
            if ns.gorenstein and ns.max_sum is not None:
                raise ValueError("--gorenstein and --max-sum are exclusive")
            if cfg.max_sum is not None and cfg.max_sum < 4:
                raise ValueError("--max-sum must be >= 4")
        elif ns.group == "rr":
            cfg.q, cfg.degree, cfg.basket, cfg.trace, cfg.backend = ns.q, ns.deg, ns.basket, ns.trace, ns.backend
            if cfg.q < 3:
                raise ValueError("--q must be >= 3")
            if cfg.degree <= 0:
                raise ValueError("--deg must be positive")
            if any(c.x is not None for c in cfg.basket) and not cfg.basket.has_residues:
                raise ValueError("give residues for every curve record or for none")
            if any(not 0 < s < cfg.q for s in cfg.trace):
                raise ValueError("--trace values must satisfy 0 < s < q")
        elif ns.group == "arith":
            cfg.bound, cfg.exclude = ns.bound, ns.exclude
            if cfg.bound < 1:
                raise ValueError("--bound must be >= 1")
        elif ns.group == "basket":
            cfg.J, cfg.budget = ns.J, ns.budget
            if cfg.J < 1:
                raise ValueError("--J must be >= 1")
    except ValueError as exc:
        parser.error(str(exc))
    return cfg


def _emit(text: str, cfg: RunConfig) -> None:
    if cfg.output is not None:
        cfg.output.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _rows_output(rows: list[dict], cfg: RunConfig, extra: dict | None = None) -> str:
    if cfg.fmt == "json":
        return dump_json({**(extra or {}), "rows": rows})
    if cfg.fmt == "csv":
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(rows[0]) if rows else [], lineterminator="\n")
        writer.writeheader()
        writer.writerows({k: v if not isinstance(v, list) else " ".join(map(str, v)) for k, v in r.items()}
                         for r in rows)
        return buf.getvalue()
    header = "".join(f"{k}: {v}\n" for k, v in (extra or {}).items())
    return header + format_table([{k: v if not isinstance(v, list) else ",".join(map(str, v))
                                   for k, v in r.items()} for r in rows])


def _run_sieve(cfg: RunConfig) -> int:
    if cfg.command == "sieve threefold":
        report = threefold_sieve(cfg.q_min, cfg.q_max, cfg.stages, cfg.workers, cfg.backend)
    else:
        report = surface_sieve(cfg.q_min, cfg.q_max, cfg.stages, cfg.workers)
    _emit(render_report(report, cfg.fmt), cfg)
    for d in report.discrepancies:
        print(f"fano-sieve: discrepancy at q={d['q']}: {d['issue']}, expected {d['expected']}", file=sys.stderr)
    return EXIT_DISCREPANCY if report.discrepancies else EXIT_OK


def _run_wps(cfg: RunConfig) -> int:
    if cfg.gorenstein:
        spaces = enumerate_gorenstein_wps3()
    else:
        spaces = enumerate_well_formed_wps3(cfg.max_sum)
    rows = [wps_row(w) for w in spaces]
    _emit(_rows_output(rows, cfg, {"count": len(rows)}), cfg)
    return EXIT_OK


def _trace_assignments(basket: Basket) -> list[tuple[int, ...]]:
    if basket.has_residues and len(basket):
        return [tuple(c.x for c in basket)]
    return list(product(*(range(c.r) for c in basket)))


def _run_rr(cfg: RunConfig) -> int:
    basket = cfg.basket
    result: dict = {"q": cfg.q, "c1_cubed": cfg.degree, "basket": str(basket.without_residues())}
    if basket.has_residues and len(basket):
        failing = [s for s in range(1, cfg.q) if rr_lhs(cfg.q, cfg.degree, basket, s).denominator != 1]
        result["assignment"] = [c.x for c in basket]
        result["verdict"] = "integral" if not failing else "not integral"
        result["failing_s"] = failing
    else:
        check = rr_admissible(cfg.q, cfg.degree, basket, cfg.backend)
        result["verdict"] = "admissible" if check.admissible else "inadmissible"
        result["assignment_space"] = check.assignment_space
        if check.admissible:
            result["assignment"] = list(check.assignment)
        elif check.uniform_s:
            result["uniform_s"] = list(check.uniform_s)
        else:
            result["failures"] = [[list(a), s] for a, s in check.failures]
    bare = basket.without_residues()
    if cfg.trace:
        result["trace"] = {
            str(s): [[list(xs), rr_lhs(cfg.q, cfg.degree, bare.with_residues(xs), s)]
                     for xs in _trace_assignments(basket)]
            for s in cfg.trace
        }

    if cfg.fmt == "json":
        _emit(dump_json(result), cfg)
        return EXIT_OK
    if cfg.fmt == "csv":
        rows = [{"key": k, "value": v} for k, v in jsonable(result).items() if k != "trace"]
        for s, entries in jsonable(result.get("trace", {})).items():
            rows += [{"key": f"trace s={s} x={' '.join(map(str, xs))}", "value": val} for xs, val in entries]
        _emit(_rows_output(rows, cfg), cfg)
        return EXIT_OK

    lines = [
        f"q = {cfg.q}, c1^3 = {format_rat(cfg.degree)}, basket = {{{result['basket']}}}",
        f"verdict: {result['verdict']}",
    ]
    if "assignment_space" in result:
        lines.append(f"residue assignments: {result['assignment_space']}")
    if "assignment" in result:
        lines.append("assignment: " + ", ".join(map(str, result["assignment"])))
    if "failing_s" in result:
        lines.append("failing s: " + (", ".join(map(str, result["failing_s"])) or "none"))
    if "uniform_s" in result:
        lines.append("uniform failing s (every assignment fails): " + ", ".join(map(str, result["uniform_s"])))
    for xs, s in result.get("failures", []):
        lines.append(f"  x = {tuple(xs)}: fails at s = {s}")
    for s, entries in result.get("trace", {}).items():
        lines.append(f"trace s = {s}:")
        lines += [f"  x = {tuple(xs)}: {format_rat(v)}" for xs, v in entries]
    _emit("\n".join(lines) + "\n", cfg)
    return EXIT_OK


def _run_phi(cfg: RunConfig) -> int:
    members = phi_index_set(cfg.bound, cfg.exclude)
    rows = [{"m": m, "phi": euler_phi(m)} for m in members]
    extra = {"bound": cfg.bound, "exclude": list(cfg.exclude), "count": len(members), "max": max(members)}
    _emit(_rows_output(rows, cfg, extra), cfg)
    return EXIT_OK


def _run_basket(cfg: RunConfig) -> int:
    rows = [{"basket": str(b), "cost": format_rat(basket_cost(b)), "lcm": lcm_index(b)}
            for b in enumerate_baskets(cfg.J, cfg.budget)]
    _emit(_rows_output(rows, cfg, {"J": cfg.J, "budget": format_rat(cfg.budget), "count": len(rows)}), cfg)
    return EXIT_OK


HANDLERS = {
    "sieve threefold": _run_sieve,
    "sieve surface": _run_sieve,
    "wps enumerate": _run_wps,
    "rr check": _run_rr,
    "arith phi-set": _run_phi,
    "basket enumerate": _run_basket,
}


def run(argv: list[str]) -> int:
    try:
        cfg = parse_config(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return HANDLERS[cfg.command](cfg)


def main() -> None:
    sys.exit(run(sys.argv[1:]))


if __name__ == "__main__":
    main()
