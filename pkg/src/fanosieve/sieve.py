"""Candidate enumeration and the elimination pipeline.

A threefold candidate is ``(q, J, c1^3, k)`` with ``c1^3 = q (q/J) k``.  It is
pushed through the stages in order:

    divisibility -> degree-bound -> budget -> basket -> rr

The first two are the candidate invariants; :func:`enumerate_candidates`
only produces candidates satisfying them, so in a sieve run they never
eliminate anything, but :func:`evaluate_threefold` applies them to any
hand-built candidate.  An index ``q`` survives when one of its candidates
passes every enabled stage.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import partial
from itertools import combinations_with_replacement, groupby, product
from typing import Iterable

from .arith import j_budget_term, km_budget_3fold, km_budget_surface
from .basket import Basket, basket_sequence, enumerate_baskets
from .rr import rr_admissible, rr_lhs
from .wps import enumerate_gorenstein_wps3, fano_index

STAGES = ("divisibility", "degree-bound", "budget", "basket", "rr")
SURFACE_STAGES = ("divisibility", "degree-bound", "budget")
INVARIANT_STAGES = ("divisibility", "degree-bound")

# degree 72 occurs only for P(1,1,1,3) and P(1,1,4,6)
MAX_DEGREE = 72
DEGREE_72_INDICES = (6, 12)
SURFACE_MAX_DEGREE = 9

# indices known to be eliminated, used to flag disagreements
KNOWN_BUDGET_SURVIVORS_ABOVE_22 = (24, 26, 28, 30, 36, 40, 42)
KNOWN_BUDGET_ELIMINATED_EXTRA = (17, 19)
KNOWN_RR_ELIMINATED = (26, 28, 36, 40)
KNOWN_SURFACE_MAX_INDEX = 6


@dataclass(frozen=True, order=True)
class Candidate:
    q: int
    J: int
    degree: int
    k: int

    @property
    def c1cubed(self) -> int:
        return self.degree


@dataclass(frozen=True)
class Verdict:
    candidate: Candidate
    status: str
    stage: str | None
    witness: dict

    @property
    def survived(self) -> bool:
        return self.status == "survived"


@dataclass
class SieveReport:
    kind: str
    q_min: int
    q_max: int
    stages: tuple[str, ...]
    verdicts: list[Verdict]
    survivors: list[int]
    no_candidates: list[int] = field(default_factory=list)
    discrepancies: list[dict] = field(default_factory=list)

    def verdicts_for(self, q: int) -> list[Verdict]:
        return [v for v in self.verdicts if v.candidate.q == q]


def normalize_stages(stages: Iterable[str] | str | None, allowed: tuple[str, ...] = STAGES) -> tuple[str, ...]:
    """Resolve a stage selection; ``"all"`` or None means every stage.

    The candidate invariants are always on, and ``rr`` needs ``basket``.
    """
    if stages is None or stages == "all":
        return allowed
    if isinstance(stages, str):
        stages = [s.strip() for s in stages.split(",") if s.strip()]
    chosen = set(stages)
    if "all" in chosen:
        return allowed
    unknown = chosen - set(allowed)
    if unknown:
        raise ValueError(f"unknown stage(s) {sorted(unknown)}; choose from {', '.join(allowed)}")
    chosen |= set(INVARIANT_STAGES)
    if "rr" in chosen:
        chosen.add("basket")
    return tuple(s for s in allowed if s in chosen)


def _degree_ceiling(q: int) -> int:
    return MAX_DEGREE if q in DEGREE_72_INDICES else MAX_DEGREE - 2


def enumerate_candidates(q: int) -> list[Candidate]:
    """All ``(J, c1^3, k)`` with ``J | q``, ``c1^3 = q (q/J) k`` even and within the degree ceiling.

    Sorted by ``J`` descending, then degree ascending.
    """
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    ceiling = _degree_ceiling(q)
    out = []
    for J in range(q, 0, -1):
        if q % J:
            continue
        step = q * (q // J)
        for k in range(1, ceiling // step + 1):
            if (step * k) % 2 == 0:
                out.append(Candidate(q, J, step * k, k))
    return out


def enumerate_surface_candidates(q: int) -> list[Candidate]:
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    out = []
    for J in range(q, 0, -1):
        if q % J == 0:
            step = q * (q // J)
            out.extend(Candidate(q, J, step * k, k) for k in range(1, SURFACE_MAX_DEGREE // step + 1))
    return out


def _eliminated(c: Candidate, stage: str, **data) -> Verdict:
    return Verdict(c, "eliminated", stage, {"stage": stage, **data})


def _check_divisibility(c: Candidate) -> Verdict | None:
    J_divides_q = c.J >= 1 and c.q % c.J == 0
    q2_divides = (c.J * c.degree) % (c.q * c.q) == 0
    k_matches = J_divides_q and c.degree == c.q * (c.q // c.J) * c.k
    if J_divides_q and q2_divides and k_matches:
        return None
    return _eliminated(c, "divisibility", J_divides_q=J_divides_q, q2_divides_J_degree=q2_divides,
                       degree_matches_k=k_matches)


def budget_filter(c: Candidate) -> Verdict:
    """Compare the prime-power term of ``J`` with ``24 - c1^3/4``."""
    lhs, rhs = j_budget_term(c.J), km_budget_3fold(c.degree)
    if lhs > rhs:
        return _eliminated(c, "budget", lhs=lhs, rhs=rhs)
    return Verdict(c, "survived", None, {"stage": "survived", "budget": {"lhs": lhs, "rhs": rhs}})


def _rr_entry(check) -> dict:
    entry = {"basket": str(check.basket), "assignment_space": check.assignment_space}
    if check.uniform_s:
        entry["uniform_s"] = list(check.uniform_s)
    else:
        entry["failures"] = [[list(a), s] for a, s in check.failures]
    return entry


def evaluate_threefold(c: Candidate, stages: Iterable[str] | str | None = None,
                       backend: str | None = None) -> Verdict:
    stages = normalize_stages(stages)
    passed: dict = {"stage": "survived"}

    if "divisibility" in stages:
        bad = _check_divisibility(c)
        if bad:
            return bad
    if "degree-bound" in stages:
        ceiling = _degree_ceiling(c.q)
        if not (0 < c.degree <= ceiling and c.degree % 2 == 0):
            return _eliminated(c, "degree-bound", degree=c.degree, ceiling=ceiling, even=c.degree % 2 == 0)

    budget = km_budget_3fold(c.degree)
    if "budget" in stages:
        v = budget_filter(c)
        if not v.survived:
            return v
        passed["budget"] = v.witness["budget"]

    if "basket" not in stages:
        return Verdict(c, "survived", None, passed)
    baskets = basket_sequence(c.J, budget, backend)
    if not baskets:
        return _eliminated(c, "basket-empty", J=c.J, budget=budget, cheapest=j_budget_term(c.J))
    passed["basket"] = {"count": len(baskets)}

    if "rr" not in stages:
        return Verdict(c, "survived", None, passed)
    failed = []
    for i, b in enumerate(baskets):
        check = rr_admissible(c.q, c.degree, b, backend)
        if check.admissible:
            passed["rr"] = {"basket": str(b), "assignment": list(check.assignment), "baskets_checked": i + 1}
            return Verdict(c, "survived", None, passed)
        failed.append(_rr_entry(check))
    return _eliminated(c, "rr", budget=budget, baskets=failed)


def evaluate_surface(c: Candidate, stages: Iterable[str] | str | None = None) -> Verdict:
    """Point-basket budget test ``min cost <= 12 - (5/4) c1^2`` for a surface candidate.

    The cheapest point basket whose lcm is divisible by ``J`` has one point
    per prime power of ``J``, so its cost is the budget term of ``J``.
    """
    stages = normalize_stages(stages, SURFACE_STAGES)
    if "divisibility" in stages:
        bad = _check_divisibility(c)
        if bad:
            return bad
    if "degree-bound" in stages and not 0 < c.degree <= SURFACE_MAX_DEGREE:
        return _eliminated(c, "degree-bound", degree=c.degree, ceiling=SURFACE_MAX_DEGREE)
    lhs, rhs = j_budget_term(c.J), km_budget_surface(c.degree)
    if "budget" in stages and lhs > rhs:
        return _eliminated(c, "budget", lhs=lhs, rhs=rhs)
    return Verdict(c, "survived", None, {"stage": "survived", "budget": {"lhs": lhs, "rhs": rhs}})


def worker_count(workers: int | None = None) -> int:
    if workers is None:
        workers = int(os.environ.get("FANO_SIEVE_THREADS", "1") or "1")
    if workers < 0:
        raise ValueError(f"worker count must be >= 0, got {workers}")
    return workers or os.cpu_count() or 1


def _run(fn, candidates: list[Candidate], workers: int) -> list[Verdict]:
    if workers <= 1 or len(candidates) <= 1:
        return [fn(c) for c in candidates]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(fn, candidates, chunksize=1))


def _check_range(q_min: int, q_max: int) -> None:
    if not 3 <= q_min <= q_max:
        raise ValueError(f"need 3 <= q_min <= q_max, got q_min={q_min}, q_max={q_max}")


def _survivors(verdicts: list[Verdict]) -> list[int]:
    return sorted({v.candidate.q for v in verdicts if v.survived})


def threefold_sieve(q_min: int, q_max: int, stages: Iterable[str] | str | None = None,
                    workers: int | None = None, backend: str | None = None) -> SieveReport:
    _check_range(q_min, q_max)
    stages = normalize_stages(stages)
    candidates = []
    empty = []
    for q in range(q_min, q_max + 1):
        found = enumerate_candidates(q)
        candidates.extend(found)
        if not found:
            empty.append(q)
    verdicts = _run(partial(evaluate_threefold, stages=stages, backend=backend), candidates, worker_count(workers))
    report = SieveReport("threefold", q_min, q_max, stages, verdicts, _survivors(verdicts), empty)
    report.discrepancies = threefold_discrepancies(report)
    return report


def surface_sieve(q_min: int, q_max: int, stages: Iterable[str] | str | None = None,
                  workers: int | None = None) -> SieveReport:
    _check_range(q_min, q_max)
    stages = normalize_stages(stages, SURFACE_STAGES)
    candidates = []
    empty = []
    for q in range(q_min, q_max + 1):
        found = enumerate_surface_candidates(q)
        candidates.extend(found)
        if not found:
            empty.append(q)
    verdicts = _run(partial(evaluate_surface, stages=stages), candidates, worker_count(workers))
    report = SieveReport("surface", q_min, q_max, stages, verdicts, _survivors(verdicts), empty)
    if "budget" in stages:
        report.discrepancies = [
            {"q": q, "issue": "survived", "expected": "eliminated (index above 6)"}
            for q in report.survivors if q > KNOWN_SURFACE_MAX_INDEX
        ]
    return report


def known_eliminated(stages: tuple[str, ...]) -> set[int]:
    """Indices known to fall to ``stages`` alone."""
    out: set[int] = set()
    if "budget" in stages:
        out |= set(KNOWN_BUDGET_ELIMINATED_EXTRA)
        out |= set(range(23, 67)) - set(KNOWN_BUDGET_SURVIVORS_ABOVE_22)
    if "rr" in stages:
        out |= set(KNOWN_RR_ELIMINATED)
    return out


def threefold_discrepancies(report: SieveReport) -> list[dict]:
    """Disagreements with the known eliminations.

    Either an index the argument eliminates survived, or an index realized
    by a Gorenstein weighted projective space was eliminated.
    """
    survivors = set(report.survivors)
    in_range = range(report.q_min, report.q_max + 1)
    issues = [
        {"q": q, "issue": "survived", "expected": "eliminated"}
        for q in sorted(known_eliminated(report.stages) & survivors)
    ]
    realized = {fano_index(w) for w in enumerate_gorenstein_wps3()}
    issues += [
        {"q": q, "issue": "eliminated", "expected": "survives (weighted projective space witness)"}
        for q in sorted(realized) if q in in_range and q not in survivors
    ]
    return sorted(issues, key=lambda d: d["q"])


def _is_integer(x: Fraction) -> bool:
    return x.denominator == 1


def recheck(v: Verdict, kind: str = "threefold") -> bool:
    """Re-derive a verdict from its witness with exact rational arithmetic."""
    c, w = v.candidate, v.witness
    if v.stage == "budget":
        rhs = km_budget_3fold(c.degree) if kind == "threefold" else km_budget_surface(c.degree)
        return w["lhs"] == j_budget_term(c.J) and w["rhs"] == rhs and w["lhs"] > w["rhs"]
    if v.stage == "basket-empty":
        return enumerate_baskets(c.J, w["budget"]) == []
    if v.stage == "divisibility":
        return _check_divisibility(c) is not None
    if v.stage == "degree-bound":
        return c.degree > w["ceiling"] or c.degree <= 0 or not w.get("even", True)
    if v.stage == "rr":
        if [e["basket"] for e in w["baskets"]] != [str(b) for b in enumerate_baskets(c.J, w["budget"])]:
            return False
        return all(_recheck_rr_entry(c, e) for e in w["baskets"])
    if v.survived and "rr" in w:
        b = Basket.parse(w["rr"]["basket"]).with_residues(w["rr"]["assignment"])
        return all(_is_integer(rr_lhs(c.q, c.degree, b, s)) for s in range(1, c.q))
    return v.survived


def _recheck_rr_entry(c: Candidate, entry: dict) -> bool:
    b = Basket.parse(entry["basket"])
    if "uniform_s" in entry:
        s = entry["uniform_s"][0]
        return not any(
            _is_integer(rr_lhs(c.q, c.degree, b.with_residues(xs), s))
            for xs in product(*(range(r.r) for r in b))
        )
    if {tuple(xs) for xs, _ in entry["failures"]} != set(_reduced_assignments(b)):
        return False
    return all(
        not _is_integer(rr_lhs(c.q, c.degree, b.with_residues(xs), s))
        for xs, s in entry["failures"]
    )


def _reduced_assignments(b: Basket) -> list[tuple[int, ...]]:
    """Residue tuples with ``x <= r/2``, sorted within runs of equal records."""
    runs = [(r, len(list(g))) for (r, _), g in groupby(b.records, key=lambda c: (c.r, c.d))]
    return [
        tuple(x for part in parts for x in part)
        for parts in product(*(combinations_with_replacement(range(r // 2 + 1), m) for r, m in runs))
    ]
