"""Riemann-Roch integrality test for candidate baskets.

For index ``q``, degree ``c`` and a basket whose curves carry residues
``x_C``, the quantity

    s^2 c / (2 q^2) - sum_C d_C * w_C (r_C - w_C) / (2 r_C),   w_C = (s x_C) mod r_C

must be an integer for every ``0 < s < q``.  A basket is admissible when
some choice of residues achieves this.

The search works on integers: everything is scaled by a common modulus
``D`` so the test becomes a congruence mod ``D``.  Two residues ``x`` and
``r - x`` give the same term, and curves with equal ``(r, d)`` are
interchangeable, so only sorted assignments with ``x <= r/2`` are scanned;
the lexicographically smallest admissible assignment always has that form.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations_with_replacement, groupby
from math import lcm, prod

from . import _kernel
from .arith import residue
from .basket import Basket, CurveRecord


def rr_correction(s: int, x: int, r: int) -> Fraction:
    if not 0 <= x < r:
        raise ValueError(f"residue x must lie in [0, {r}), got {x}")
    w = residue(s, x, r)
    return Fraction(-w * (r - w), 2 * r)


def rr_lhs(q: int, c1cubed: int | Fraction, basket: Basket, s: int) -> Fraction:
    if not 0 < s < q:
        raise ValueError(f"s must satisfy 0 < s < q={q}, got {s}")
    if not basket.has_residues:
        raise ValueError("every curve record needs a residue x")
    value = Fraction(s * s) * Fraction(c1cubed) / (2 * q * q)
    for c in basket:
        value += c.d * rr_correction(s, c.x, c.r)
    return value


@dataclass(frozen=True)
class RRCheck:
    """Outcome of :func:`rr_admissible`.

    ``assignment`` is the smallest admissible residue tuple (canonical record
    order) or None.  For an inadmissible basket ``uniform_s`` lists every
    ``s`` that fails whatever the residues are; when that list is empty,
    ``failures`` gives one failing ``s`` per reduced assignment (``x <= r/2``,
    sorted within equal records), which covers the full space by symmetry.
    """

    q: int
    c1cubed: Fraction
    basket: Basket
    admissible: bool
    assignment: tuple[int, ...] | None
    uniform_s: tuple[int, ...]
    failures: tuple[tuple[tuple[int, ...], int], ...]
    assignment_space: int

    def __iter__(self):
        yield self.admissible
        yield self.assignment if self.admissible else (self.uniform_s or self.failures)


class _Scaled:
    """Integer tables for the congruence form of the test."""

    def __init__(self, q: int, c1cubed: Fraction, records: tuple[CurveRecord, ...]):
        self.q = q
        self.S = q - 1
        self.modulus = lcm(2 * q * q * c1cubed.denominator, *(2 * c.r for c in records))
        D = self.modulus
        scale = D // (2 * q * q * c1cubed.denominator)
        self.target = [s * s * c1cubed.numerator * scale % D for s in range(1, q)]

    def scale(self, r: int) -> int:
        return self.modulus // (2 * r)


def _uniform_failures(tables: _Scaled, records: tuple[CurveRecord, ...], backend: str | None) -> tuple[int, ...]:
    rs = [c.r for c in records]
    return tuple(_kernel.uniform_failures(rs, [c.d for c in records], [tables.scale(r) for r in rs],
                                          tables.target, tables.modulus, backend))


def _group_options(tables: _Scaled, records: tuple[CurveRecord, ...], backend: str | None):
    """Per run of equal records: the sorted residue multisets and their summed vectors."""
    combos: list[list[tuple[int, ...]]] = []
    flat: list[int] = []
    offsets: list[int] = []
    counts: list[int] = []
    for (r, d), run in groupby(records, key=lambda c: (c.r, c.d)):
        m = len(list(run))
        group = list(combinations_with_replacement(range(r // 2 + 1), m))
        offsets.append(sum(counts))
        counts.append(len(group))
        combos.append(group)
        flat.extend(_kernel.run_options(r, d, tables.scale(r), m, tables.S, tables.modulus, backend))
    return combos, flat, offsets, counts


def rr_admissible(q: int, c1cubed: int | Fraction, basket: Basket, backend: str | None = None) -> RRCheck:
    """Decide whether some residue assignment passes the test for all ``0 < s < q``."""
    if q < 3:
        raise ValueError(f"q must be >= 3, got {q}")
    if any(c.x is not None for c in basket):
        raise ValueError("rr_admissible takes a basket without residues")
    c1cubed = Fraction(c1cubed)
    records = basket.records
    space = prod(c.r for c in records)
    tables = _Scaled(q, c1cubed, records)

    uniform = _uniform_failures(tables, records, backend)
    if uniform:
        return RRCheck(q, c1cubed, basket, False, None, uniform, (), space)

    combos, flat, offsets, counts = _group_options(tables, records, backend)

    def assignment(index: list[int]) -> tuple[int, ...]:
        return tuple(x for g, i in enumerate(index) for x in combos[g][i])

    first, _ = _kernel.scan(flat, offsets, counts, tables.target, tables.modulus, True, backend)
    if first is not None:
        return RRCheck(q, c1cubed, basket, True, assignment(first), (), (), space)

    _, minfail = _kernel.scan(flat, offsets, counts, tables.target, tables.modulus, False, backend)
    failures = []
    index = [0] * len(counts)
    for s in minfail:
        failures.append((assignment(index), s))
        for g in reversed(range(len(counts))):
            index[g] += 1
            if index[g] < counts[g]:
                break
            index[g] = 0
    return RRCheck(q, c1cubed, basket, False, None, (), tuple(failures), space)
