"""Baskets of transverse A-type singular curves.

A curve record ``(r, d)`` stands for a curve of transverse type A_{r-1}
with anti-canonical degree ``d``; it contributes ``d * (r - 1/r)`` to the
basket cost.  The text form used on the command line and in reports is
``"8:1,5:1"`` or, with residues, ``"8:1:3,5:1:0"``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Sequence

from . import _kernel
from .arith import as_rat, prime_powers


@dataclass(frozen=True)
class CurveRecord:
    r: int
    d: int = 1
    x: int | None = None

    def __post_init__(self) -> None:
        if self.r < 2:
            raise ValueError(f"transverse index r must be >= 2, got {self.r}")
        if self.d < 1:
            raise ValueError(f"degree d must be >= 1, got {self.d}")
        if self.x is not None and not 0 <= self.x < self.r:
            raise ValueError(f"residue x must lie in [0, {self.r}), got {self.x}")

    @property
    def cost(self) -> Fraction:
        return self.d * (self.r - Fraction(1, self.r))

    def sort_key(self) -> tuple[int, int, int]:
        return (-self.r, -self.d, -1 if self.x is None else self.x)

    def __str__(self) -> str:
        if self.x is None:
            return f"{self.r}:{self.d}"
        return f"{self.r}:{self.d}:{self.x}"


@dataclass(frozen=True)
class Basket:
    records: tuple[CurveRecord, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "records", tuple(sorted(self.records, key=CurveRecord.sort_key)))

    @classmethod
    def parse(cls, text: str) -> "Basket":
        """Parse ``"r:d,r:d"`` or ``"r:d:x,..."``; the empty string is the empty basket."""
        records = []
        if not text.strip():
            return cls(())
        for chunk in (c.strip() for c in text.split(",")):
            parts = chunk.split(":")
            if len(parts) not in (2, 3) or not all(p.strip().isdigit() for p in parts):
                raise ValueError(f"malformed curve record {chunk!r}; expected r:d or r:d:x")
            records.append(CurveRecord(*(int(p) for p in parts)))
        return cls(tuple(records))

    def __str__(self) -> str:
        return ",".join(map(str, self.records))

    def __len__(self) -> int:
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def has_residues(self) -> bool:
        return all(c.x is not None for c in self.records)

    def without_residues(self) -> "Basket":
        return Basket(tuple(CurveRecord(c.r, c.d) for c in self.records))

    def with_residues(self, xs: Sequence[int]) -> "Basket":
        """Attach residues in canonical record order."""
        if len(xs) != len(self.records):
            raise ValueError(f"need {len(self.records)} residues, got {len(xs)}")
        return Basket(tuple(CurveRecord(c.r, c.d, x) for c, x in zip(self.records, xs)))

    def key(self) -> tuple[tuple[int, int], ...]:
        """Sort key matching the enumeration order."""
        return tuple((-c.r, -c.d) for c in self.records)


def basket_cost(b: Basket) -> Fraction:
    return sum((c.cost for c in b.records), Fraction(0))


def lcm_index(b: Basket) -> int:
    return lcm(1, *(c.r for c in b.records))


class BasketSequence(Sequence[Basket]):
    """Enumerated baskets, materialized as :class:`Basket` objects on access."""

    def __init__(self, kinds: list[tuple[int, int]], sequences: list[tuple[int, ...]]):
        self._kinds = kinds
        self._sequences = sequences

    def __len__(self) -> int:
        return len(self._sequences)

    def __getitem__(self, i):
        if isinstance(i, slice):
            return [self[j] for j in range(*i.indices(len(self)))]
        return Basket(tuple(CurveRecord(*self._kinds[k]) for k in self._sequences[i]))


def basket_sequence(J: int, budget: int | str | Fraction, backend: str | None = None) -> BasketSequence:
    """Lazy form of :func:`enumerate_baskets`.

    Costs are scaled by a common denominator so the depth-first search runs
    on integers: kind ``(r, d)`` costs ``d (r^2 - 1) (L / r)`` in units of ``1/L``.
    """
    if J < 1:
        raise ValueError(f"J must be >= 1, got {J}")
    budget = as_rat(budget)
    if budget < 0:
        return BasketSequence([], [])

    r_max = 1
    while (r_max + 1) - Fraction(1, r_max + 1) <= budget:
        r_max += 1
    powers = prime_powers(J)
    L = lcm(1, *range(2, r_max + 1), *powers)
    scaled_budget = budget.numerator * L // budget.denominator

    kinds = []
    costs = []
    masks = []
    for r in range(r_max, 1, -1):
        unit = (r * r - 1) * (L // r)
        mask = sum(1 << j for j, pa in enumerate(powers) if r % pa == 0)
        for d in range(scaled_budget // unit, 0, -1):
            kinds.append((r, d))
            costs.append(d * unit)
            masks.append(mask)
    # cheapest cover of a set of prime powers: one curve of each
    prune = [
        sum((pa * pa - 1) * (L // pa) for j, pa in enumerate(powers) if m >> j & 1)
        for m in range(1 << len(powers))
    ]
    full = (1 << len(powers)) - 1
    return BasketSequence(kinds, _kernel.basket_dfs(costs, masks, prune, full, scaled_budget, backend))


def enumerate_baskets(J: int, budget: int | str | Fraction, backend: str | None = None) -> list[Basket]:
    """All residue-free baskets with ``cost <= budget`` and ``J | lcm_index``.

    Every record costs at least 3/2, so the list is finite.  Baskets are in
    lexicographic order of their record lists under the record order
    ``(r desc, d desc)``, shorter prefixes first.
    """
    return list(basket_sequence(J, budget, backend))
