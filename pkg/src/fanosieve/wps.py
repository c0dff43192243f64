"""Three-dimensional weighted projective spaces P(a0, a1, a2, a3).

Gorenstein spaces correspond to four-term unit-fraction decompositions of 1:
with ``h = a0 + a1 + a2 + a3`` the numbers ``b_i = h / a_i`` are integers
summing to 1 in reciprocal.  :func:`enumerate_gorenstein_wps3` walks that
equation instead of scanning weight vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import reduce
from itertools import combinations
from math import gcd, lcm, prod

from .arith import format_rat


@dataclass(frozen=True, order=True)
class WeightVector:
    weights: tuple[int, int, int, int]

    def __init__(self, *weights: int) -> None:
        if len(weights) == 1 and not isinstance(weights[0], int):
            weights = tuple(weights[0])
        if len(weights) != 4:
            raise ValueError(f"need exactly four weights, got {len(weights)}")
        if any(not isinstance(a, int) or a < 1 for a in weights):
            raise ValueError(f"weights must be positive integers, got {weights}")
        object.__setattr__(self, "weights", tuple(sorted(weights)))

    def __iter__(self):
        return iter(self.weights)

    def __str__(self) -> str:
        return "P(" + ",".join(map(str, self.weights)) + ")"


def is_well_formed(w: WeightVector) -> bool:
    return all(reduce(gcd, triple) == 1 for triple in combinations(w.weights, 3))


def _require_well_formed(w: WeightVector) -> None:
    if not is_well_formed(w):
        raise ValueError(f"{w} is not well-formed")


def fano_index(w: WeightVector) -> int:
    _require_well_formed(w)
    return sum(w.weights)


def degree(w: WeightVector) -> Fraction:
    """Anti-canonical degree ``(sum a)^3 / (a0 a1 a2 a3)``."""
    _require_well_formed(w)
    return Fraction(sum(w.weights) ** 3, prod(w.weights))


def is_gorenstein(w: WeightVector) -> bool:
    _require_well_formed(w)
    h = sum(w.weights)
    return all(h % a == 0 for a in w.weights)


def well_formed_model(w: WeightVector) -> WeightVector:
    """Divide out common factors until the weights are well-formed.

    Uses ``P(a) = P(a / gcd(a))`` and the fact that a common factor of
    three of the weights can be divided out of those three.
    """
    weights = list(w.weights)
    changed = True
    while changed:
        changed = False
        g = reduce(gcd, weights)
        if g > 1:
            weights = [a // g for a in weights]
            changed = True
        for i in range(4):
            others = [a for j, a in enumerate(weights) if j != i]
            d = reduce(gcd, others)
            if d > 1:
                weights = [a if j == i else a // d for j, a in enumerate(weights)]
                changed = True
    return WeightVector(*weights)


def unit_fraction_solutions(terms: int = 4, total: Fraction = Fraction(1)) -> list[tuple[int, ...]]:
    """All non-decreasing ``(b_1, ..., b_terms)`` with ``sum 1/b_i == total``."""
    out: list[tuple[int, ...]] = []

    def extend(prefix: list[int], remaining: Fraction, left: int) -> None:
        if left == 1:
            if remaining.numerator == 1 and (not prefix or remaining.denominator >= prefix[-1]):
                out.append((*prefix, remaining.denominator))
            return
        # 1/b < remaining because the later terms are positive
        lo = max(prefix[-1] if prefix else 1, remaining.denominator // remaining.numerator + 1)
        # the smallest of `left` equal-or-larger reciprocals must carry at least remaining/left
        hi = (left * remaining.denominator) // remaining.numerator
        for b in range(lo, hi + 1):
            rest = remaining - Fraction(1, b)
            if rest > 0:
                extend(prefix + [b], rest, left - 1)

    extend([], Fraction(total), terms)
    return out


def enumerate_gorenstein_wps3() -> list[WeightVector]:
    found: set[WeightVector] = set()
    for bs in unit_fraction_solutions(4):
        h = lcm(*bs)
        w = well_formed_model(WeightVector(*(h // b for b in bs)))
        if is_gorenstein(w):
            found.add(w)
    return sorted(found)


def enumerate_well_formed_wps3(max_sum: int) -> list[WeightVector]:
    """Every well-formed weight vector with weight sum at most ``max_sum``."""
    out = []
    for a0 in range(1, max_sum + 1):
        for a1 in range(a0, max_sum - a0 + 1):
            for a2 in range(a1, max_sum - a0 - a1 + 1):
                for a3 in range(a2, max_sum - a0 - a1 - a2 + 1):
                    w = WeightVector(a0, a1, a2, a3)
                    if is_well_formed(w):
                        out.append(w)
    return out


def wps_row(w: WeightVector) -> dict:
    return {
        "weights": list(w.weights),
        "index": fano_index(w),
        "degree": format_rat(degree(w)),
        "gorenstein": is_gorenstein(w),
    }
