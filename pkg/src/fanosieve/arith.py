"""Exact integer and rational arithmetic shared by every sieve.

All rational quantities are :class:`fractions.Fraction` values (aliased as
``Rat``); nothing in this package touches floating point.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

Rat = Fraction

Factorization = list[tuple[int, int]]


def as_rat(value: int | str | Fraction) -> Fraction:
    """Parse ``7``, ``"31/2"`` or a Fraction into an exact rational."""
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass an int, Fraction or 'p/q' string")
    if isinstance(value, str):
        text = value.strip()
        if "." in text or "e" in text.lower():
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    return Fraction(value)


def format_rat(value: Fraction | int) -> str:
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


def factorize(n: int) -> Factorization:
    """Prime factorization by trial division, as increasing ``(p, a)`` pairs."""
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    pairs: Factorization = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            a = 0
            while n % p == 0:
                n //= p
                a += 1
            pairs.append((p, a))
        p += 1 if p == 2 else 2
    if n > 1:
        pairs.append((n, 1))
    return pairs


def prime_powers(n: int) -> list[int]:
    return [p**a for p, a in factorize(n)]


def euler_phi(m: int) -> int:
    if m < 1:
        raise ValueError(f"euler_phi needs m >= 1, got {m}")
    result = m
    for p, _ in factorize(m):
        result = result // p * (p - 1)
    return result


def phi_search_ceiling(bound: int) -> int:
    # phi(m) >= sqrt(m/2) for all m >= 1, so phi(m) <= bound forces m <= 2*bound^2.
    return 2 * bound * bound


def phi_index_set(bound: int, exclusions: Iterable[int] = ()) -> list[int]:
    """Sorted list of all ``m`` with ``euler_phi(m) <= bound``, minus ``exclusions``."""
    if bound < 1:
        raise ValueError(f"bound must be >= 1, got {bound}")
    excluded = set(exclusions)
    return [
        m
        for m in range(1, phi_search_ceiling(bound) + 1)
        if m not in excluded and euler_phi(m) <= bound
    ]


def j_budget_term(J: int) -> Fraction:
    """Sum of ``p^a - 1/p^a`` over the prime-power factors of ``J``."""
    return sum((Fraction(pa) - Fraction(1, pa) for pa in prime_powers(J)), Fraction(0))


def km_budget_3fold(c1cubed: int | Fraction) -> Fraction:
    """Right-hand side ``24 - c1^3/4`` of the threefold budget inequality.

    A negative result is legal; downstream it means no basket can exist.
    """
    c1cubed = Fraction(c1cubed)
    if c1cubed <= 0:
        raise ValueError(f"anti-canonical degree must be positive, got {c1cubed}")
    return 24 - c1cubed / 4


def km_budget_surface(c1squared: int | Fraction) -> Fraction:
    """Noether-formula budget ``12 - (5/4) c1^2`` for du Val del Pezzo surfaces."""
    c1squared = Fraction(c1squared)
    if c1squared <= 0:
        raise ValueError(f"anti-canonical degree must be positive, got {c1squared}")
    return 12 - Fraction(5, 4) * c1squared


def epsilon_lc_coefficient(eps: int | Fraction) -> Fraction:
    """Coefficient ``(2 + 2 eps)/eps`` of the KM-type inequality for eps-lc varieties."""
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError(f"eps must lie in (0, 1], got {eps}")
    return (2 + 2 * eps) / eps


def residue(s: int, x: int, r: int) -> int:
    """``(s*x) mod r`` in ``[0, r)``."""
    if r < 2:
        raise ValueError(f"modulus r must be >= 2, got {r}")
    return (s * x) % r

