from fractions import Fraction
from math import gcd, prod

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fanosieve.arith import (
    as_rat,
    epsilon_lc_coefficient,
    euler_phi,
    factorize,
    format_rat,
    j_budget_term,
    km_budget_3fold,
    km_budget_surface,
    phi_index_set,
    residue,
)
from oracles import factor_by_division, phi_by_count


@pytest.mark.parametrize("n, expected", [(1, []), (40, [(2, 3), (5, 1)]), (66, [(2, 1), (3, 1), (11, 1)])])
def test_factorize_examples(n, expected):
    assert factorize(n) == expected


@pytest.mark.parametrize("n", [0, -4])
def test_factorize_rejects_nonpositive(n):
    with pytest.raises(ValueError):
        factorize(n)


@given(st.integers(1, 5000))
def test_factorize_matches_division_and_reconstructs(n):
    pairs = factorize(n)
    assert pairs == factor_by_division(n)
    assert prod(p**a for p, a in pairs) == n
    assert all(p1 < p2 for (p1, _), (p2, _) in zip(pairs, pairs[1:]))


@pytest.mark.parametrize("m, expected", [(1, 1), (66, 20), (60, 16)])
def test_euler_phi_examples(m, expected):
    assert euler_phi(m) == expected == phi_by_count(m)


def test_euler_phi_rejects_zero():
    with pytest.raises(ValueError):
        euler_phi(0)


@given(st.integers(1, 300), st.integers(1, 300))
def test_euler_phi_multiplicative(m, n):
    if gcd(m, n) == 1:
        assert euler_phi(m * n) == euler_phi(m) * euler_phi(n)


def test_phi_index_sets():
    assert phi_index_set(2, ()) == [1, 2, 3, 4, 6]
    i3 = phi_index_set(20, {60})
    assert max(i3) == 66
    assert 60 not in i3
    # independent check over a range far past the search ceiling
    assert i3 == [m for m in range(1, 3000) if m != 60 and phi_by_count(m) <= 20]


@pytest.mark.parametrize("J, expected", [(1, 0), (40, Fraction(507, 40)), (17, Fraction(288, 17)),
                                         (34, Fraction(627, 34))])
def test_j_budget_term(J, expected):
    assert j_budget_term(J) == expected


@given(st.integers(1, 2000))
def test_j_budget_term_dominates_largest_prime_power(J):
    if J > 1:
        pa = max(p**a for p, a in factor_by_division(J))
        assert j_budget_term(J) >= pa - Fraction(1, pa)


@pytest.mark.parametrize("p, q", [(2, 3), (5, 7), (11, 13), (2, 61)])
def test_j_budget_term_additive_on_distinct_primes(p, q):
    assert j_budget_term(p * q) == j_budget_term(p) + j_budget_term(q)


@pytest.mark.parametrize("c, expected", [(40, 14), (72, 6), (26, Fraction(35, 2))])
def test_km_budget_3fold(c, expected):
    assert km_budget_3fold(c) == expected


def test_km_budget_rejects_nonpositive_and_allows_negative_results():
    with pytest.raises(ValueError):
        km_budget_3fold(0)
    assert km_budget_3fold(100) == -1
    assert km_budget_surface(7) == Fraction(13, 4)


@given(st.fractions(min_value=Fraction(1, 100), max_value=200), st.fractions(min_value=Fraction(1, 100), max_value=200))
def test_km_budget_strictly_decreasing(a, b):
    if a < b:
        assert km_budget_3fold(a) > km_budget_3fold(b)


@pytest.mark.parametrize("eps, expected", [(1, 4), (Fraction(1, 2), 6), (Fraction(1, 3), 8)])
def test_epsilon_lc_coefficient(eps, expected):
    assert epsilon_lc_coefficient(eps) == expected


@pytest.mark.parametrize("eps", [0, Fraction(-1, 2), Fraction(3, 2)])
def test_epsilon_lc_coefficient_domain(eps):
    with pytest.raises(ValueError):
        epsilon_lc_coefficient(eps)


def test_residue_examples():
    assert all(residue(5, x, 5) == 0 for x in range(5))
    assert residue(5, 1, 8) == 5
    assert residue(3, 2, 5) == 1
    with pytest.raises(ValueError):
        residue(1, 1, 1)


@given(st.integers(-500, 500), st.integers(-500, 500), st.integers(2, 60))
def test_residue_reduces_arguments(s, x, r):
    v = residue(s, x, r)
    assert 0 <= v < r
    assert v == residue(s % r, x % r, r)


def test_rational_parsing_is_exact():
    assert as_rat("31/2") == Fraction(31, 2)
    assert format_rat(Fraction(507, 40)) == "507/40"
    assert format_rat(Fraction(14)) == "14"
    with pytest.raises(ValueError):
        as_rat("0.5")
    with pytest.raises(TypeError):
        as_rat(0.5)


def _cross_multiplication_oracle(a, b):
    """Arithmetic on bare (num, den) integer pairs."""
    (an, ad), (bn, bd) = a, b

    def norm(n, d):
        if d < 0:
            n, d = -n, -d
        g = gcd(n, d)
        return n // g, d // g

    out = {
        "add": norm(an * bd + bn * ad, ad * bd),
        "sub": norm(an * bd - bn * ad, ad * bd),
        "mul": norm(an * bn, ad * bd),
        "lt": an * bd < bn * ad,
        "eq": an * bd == bn * ad,
    }
    if bn:
        out["div"] = norm(an * bd, ad * bn)
    return out


@settings(max_examples=10_000, deadline=None)
@given(st.integers(-10**12, 10**12), st.integers(1, 10**9), st.integers(-10**12, 10**12), st.integers(1, 10**9))
def test_rational_arithmetic_matches_cross_multiplication(an, ad, bn, bd):
    a, b = Fraction(an, ad), Fraction(bn, bd)
    oracle = _cross_multiplication_oracle((an, ad), (bn, bd))
    assert (a.denominator >= 1) and gcd(abs(a.numerator), a.denominator) == 1
    assert ((a + b).numerator, (a + b).denominator) == oracle["add"]
    assert ((a - b).numerator, (a - b).denominator) == oracle["sub"]
    assert ((a * b).numerator, (a * b).denominator) == oracle["mul"]
    assert (a < b) == oracle["lt"]
    assert (a == b) == oracle["eq"]
    if bn:
        assert ((a / b).numerator, (a / b).denominator) == oracle["div"]
    assert ((a * b).denominator == 1) == ((an * bn) % (ad * bd) == 0)
