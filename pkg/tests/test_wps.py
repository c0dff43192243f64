from fractions import Fraction

import pytest

from fanosieve.wps import (
    WeightVector,
    degree,
    enumerate_gorenstein_wps3,
    enumerate_well_formed_wps3,
    fano_index,
    is_gorenstein,
    is_well_formed,
    unit_fraction_solutions,
    well_formed_model,
)
from oracles import gorenstein_wps_scan


def test_weight_vector_is_canonical():
    assert WeightVector(12, 1, 8, 3) == WeightVector(1, 3, 8, 12)
    assert WeightVector(12, 1, 8, 3).weights == (1, 3, 8, 12)
    with pytest.raises(ValueError):
        WeightVector(0, 1, 1, 1)
    with pytest.raises(ValueError):
        WeightVector(1, 1, 1)


@pytest.mark.parametrize("w, expected", [((1, 1, 1, 1), True), ((1, 3, 8, 12), True), ((2, 4, 6, 3), False)])
def test_is_well_formed(w, expected):
    assert is_well_formed(WeightVector(*w)) is expected


@pytest.mark.parametrize("w, q", [((1, 3, 8, 12), 24), ((2, 3, 10, 15), 30), ((1, 1, 1, 1), 4)])
def test_fano_index(w, q):
    assert fano_index(WeightVector(*w)) == q


@pytest.mark.parametrize("w, d", [((1, 1, 1, 3), 72), ((1, 1, 4, 6), 72), ((1, 6, 14, 21), 42)])
def test_degree(w, d):
    assert degree(WeightVector(*w)) == d


@pytest.mark.parametrize("w, expected", [((1, 3, 8, 12), True), ((1, 1, 1, 2), False), ((1, 1, 1, 1), True)])
def test_is_gorenstein(w, expected):
    assert is_gorenstein(WeightVector(*w)) is expected


def test_invariants_reject_non_well_formed():
    bad = WeightVector(2, 4, 6, 3)
    for fn in (fano_index, degree, is_gorenstein):
        with pytest.raises(ValueError):
            fn(bad)


def test_well_formed_model():
    assert well_formed_model(WeightVector(2, 2, 2, 2)) == WeightVector(1, 1, 1, 1)
    assert well_formed_model(WeightVector(1, 2, 2, 2)) == WeightVector(1, 1, 1, 1)
    assert well_formed_model(WeightVector(2, 4, 6, 3)) == WeightVector(1, 2, 3, 3)


def test_gorenstein_enumeration():
    spaces = enumerate_gorenstein_wps3()
    assert len(spaces) == 14
    assert spaces == sorted(set(spaces))
    assert {fano_index(w) for w in spaces} == {4, 6, 8, 10, 12, 18, 20, 24, 30, 42}
    assert WeightVector(1, 6, 14, 21) in spaces


def test_unit_fraction_correspondence():
    solutions = unit_fraction_solutions(4)
    assert len(solutions) == 14
    assert all(sum(Fraction(1, b) for b in bs) == 1 for bs in solutions)
    from_spaces = set()
    for w in enumerate_gorenstein_wps3():
        h = fano_index(w)
        bs = tuple(sorted(h // a for a in w.weights))
        assert all(h % a == 0 for a in w.weights)
        assert sum(Fraction(1, b) for b in bs) == 1
        from_spaces.add(bs)
    assert from_spaces == set(solutions)


def test_degrees_of_gorenstein_spaces():
    top = set()
    for w in enumerate_gorenstein_wps3():
        d = degree(w)
        assert d.denominator == 1 and d % 2 == 0 and 0 < d <= 72
        assert d * w.weights[0] * w.weights[1] * w.weights[2] * w.weights[3] == fano_index(w) ** 3
        if d == 72:
            top.add(w)
    assert top == {WeightVector(1, 1, 1, 3), WeightVector(1, 1, 4, 6)}


def test_brute_force_scan_agrees():
    assert gorenstein_wps_scan(64) == {w.weights for w in enumerate_gorenstein_wps3()}


def test_well_formed_listing():
    listed = enumerate_well_formed_wps3(6)
    assert WeightVector(1, 1, 1, 1) in listed and WeightVector(1, 1, 2, 2) in listed
    assert all(is_well_formed(w) and sum(w.weights) <= 6 for w in listed)
    assert WeightVector(1, 2, 2, 2) not in listed
