import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psicong.errors import ContextMismatch
from psicong.ring3 import Residue, binom, digit_sum3, inverse, min_degree_bound, v3, v3_factorial


@pytest.mark.parametrize("n, expected", [
    (1, 0), (3, 1), (-9, 2), (54, 3), (81 * 5, 4), (2, 0),
])
def test_v3(n, expected):
    assert v3(n) == expected


def test_v3_of_zero_is_infinite():
    assert v3(0) == math.inf


@given(st.integers(min_value=0, max_value=10 ** 6))
def test_legendre_matches_digit_sum(d):
    assert v3_factorial(d) == (d - digit_sum3(d)) // 2


def test_degree_bound_column():
    got = [min_degree_bound(g) for g in range(1, 14)]
    assert got == [2, 4, 6, 6, 8, 10, 12, 12, 14, 16, 18, 18, 18]


@pytest.mark.parametrize("n, k, expected", [
    (5, 2, 10), (3, 5, 0), (-1, 3, -1), (-2, 2, 3), (-3, 1, -3), (4, -1, 0),
])
def test_binom(n, k, expected):
    assert binom(n, k) == expected


def test_residue_arithmetic():
    a = Residue(20, 3)
    assert a + 10 == Residue(3, 3)
    assert (a * 2).value == 13
    assert (-a).value == 7
    assert a.signed() == -7
    assert Residue(18, 3).valuation() == 2
    assert Residue(0, 2).valuation() == 2
    assert Residue(5, 3).inverse() * 5 == 1
    assert inverse(2, 2) == 5


def test_residue_context_mismatch():
    with pytest.raises(ContextMismatch):
        Residue(1, 2) + Residue(1, 3)
    with pytest.raises(ContextMismatch):
        Residue(1, 2).reduce(3)


residues = st.builds(Residue, st.integers(), st.just(3))


@given(residues, residues, residues)
@settings(max_examples=200)
def test_ring_laws(a, b, c):
    assert a + b == b + a
    assert a * (b + c) == a * b + a * c
    assert (a * b) * c == a * (b * c)
    assert a - a == 0


@given(st.integers(), st.integers(min_value=1, max_value=3))
def test_reduce_is_compatible(x, e):
    assert Residue(x, 3).reduce(e) == Residue(x, e)


def test_residue_hash_agrees_with_equality():
    assert Residue(34, 3) == 7
    assert Residue(34, 3) != 34
    assert hash(Residue(34, 3)) == hash(Residue(7, 3)) == hash(7)
    assert {Residue(7, 3), 7} == {7}
    assert Residue(7, 3) in {7: "seven"}
    assert Residue(7, 2) != Residue(7, 3)


@given(st.integers(), st.integers(min_value=1, max_value=4))
def test_equal_residues_hash_equal(x, e):
    r = Residue(x, e)
    assert r == r.value
    assert hash(r) == hash(r.value) == hash(Residue(x + 3 ** e, e))
