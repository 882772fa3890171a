import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psicong.errors import ContextMismatch, DivideNotExact
from psicong.laurent import CoeffContext, LaurentCoeff, rewrite_inv_1pz3j
from psicong.series import TruncSeries, geometric_inverse_power

CTX = CoeffContext(1, 1, 3)
CTX_MINUS = CoeffContext(-1, 2, 2)


def test_canonical_form_cancels_the_base():
    a = LaurentCoeff(CTX, {0: 1, 1: 1}, 1)
    assert a == LaurentCoeff.constant(CTX, 1)
    assert a.den_pow == 0


def test_negative_den_pow_moves_into_the_numerator():
    a = LaurentCoeff(CTX_MINUS, {0: 1}, -1)
    assert a.num == {0: 1, 2: 8}


def test_to_series_of_inverse_base():
    inv = LaurentCoeff.base_power(CTX, -1)
    assert inv.to_series(5).terms() == [1, 26, 1, 26, 1, 26]


def test_laurent_part_survives_to_series():
    a = LaurentCoeff.monomial(CTX, 2, -1, 1)
    s = a.to_series(3)
    assert s[-1] == 2
    assert s[0] == 25
    assert s[1] == 2


def test_derivative_quotient_rule():
    # d/dz 1/(1+z) = -1/(1+z)^2
    d = LaurentCoeff.base_power(CTX, -1).derivative()
    assert d == LaurentCoeff(CTX, {0: -1}, 2)


def test_divide_by_3():
    a = LaurentCoeff(CTX, {0: 9, 2: 9}, 1)
    q = a.divide_by_3(2)
    assert q.ctx.e == 1
    assert q.num == {0: 1, 2: 1}
    assert q.den_pow == 1
    with pytest.raises(DivideNotExact):
        LaurentCoeff(CTX, {0: 3, 1: 1}).divide_by_3(1)


def test_context_mismatch():
    with pytest.raises(ContextMismatch):
        LaurentCoeff.constant(CTX, 1) + LaurentCoeff.constant(CTX_MINUS, 1)


def test_json_round_trip():
    a = LaurentCoeff(CTX, {-2: 4, 0: 1, 5: 13}, 3)
    assert LaurentCoeff.from_json(CTX, a.to_json()) == a


def test_substitute_monomial():
    a = LaurentCoeff(CoeffContext(1, 1, 2), {1: 1, 2: 1}, 1)
    b = a.substitute_monomial(CoeffContext(-1, 3, 2))
    # z(1+z)/(1+z) -> -z^3
    assert b == LaurentCoeff(CoeffContext(-1, 3, 2), {3: -1})


@pytest.mark.parametrize("j", [1, 2, 3])
def test_rewrite_inverse_of_higher_binomials(j):
    N = 120
    got = rewrite_inv_1pz3j(j, 1, 3, 3).to_series(N)
    want = geometric_inverse_power(1, 3 ** j, 1, 3, N)
    assert got.agrees(want)


laurents = st.builds(
    lambda num, L: LaurentCoeff(CTX, num, L),
    st.dictionaries(st.integers(min_value=-2, max_value=6), st.integers(min_value=0, max_value=26), max_size=5),
    st.integers(min_value=0, max_value=3),
)


@given(laurents, laurents)
@settings(max_examples=80, deadline=None)
def test_multiplication_is_a_series_homomorphism(a, b):
    N = 30
    assert (a * b).to_series(N).agrees((a.to_series(N + 4) * b.to_series(N + 4)).truncate(N), N - 4)


@given(laurents, laurents)
@settings(max_examples=80, deadline=None)
def test_addition_is_a_series_homomorphism(a, b):
    N = 30
    assert (a + b).to_series(N).agrees(a.to_series(N) + b.to_series(N))


@given(laurents)
@settings(max_examples=60, deadline=None)
def test_derivative_is_a_series_homomorphism(a):
    N = 25
    assert a.derivative().to_series(N).agrees(a.to_series(N + 1).derivative(), N - 1)


@given(laurents)
@settings(max_examples=60, deadline=None)
def test_canonicalization_is_idempotent(a):
    again = LaurentCoeff(a.ctx, a.num, a.den_pow)
    assert again == a
    assert again.den_pow == a.den_pow
