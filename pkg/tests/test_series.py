import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from psicong.errors import ContextMismatch
from psicong.series import TruncSeries, geometric_inverse_power


def test_product_and_inverse():
    one_plus_z = TruncSeries.from_terms({0: 1, 1: 1}, 3, 40)
    inv = geometric_inverse_power(1, 1, 1, 3, 40)
    assert (one_plus_z * inv).agrees(TruncSeries.one(3, 40))
    assert inv.terms(5) == [1, 26, 1, 26, 1, 26]


def test_inverse_power_of_binomial_with_gap():
    inv = geometric_inverse_power(-1, 2, 2, 2, 10)
    # 1/(1-z^2)^2 = sum (k+1) z^(2k)
    assert inv.terms(10) == [1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 6]


def test_getitem_beyond_precision():
    s = TruncSeries.one(1, 4)
    with pytest.raises(IndexError):
        s[5]
    assert s[-3] == 0


def test_first_mismatch_and_shift():
    a = TruncSeries.from_terms({0: 1, 3: 2}, 2, 10)
    b = TruncSeries.from_terms({0: 1}, 2, 10)
    assert a.first_mismatch(b) == 3
    assert a.shift(-1).min_deg == -1
    assert a.shift(-1)[2] == 2


def test_mixed_moduli_rejected():
    with pytest.raises(ContextMismatch):
        TruncSeries.one(2, 5) + TruncSeries.one(3, 5)


def test_derivative():
    s = TruncSeries.from_terms({0: 4, 1: 1, 3: 5}, 3, 10)
    assert s.derivative().terms(3) == [1, 0, 15, 0]


coeff_lists = st.lists(st.integers(min_value=0, max_value=26), min_size=1, max_size=30)


@given(coeff_lists, coeff_lists)
@settings(max_examples=100)
def test_product_matches_numpy_convolution(a, b):
    N = 20
    sa = TruncSeries(np.array(a[:N + 1] + [0] * (N + 1 - len(a[:N + 1]))), 3)
    sb = TruncSeries(np.array(b[:N + 1] + [0] * (N + 1 - len(b[:N + 1]))), 3)
    want = np.convolve(sa.coeffs, sb.coeffs)[:N + 1] % 27
    assert (sa * sb).terms(N) == [int(x) for x in want]


def test_object_dtype_for_large_moduli():
    s = TruncSeries.from_terms({0: 3 ** 20 - 1}, 25, 5)
    t = s * s
    assert t[0] == (3 ** 20 - 1) ** 2 % 3 ** 25
