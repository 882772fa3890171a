import itertools

import pytest

from psicong.h_series import (
    HIndex, compose_with_z_over_1pz2, h_series_at, h_tilde_series, psi_power_h_expansion,
    r_series, reduce_h, shift_down,
)
from psicong.psi_core import basic_series
from psicong.series import TruncSeries, geometric_inverse_power

N = 400


def test_index_properties():
    idx = HIndex((1, 3, 2, 6, 4))
    assert not idx.pure
    assert idx.last_divisible() == 4
    assert HIndex((1, 2)).pure
    with pytest.raises(ValueError):
        HIndex((0, 1))


def test_telescoping_product_mod_27():
    psi = basic_series(N, 3)
    lhs = TruncSeries.from_terms({0: 1, 1: 1}, 3, N) * psi * psi
    rhs = (TruncSeries.one(3, N) + h_tilde_series((1,), N, 3).scale(3)
           + h_tilde_series((1, 1), N, 3).scale(9))
    assert lhs.agrees(rhs, N)


def test_h_series_at_single_entry():
    s = h_series_at((1,), 30, 2)
    assert [n for n in range(31) if s[n]] == [1, 3, 9, 27]


def test_compose_with_z_over_1pz2():
    f = TruncSeries.from_terms({1: 1}, 2, 10)
    got = compose_with_z_over_1pz2(f, 10)
    want = TruncSeries.from_terms({1: 1}, 2, 10) * geometric_inverse_power(1, 1, 2, 2, 10)
    assert got.agrees(want, 10)


@pytest.mark.parametrize("idx", [(1,), (2,), (4,), (1, 1), (1, 2), (2, 1), (5, 4)])
def test_h_tilde_is_h_of_z_over_1pz2_mod_3(idx):
    n = 150
    composed = compose_with_z_over_1pz2(h_series_at(idx, n, 1), n)
    assert h_tilde_series(idx, n, 1).agrees(composed, n)


@pytest.mark.parametrize("K, odd", [(1, False), (2, False), (2, True), (3, True)])
def test_power_expansion_matches_psi_powers(K, odd):
    psi = basic_series(N, 3)
    want = psi ** (2 * K + (1 if odd else 0))
    assert psi_power_h_expansion(K, 3, odd).to_series(N).agrees(want, N)


@pytest.mark.parametrize("m", [1, 2, 4])
def test_shift_down_moves_one_level(m):
    e = 3
    M = 300
    r0 = r_series(0, M, e)
    got = TruncSeries.zero(e, M)
    for p, c in shift_down(m, e).items():
        got = got + (r0 ** p).scale(c)
    assert got.agrees(r_series(1, M, e) ** m, M)


@pytest.mark.parametrize("idx, e", [((3,), 2), ((3,), 3), ((1, 3), 3), ((6,), 2), ((3, 1), 3)])
def test_reduce_h_is_series_exact(idx, e):
    combo = reduce_h(idx, e)
    assert combo.reduced
    assert combo.to_series(N).agrees(h_tilde_series(idx, N, e), N)


def test_pure_index_reduces_to_itself():
    combo = reduce_h((1, 2), 3)
    assert list(combo.terms) == [HIndex((1, 2))]
    assert combo.constant.is_zero()


@pytest.mark.slow
@pytest.mark.parametrize("e", [1, 2, 3])
def test_reduce_h_on_all_small_indices(e):
    for s in (1, 2):
        for a in itertools.product(range(1, 10), repeat=s):
            combo = reduce_h(a, e)
            assert combo.reduced, a
            assert combo.to_series(N).agrees(h_tilde_series(a, N, e), N), a
