import pytest

from psicong.errors import ContextMismatch
from psicong.laurent import LaurentCoeff
from psicong.psi_core import (
    MinPolyFixture, PsiContext, PsiPoly, basic_series, check_minpoly, degree_bound_consistent,
    log_derivative, minpoly_series, minpoly_table, psipoly_to_series,
)
from psicong.ring3 import min_degree_bound

CTX = PsiContext(1, 1, 1, 3)


def _only_01_digits(n):
    while n:
        if n % 3 == 2:
            return False
        n //= 3
    return True


def test_basic_series_is_the_digit_indicator():
    s = basic_series(300, 3)
    assert s.terms() == [int(_only_01_digits(n)) for n in range(301)]


def test_basic_series_with_sign_and_gap():
    s = basic_series(20, 2, epsilon=-1, gamma=2)
    # Psi(-z^2) = (1 - z^2)(1 - z^6)(1 - z^18)...
    assert s.terms(8) == [1, 0, 8, 0, 0, 0, 8, 0, 1]


def test_context_bounds():
    with pytest.raises(ValueError):
        PsiContext(1, 1, 1, 4)
    assert PsiContext(1, 1, 2, 9).size == 18


@pytest.mark.parametrize("k", [6, 7, 9])
def test_high_powers_fold_down(k):
    N = 400
    p = PsiPoly.psi_power(CTX, k)
    assert p.degree() < CTX.size
    assert psipoly_to_series(p, N).agrees(basic_series(N, 3) ** k)


def test_product_matches_series_product():
    N = 300
    cc = CTX.coeff_ctx
    a = PsiPoly.from_powers(CTX, {1: LaurentCoeff(cc, {0: 2, 1: 1}, 1), 4: LaurentCoeff(cc, {-1: 3})})
    b = PsiPoly.from_powers(CTX, {0: LaurentCoeff(cc, {0: 1}), 5: LaurentCoeff(cc, {2: 5}, 2)})
    got = psipoly_to_series(a * b, N)
    want = psipoly_to_series(a, N) * psipoly_to_series(b, N)
    assert got.agrees(want, N - 2)


def test_derivative_of_psi():
    N = 400
    p = PsiPoly.psi_power(CTX, 1).derivative()
    want = basic_series(N + 1, 3).derivative()
    assert psipoly_to_series(p, N).agrees(want, N)


def test_log_derivative_with_sign_and_gap():
    ctx = PsiContext(-1, 2, 1, 3)
    N = 200
    psi = basic_series(N + 2, 3, -1, 2)
    lhs = log_derivative(ctx).to_series(N) * psi
    assert lhs.agrees(psi.derivative(), N - 2)


def test_reduce_and_divide_by_3():
    cc = CTX.coeff_ctx
    p = PsiPoly.from_powers(CTX, {0: LaurentCoeff(cc, {0: 9}), 2: LaurentCoeff(cc, {1: 18})})
    q = p.divide_by_3(2)
    assert q.ctx.e == 1
    assert q.coeffs[2] == LaurentCoeff(cc.with_e(1), {1: 2})
    assert p.reduce(2).is_zero()


def test_mixed_contexts():
    with pytest.raises(ContextMismatch):
        PsiPoly.constant(CTX, 1) + PsiPoly.constant(PsiContext(-1, 1, 1, 3), 1)


def test_json_round_trip():
    cc = CTX.coeff_ctx
    p = PsiPoly.from_powers(CTX, {0: LaurentCoeff(cc, {-1: 13}), 3: LaurentCoeff(cc, {0: 4, 1: 1}, 2)})
    q = PsiPoly.from_json(p.to_json())
    assert q.coeff_equal(p)


# --- minimal polynomials -------------------------------------------------------

def test_minpoly_table_shape():
    rows = minpoly_table()
    assert len(rows) == 13
    assert [r.mod_exp for r in rows] == list(range(1, 14))
    assert all(degree_bound_consistent(r) for r in rows)
    assert [min_degree_bound(r.mod_exp) for r in rows][:4] == [2, 4, 6, 6]


def test_a0_vanishes_mod_3_only():
    a0 = minpoly_table()[0]
    assert check_minpoly(a0, 300)
    assert not check_minpoly(a0, 300, e=2)
    assert not minpoly_series(a0, 300, e=2).is_zero()


def test_minpoly_below_the_degree_bound_is_rejected():
    short = MinPolyFixture("A0", (1, 0, 0), 2)
    assert not degree_bound_consistent(short)
    assert not check_minpoly(short, 300)
    a1 = minpoly_table()[3]
    assert degree_bound_consistent(a1)
    assert not degree_bound_consistent(a1, 5)


@pytest.mark.parametrize("row", range(6))
def test_small_minpolys(row):
    assert check_minpoly(minpoly_table()[row], 300)


@pytest.mark.slow
@pytest.mark.parametrize("row", range(13))
def test_every_minpoly_to_degree_2000(row):
    assert check_minpoly(minpoly_table()[row], 2000)
