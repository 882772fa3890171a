import pytest

from psicong.errors import NonUnique, SectionDenominator, ShapeMismatch
from psicong.psi_core import PsiContext, PsiPoly, psipoly_to_series
from psicong.sequences import (
    QUADRATIC_IDS, apery_shifted_equation, catalan_squared_equation, catalog, oracle_terms,
    printed_fixture,
)
from psicong.solver import (
    FunctionalEq, _lift_branch, evaluate_equation, m_section, solve_mod3k,
    unique_series_solution, validate_equation,
)


@pytest.mark.parametrize("name, expected", [
    ("catalan", (1, 0, 0, 0)),
    ("motzkin", (2, 0, 0, 0)),
    ("central_trinomial", (0, 1, 0, 0)),
    ("central_binomial_sums", (0, 3, 0, 1)),
])
def test_structure_constants(name, expected):
    assert validate_equation(catalog(name)).as_tuple() == expected


def test_c2_outside_the_base_is_rejected():
    # 1 + z + z^2 = (1 - z)^2 mod 3, not a power of 1 + z
    eqn = FunctionalEq.quadratic("bad", {0: 1, 1: 1, 2: 1}, {0: -1}, {0: 1})
    with pytest.raises(ShapeMismatch):
        validate_equation(eqn)


def test_derivative_term_must_carry_a_factor_3():
    eqn = FunctionalEq("bad", {(0, 0): {1: 1}, (0,): {0: -1}, (): {0: 1}, (1,): {1: 1}})
    with pytest.raises(ShapeMismatch):
        validate_equation(eqn)


def test_quadratic_builder_scales_q_terms():
    eqn = catalog("free_subgroups,m=1")
    assert eqn.part((1,)) == {2: -6}
    assert eqn.derivative_order == 1
    assert eqn.negated().c2 == {1: 1}


@pytest.mark.parametrize("name", ["catalan", "motzkin", "riordan", "central_trinomial"])
def test_series_solution_matches_oracle(name):
    N = 60
    got = unique_series_solution(catalog(name), 3, N)
    assert got.agrees(oracle_terms(name, N + 1, 3), N)


def test_free_subgroup_series_solution():
    N = 40
    got = unique_series_solution(catalog("free_subgroups,m=2"), 2, N)
    assert got.agrees(oracle_terms("free_subgroups,m=2", N + 1, 2), N)


def test_apery_shifted_equation_is_not_unique_mod_3():
    with pytest.raises(NonUnique):
        unique_series_solution(apery_shifted_equation(), 1, 20)


def test_catalan_squared_unique_mod_3_only():
    got = unique_series_solution(catalan_squared_equation(), 1, 20)
    assert got.agrees(oracle_terms("catalan", 21, 1), 20)
    with pytest.raises(NonUnique):
        unique_series_solution(catalan_squared_equation(), 2, 20)


@pytest.mark.parametrize("name", ["catalan", "motzkin"])
def test_solve_mod27_matches_oracle_and_fixture(name):
    N = 300
    report = solve_mod3k(catalog(name), 1, check_degree=N)
    rep = report.representation
    assert report.branch in (1, -1)
    assert psipoly_to_series(rep, N).agrees(oracle_terms(name, N + 1, 3), N)
    assert psipoly_to_series(rep, N).agrees(psipoly_to_series(printed_fixture(name, 3), N), N)


@pytest.mark.slow
@pytest.mark.parametrize("name", [n if n != "free_subgroups" else "free_subgroups,m=1"
                                  for n in QUADRATIC_IDS])
def test_every_quadratic_sequence_mod_27(name):
    N = 728
    rep = solve_mod3k(catalog(name), 1, check_degree=N).representation
    got = psipoly_to_series(rep, N)
    assert got.agrees(oracle_terms(name, N + 1, 3), N)
    assert got.agrees(psipoly_to_series(printed_fixture(name, 3), N), N)


@pytest.mark.parametrize("name", ["catalan", "motzkin"])
def test_rejected_branch_deviates_within_the_prefix(name):
    eqn = catalog(name)
    consts = validate_equation(eqn)
    ctx = PsiContext(eqn.epsilon, eqn.gamma, 1, 3)
    prefix = 2 * 3 ** 3
    target = unique_series_solution(eqn, 3, prefix)
    kept = solve_mod3k(eqn, 1, check_degree=prefix).branch
    other, _ = _lift_branch(eqn, ctx, consts, -kept)
    bad = psipoly_to_series(other, prefix).first_mismatch(target, prefix)
    assert bad is not None and bad <= prefix


def test_solution_satisfies_equation():
    eqn = catalog("motzkin")
    rep = solve_mod3k(eqn, 1, check_degree=200).representation
    assert psipoly_to_series(evaluate_equation(eqn, rep), 200).is_zero()


def test_section_with_trivial_modulus_is_identity():
    ctx = PsiContext(1, 1, 1, 3)
    p = PsiPoly.psi_power(ctx, 2)
    assert m_section(p, {0}, 1) is p
    assert m_section(p, {1}, 1).is_zero()


def test_section_mod_9_by_class():
    N = 200
    rep = solve_mod3k(catalog("motzkin"), 1, check_degree=N).representation.reduce(2)
    oracle = oracle_terms("motzkin", N + 1, 2)
    for r in range(3):
        sec = m_section(rep, {r}, 2)
        want = oracle.mask(lambda n, r=r: n % 3 == r)
        assert psipoly_to_series(sec, N).agrees(want, N)


def test_section_mod_27_by_class_mod_9():
    N = 300
    rep = solve_mod3k(catalog("motzkin"), 1, check_degree=N).representation
    oracle = oracle_terms("motzkin", N + 1, 3)
    for residues in ({0}, {4}, {2, 7}):
        sec = m_section(rep, residues, 3)
        want = oracle.mask(lambda n, rs=residues: n % 9 in rs)
        assert psipoly_to_series(sec, N).agrees(want, N)


def test_section_needs_plain_psi():
    ctx = PsiContext(-1, 1, 1, 3)
    with pytest.raises(SectionDenominator):
        m_section(PsiPoly.psi_power(ctx, 1), {0}, 2)
