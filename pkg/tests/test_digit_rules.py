import re

import pytest
from hypothesis import given, strategies as st

from psicong.digit_rules import (
    Finding, TritString, apery_class, apery_scan, compare_free27_variants, digit_stats,
    evaluator_name, free27_is_one, free_class, printed_table_findings, psi3_coeff_via_lemma,
    psi5_coeff_via_lemma, psi_power_coeff,
)
from psicong.carry import CarryAutomaton
from psicong.errors import Untabulated
from psicong.patterns import to_word
from psicong.psi_core import basic_series
from psicong.sequences import apery_recurrence_terms, free_subgroup_terms


def _series_table(power, e, N):
    return (basic_series(N, e) ** power).terms()


# --- strings and statistics ---------------------------------------------------------

def test_trit_string_round_trip():
    s = TritString.parse("0120")
    assert s.digits == (0, 2, 1)
    assert int(s) == 15
    assert str(s) == "120"
    assert s[7] == 0
    assert str(TritString.from_int(0)) == "0"
    with pytest.raises(ValueError):
        TritString((3,))


def test_stat_examples():
    st9 = digit_stats(9)
    assert st9.estring == 1
    assert st9.iso2 == 1
    assert st9.occ1_100 == 0
    assert digit_stats(27).occ1_100 == 1
    assert digit_stats(TritString.parse("110")).occ_011 == 1
    # a leading 22 counts as an occurrence of 022
    assert digit_stats(8).occ_022 == 1
    assert digit_stats(8).end_22 == 1
    assert digit_stats(8).end_122 == 0
    assert set(digit_stats(5).as_dict()) >= {"estring", "eestring", "occ_201"}
    with pytest.raises(AttributeError):
        digit_stats(5).bogus


@given(n=st.integers(min_value=0, max_value=3 ** 12), pattern=st.text(alphabet="012", min_size=1, max_size=4))
def test_occ_counts_windows_over_padded_digits(n, pattern):
    s = TritString.from_int(n)
    L = len(pattern)
    want = sum(1 for i in range(len(s))
               if all(s[i + j] == int(pattern[L - 1 - j]) for j in range(L)))
    assert digit_stats(n).occ(pattern) == want


@given(n=st.integers(min_value=0, max_value=3 ** 12))
def test_run_counts(n):
    word = to_word(n)
    stats = digit_stats(n)
    assert stats.estring == len(re.findall("1+", word))
    assert stats.eestring == len(re.findall("2+", word))


# --- Psi powers ------------------------------------------------------------------------

def test_psi_coeff_examples():
    assert psi_power_coeff(3, 3, 9).value == 7
    assert psi_power_coeff(3, 3, 4).value == 9
    assert psi_power_coeff(3, 3, 1).value == 3
    assert psi_power_coeff(3, 3, 2).value == 3
    assert psi_power_coeff(5, 3, 27).value == 1165 % 27
    assert psi_power_coeff(1, 2, 13).value == 1
    assert psi_power_coeff(1, 2, 5).value == 0


def test_untabulated_requests():
    with pytest.raises(Untabulated):
        psi_power_coeff(7, 2, 4)
    with pytest.raises(Untabulated):
        psi_power_coeff(3, 1, 4)
    with pytest.raises(ValueError):
        psi_power_coeff(3, 2, -1)
    assert evaluator_name(5, 3) == "lemma expansion"
    assert evaluator_name(3, 2) == "case list"


@pytest.mark.parametrize("power, e", [(1, 1), (1, 3), (3, 2), (3, 3), (5, 2), (5, 3)])
def test_tables_match_series(power, e):
    N = 3 ** 6 - 1
    want = _series_table(power, e, N)
    assert [psi_power_coeff(power, e, n).value for n in range(N + 1)] == want


def test_mod_27_refines_mod_9():
    for n in range(3 ** 6):
        assert psi_power_coeff(3, 3, n).value % 9 == psi_power_coeff(3, 2, n).value


def test_lemma_expansion_matches_series():
    N = 3 ** 5
    want = _series_table(3, 3, N)
    assert [psi3_coeff_via_lemma(n).value for n in range(N + 1)] == want
    assert psi3_coeff_via_lemma(9, 2).value == 7 % 9
    with pytest.raises(Untabulated):
        psi3_coeff_via_lemma(9, 4)


@pytest.mark.slow
@pytest.mark.parametrize("power, e, digits", [(3, 2, 9), (5, 2, 9), (3, 3, 8), (5, 3, 8)])
def test_tables_match_series_far(power, e, digits):
    N = 3 ** digits - 1
    want = _series_table(power, e, N)
    assert [psi_power_coeff(power, e, n).value for n in range(N + 1)] == want


def test_printed_psi5_list_misses_81():
    found = printed_table_findings(5, 2, 100)
    at81 = [f for f in found if f.n == 81]
    assert at81 and at81[0].expected == 0 and at81[0].actual == 4
    assert all(isinstance(f, Finding) and f.expected != f.actual for f in found)


def test_psi5_expansion_known_values():
    exact = [1, 5, 10, 15, 30, 51, 60, 75, 105, 115, 125]
    assert [psi5_coeff_via_lemma(n).value for n in range(11)] == [c % 27 for c in exact]
    assert psi5_coeff_via_lemma(81).value == 12415 % 27
    assert psi5_coeff_via_lemma(81, 2).value == 4
    assert psi5_coeff_via_lemma(81, 1).value == 1
    with pytest.raises(Untabulated):
        psi5_coeff_via_lemma(9, 4)
    with pytest.raises(ValueError):
        psi5_coeff_via_lemma(-1)


def test_psi5_expansion_matches_carry_automaton():
    auto = CarryAutomaton(5, 3)
    for n in range(3 ** 6):
        assert psi5_coeff_via_lemma(n) == auto.coeff(n), n
        assert psi5_coeff_via_lemma(n, 2) == auto.coeff(n).reduce(2), n


@pytest.mark.slow
def test_psi5_expansion_matches_carry_automaton_far():
    auto = CarryAutomaton(5, 3)
    for n in range(3 ** 8):
        assert psi5_coeff_via_lemma(n) == auto.coeff(n), n


def test_printed_psi5_mod_27_list_is_audited():
    found = {f.n: f for f in printed_table_findings(5, 3, 100)}
    assert (found[1].expected, found[1].actual) == (2, 5)
    assert (found[9].expected, found[9].actual) == (16, 7)


def test_psi3_case_lists_have_no_findings():
    assert printed_table_findings(3, 2, 3 ** 6) == []
    assert printed_table_findings(3, 3, 3 ** 6) == []
    with pytest.raises(Untabulated):
        printed_table_findings(7, 3, 10)


# --- free subgroup numbers -------------------------------------------------------------

def test_free_class_small():
    # f = 1, 5, 60, 1105, 27120, ...
    assert [free_class(lam, 1).value for lam in range(1, 5)] == [2, 0, 1, 0]
    assert free_class(4, 2).value == 3
    assert free_class(6, 2).value == 6
    with pytest.raises(ValueError):
        free_class(0, 1)
    with pytest.raises(Untabulated):
        free_class(5, 3)


@pytest.mark.parametrize("e", [1, 2])
def test_free_class_matches_oracle(e):
    limit = 500
    terms = free_subgroup_terms(limit + 1, 1, 3 ** e)
    assert [free_class(lam, e).value for lam in range(1, limit + 1)] == terms[1:]


@pytest.mark.slow
@pytest.mark.parametrize("e", [1, 2])
def test_free_class_matches_oracle_far(e):
    limit = 5000
    terms = free_subgroup_terms(limit + 1, 1, 3 ** e)
    assert [free_class(lam, e).value for lam in range(1, limit + 1)] == terms[1:]


def test_free27_examples():
    assert free27_is_one(9)
    assert not free27_is_one(1)
    with pytest.raises(ValueError):
        free27_is_one(0)


@pytest.mark.parametrize("variant", ["printed", "runs_of_2"])
def test_free27_accepts_only_class_one_mod_3(variant):
    for lam in range(1, 400):
        if free27_is_one(lam, variant):
            assert free_class(lam, 1).value == 1, lam


def test_free27_variant_report_shape():
    report = compare_free27_variants(200)
    assert set(report) == {"printed", "runs_of_2"}
    terms = free_subgroup_terms(201, 1, 27)
    for found in report.values():
        for f in found:
            assert f.actual == int(terms[f.n] == 1)
            assert f.expected != f.actual


def test_free27_default_reading_matches_the_oracle():
    report = compare_free27_variants(728)
    assert report["runs_of_2"] == []
    assert 77 in [f.n for f in report["printed"]]
    assert to_word(77) == "2212"


@pytest.mark.slow
def test_free27_default_reading_to_5000():
    report = compare_free27_variants(5000)
    assert report["runs_of_2"] == []
    assert {77, 239, 725, 1535, 1623, 2021, 2183, 4451} <= {f.n for f in report["printed"]}


@pytest.mark.slow
@pytest.mark.parametrize("lam", [1623, 4863])
def test_free27_words_ending_0010(lam):
    assert to_word(lam).endswith("0010")
    terms = free_subgroup_terms(lam + 1, 1, 27)
    assert free27_is_one(lam) == (int(terms[lam]) == 1)


# --- Apery -----------------------------------------------------------------------------

@pytest.mark.parametrize("kind, upto", [("zeta2", 7), ("zeta3", 5)])
def test_apery_class_small(kind, upto):
    exact = apery_recurrence_terms(kind, upto + 1)
    assert [apery_class(kind, n).value for n in range(upto + 1)] == [a % 9 for a in exact]
    assert apery_scan(kind, upto) == []


def test_apery_scan_reports_findings():
    for kind in ("zeta2", "zeta3"):
        exact = apery_recurrence_terms(kind, 301)
        for f in apery_scan(kind, 300):
            assert f.modulus == 9
            assert f.actual == exact[f.n] % 9
            assert f.expected != f.actual
    with pytest.raises(ValueError):
        apery_class("zeta4", 3)
