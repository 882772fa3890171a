import pytest

from psicong.errors import NoFixture, UnsupportedId
from psicong.psi_core import psipoly_to_series
from psicong.sequences import (
    SequenceId, all_ids, apery_recurrence_terms, apery_sum, catalog, eulerian_number,
    fixture_moduli, oracle_terms, printed_fixture, representation_from_doc,
)

N_FIXTURE = 3 ** 6

KNOWN = {
    "catalan": [1, 1, 2, 5, 14, 42],
    "motzkin": [1, 1, 2, 4, 9, 21, 51],
    "riordan": [1, 0, 1, 1, 3, 6, 15, 36],
    "central_trinomial": [1, 1, 3, 7, 19, 51],
    "delannoy": [1, 3, 13, 63, 321],
    "schroeder": [1, 2, 6, 22, 90],
    "central_binomial": [1, 2, 6, 20, 70],
    "central_binomial_sums": [1, 3, 9, 29, 99],
    "almost_central_binomial": [1, 4, 15, 56],
    "motzkin_prefix": [1, 2, 5, 13, 35],
    "hex_tree": [1, 3, 10, 36, 137],
    "free_subgroups": [1, 5, 60, 1105, 27120],
    "eulerian_even": [1, 1, 11, 302, 15619],
    "eulerian_odd": [0, 1, 4, 66, 2416],
    "apery_zeta2": [1, 3, 19, 147, 1251, 11253, 104959, 1004307],
    "apery_zeta3": [1, 5, 73, 1445, 33001, 819005],
}


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_oracle_small_values(name):
    want = KNOWN[name]
    e = 20
    assert oracle_terms(name, len(want), e).terms() == [w % 3 ** e for w in want]


@pytest.mark.parametrize("kind", ["zeta2", "zeta3"])
def test_apery_sum_agrees_with_recurrence(kind):
    assert apery_recurrence_terms(kind, 40) == [apery_sum(kind, n) for n in range(40)]


def test_eulerian_number_small_table():
    assert [eulerian_number(4, k) for k in range(1, 5)] == [1, 11, 11, 1]
    assert eulerian_number(0, 0) == 0


def test_sequence_id_parse():
    sid = SequenceId.parse("free_subgroups,m=4")
    assert (sid.name, sid.m) == ("free_subgroups", 4)
    assert str(sid) == "free_subgroups,m=4"
    assert SequenceId.parse("free_subgroups").m == 1
    assert SequenceId.parse(" catalan ").kind == "quadratic"
    assert SequenceId("apery_zeta3").kind == "apery"
    assert SequenceId("eulerian_odd").kind == "eulerian"


@pytest.mark.parametrize("text", ["fibonacci", "free_subgroups,m=3", "catalan,m=1", "free_subgroups,k=2",
                                  "free_subgroups,m=x"])
def test_sequence_id_rejects(text):
    with pytest.raises(UnsupportedId):
        SequenceId.parse(text)


def test_all_ids_expands_free_parameters():
    ids = [str(s) for s in all_ids(free_m=(1, 2))]
    assert "free_subgroups,m=1" in ids and "free_subgroups,m=2" in ids
    assert len(ids) == 17


def test_catalog_only_covers_quadratic_ids():
    with pytest.raises(UnsupportedId):
        catalog("eulerian_even")
    with pytest.raises(UnsupportedId):
        catalog("apery_zeta2")


def test_missing_fixtures():
    assert fixture_moduli("apery_zeta2") == []
    with pytest.raises(NoFixture):
        printed_fixture("apery_zeta2", 2)
    with pytest.raises(NoFixture):
        printed_fixture("almost_central_binomial", 2)
    assert fixture_moduli("catalan") == [9, 27]


def test_representation_round_trips_through_json():
    rep = printed_fixture("catalan", 3)
    again = representation_from_doc(rep.to_json(), 3)
    assert again.series_equal(rep, 200)


def _fixture_cases():
    out = []
    for sid in all_ids(free_m=(1, 2, 4, 5)):
        for modulus in fixture_moduli(sid):
            out.append((str(sid), {9: 2, 27: 3}[modulus]))
    return out


@pytest.mark.parametrize("sid, e", _fixture_cases())
def test_fixture_matches_oracle(sid, e):
    rep = printed_fixture(sid, e)
    got = psipoly_to_series(rep, N_FIXTURE - 1)
    assert got.agrees(oracle_terms(sid, N_FIXTURE, e), N_FIXTURE - 1)
