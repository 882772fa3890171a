import json

import pytest

from psicong.cli import EXIT_MISMATCH, EXIT_OK, EXIT_USAGE, coeff_diffs, run, sequence_coeff
from psicong.errors import Untabulated
from psicong.laurent import LaurentCoeff
from psicong.psi_core import PsiPoly, basic_series
from psicong.sequences import SequenceId, free_subgroup_terms, printed_fixture


@pytest.fixture(autouse=True)
def short_checks(monkeypatch):
    monkeypatch.setenv("PSICONG_CHECK_DEGREE", "200")


def _json(capsys):
    return json.loads(capsys.readouterr().out)


def test_banner_and_examples(capsys):
    assert run([]) == EXIT_OK
    assert "PSICONG" in capsys.readouterr().out
    assert run(["--examples"]) == EXIT_OK
    assert "Usage Examples" in capsys.readouterr().out


@pytest.mark.parametrize("argv", [
    ["derive"],
    ["derive", "--sequence", "fibonacci"],
    ["derive", "--sequence", "catalan", "--mod", "81"],
    ["psi-coeff", "--power", "3"],
    ["classify-free", "--mod", "9"],
    ["apery-scan", "--sequence", "apery_zeta9", "--max-n", "3"],
    ["verify", "--sequence", "apery_zeta2,m=1"],
])
def test_usage_errors(argv):
    assert run(argv) == EXIT_USAGE


def test_psi_coeff_json(capsys):
    assert run(["psi-coeff", "--power", "3", "--mod", "27", "--n", "9", "--json"]) == EXIT_OK
    out = _json(capsys)
    assert out["value"] == 7
    assert out["evaluator"] == "case list"


def test_psi_coeff_untabulated_power_uses_automaton(capsys):
    assert run(["psi-coeff", "--power", "7", "--mod", "9", "--n", "40", "--json"]) == EXIT_OK
    out = _json(capsys)
    assert out["value"] == (basic_series(40, 2) ** 7)[40]
    assert out["evaluator"].startswith("carry automaton")


def test_psi_coeff_huge_n(capsys):
    n = 10 ** 30
    assert run(["psi-coeff", "--power", "3", "--mod", "9", "--n", str(n)]) == EXIT_OK
    assert f"[z^{n}]" in capsys.readouterr().out


def test_psi_coeff_audit(capsys):
    assert run(["psi-coeff", "--power", "5", "--mod", "9", "--audit", "100", "--json"]) == EXIT_OK
    assert 81 in [f["n"] for f in _json(capsys)]


def test_psi5_coeff_uses_the_digit_expansion(capsys):
    assert run(["psi-coeff", "--power", "5", "--mod", "27", "--n", "81", "--json"]) == EXIT_OK
    out = _json(capsys)
    assert out["value"] == 12415 % 27
    assert out["evaluator"] == "lemma expansion"
    assert run(["psi-coeff", "--power", "5", "--mod", "27", "--audit", "20", "--json"]) == EXIT_OK
    assert {1, 9} <= {f["n"] for f in _json(capsys)}


def test_classify_free(capsys):
    assert run(["classify-free", "--n", "9", "--mod", "27", "--json"]) == EXIT_OK
    assert _json(capsys)["is_one"] is True
    assert run(["classify-free", "--n", "4", "--mod", "9", "--json"]) == EXIT_OK
    assert _json(capsys)["value"] == 3


def test_classify_free_compare(capsys):
    assert run(["classify-free", "--compare-variants", "100", "--json"]) == EXIT_OK
    assert set(_json(capsys)) == {"printed", "runs_of_2"}


def test_classify_free_defaults_to_the_corrected_reading(capsys):
    actual = int(free_subgroup_terms(78, 1, 27)[77]) == 1
    assert run(["classify-free", "--n", "77", "--mod", "27", "--json"]) == EXIT_OK
    assert _json(capsys)["is_one"] is actual
    assert run(["classify-free", "--n", "77", "--mod", "27", "--variant", "printed", "--json"]) == EXIT_OK
    assert _json(capsys)["is_one"] is not actual


def test_sequence_coeff_methods():
    assert sequence_coeff(SequenceId("apery_zeta2"), 2, 7) == (1004307 % 9, "recurrence")
    assert sequence_coeff(SequenceId("free_subgroups"), 1, 3) == (1, "digit rule")
    assert sequence_coeff(SequenceId("catalan"), 2, 5) == (42 % 9, "series")
    with pytest.raises(Untabulated):
        sequence_coeff(SequenceId("catalan"), 2, 10 ** 9)


def test_coeff_command(capsys):
    assert run(["coeff", "--sequence", "motzkin", "--mod", "27", "--n", "6", "--json"]) == EXIT_OK
    out = _json(capsys)
    assert out["value"] == 51 % 27
    assert run(["coeff", "--sequence", "catalan", "--mod", "9", "--n", str(10 ** 12)]) == EXIT_USAGE


def test_list(capsys):
    assert run(["list", "--json"]) == EXIT_OK
    rows = _json(capsys)
    assert len(rows) == 16
    assert {"sequence": "catalan", "kind": "quadratic", "fixtures": [9, 27]} in rows


def test_derive_then_verify_saved_representation(tmp_path, capsys):
    assert run(["derive", "--sequence", "catalan", "--mod", "9", "--json"]) == EXIT_OK
    path = tmp_path / "catalan.json"
    path.write_text(capsys.readouterr().out)
    argv = ["verify", "--sequence", "catalan", "--mod", "9", "--terms", "200",
            "--representation", str(path), "--json", "-q"]
    assert run(argv) == EXIT_OK
    (record,) = _json(capsys)
    assert record["oracle_ok"] and record["first_mismatch"] is None


def _write_printed(tmp_path, name, e):
    path = tmp_path / f"{name}.json"
    path.write_text(json.dumps({"representation": printed_fixture(name, e).to_json()}))
    return str(path)


def test_verify_with_fixture_check(tmp_path, capsys):
    argv = ["verify", "--sequence", "motzkin", "--mod", "27", "--terms", "200", "--fixture-check",
            "--representation", _write_printed(tmp_path, "motzkin", 3), "--json"]
    assert run(argv) == EXIT_OK
    (record,) = _json(capsys)
    assert record["fixture_ok"] is True
    assert record["fixture_diffs"] == []
    assert record["modulus"] == 27


def test_fixture_check_reports_coefficient_diffs(tmp_path, capsys):
    argv = ["verify", "--sequence", "motzkin", "--mod", "9", "--terms", "50", "--fixture-check",
            "--representation", _write_printed(tmp_path, "catalan", 2), "--json"]
    assert run(argv) == EXIT_MISMATCH
    (record,) = _json(capsys)
    assert record["fixture_ok"] is False
    assert record["fixture_diffs"]


def test_fixture_check_is_strict_on_coefficients():
    printed = printed_fixture("motzkin", 2)
    assert coeff_diffs(printed, printed) == []
    bumped = printed + PsiPoly.psi_power(printed.ctx, 1, LaurentCoeff.constant(printed.ctx.coeff_ctx, 3))
    (diff,) = coeff_diffs(bumped, printed)
    assert diff.startswith("Psi^1: ")
    assert coeff_diffs(printed.reduce(1), printed)[0].startswith("context ")


def test_verify_detects_a_wrong_representation(tmp_path, capsys):
    assert run(["derive", "--sequence", "catalan", "--mod", "9", "--json"]) == EXIT_OK
    path = tmp_path / "catalan.json"
    path.write_text(capsys.readouterr().out)
    argv = ["verify", "--sequence", "motzkin", "--mod", "9", "--terms", "50",
            "--representation", str(path), "--json"]
    assert run(argv) == EXIT_MISMATCH
    (record,) = _json(capsys)
    assert record["first_mismatch"] is not None


def test_apery_scan_command(capsys):
    assert run(["apery-scan", "--sequence", "apery_zeta3", "--max-n", "5", "--json"]) == EXIT_OK
    assert _json(capsys) == {"zeta3": []}


def test_minpoly_command(capsys):
    assert run(["minpoly", "--degree", "300", "--json"]) == EXIT_OK
    out = _json(capsys)
    assert len(out["rows"]) == 13
    assert out["a0_mod_9_vanishes"] is False
