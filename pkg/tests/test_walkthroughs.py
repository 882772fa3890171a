import runpy
import sys
from pathlib import Path

import pytest

ROOT = Path(__file__).resolve().parent.parent
SCRIPTS = sorted((ROOT / "walkthrough").glob("[0-9][0-9]_*.py"))


@pytest.fixture(autouse=True)
def short_checks(monkeypatch):
    monkeypatch.setenv("PSICONG_CHECK_DEGREE", "200")


def test_walkthroughs_present():
    assert len(SCRIPTS) == 5


@pytest.mark.slow
@pytest.mark.parametrize("script", SCRIPTS, ids=lambda p: p.name)
def test_walkthrough_runs(script, capsys):
    runpy.run_path(str(script), run_name="__main__")
    assert "Demo complete" in capsys.readouterr().out


def test_tool_overview(monkeypatch, capsys):
    monkeypatch.setattr(sys, "argv", ["psicong_tool.py"])
    ns = runpy.run_path(str(ROOT / "tools" / "psicong_tool.py"), run_name="psicong_tool")
    assert ns["main"]() == 0
    assert "PSICONG TOOL" in capsys.readouterr().out


def test_tool_forwards_to_cli(monkeypatch, capsys):
    ns = runpy.run_path(str(ROOT / "tools" / "psicong_tool.py"), run_name="psicong_tool")
    monkeypatch.setattr(sys, "argv", ["psicong_tool.py", "psi-coeff", "--power", "3", "--mod", "27", "--n", "9"])
    assert ns["main"]() == 0
    assert "= 7 (mod 27)" in capsys.readouterr().out
