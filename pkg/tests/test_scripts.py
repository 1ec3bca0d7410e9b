import runpy
import sys
from pathlib import Path

import pytest

SCRIPTS = Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("name, argv", [
    ("reproduce_worked_examples.py", []),
    ("ot_probability_study.py", ["--bits", "16", "--orders", "3", "--trials", "200"]),
    ("okx_agreement_study.py", ["--bits", "20", "--orders", "2", "--trials", "200"]),
])
def test_script_runs(monkeypatch, capsys, name, argv):
    monkeypatch.setattr(sys, "argv", [name, *argv])
    runpy.run_path(str(SCRIPTS / name), run_name="__main__")
    out = capsys.readouterr().out
    assert out.strip()
    if name.startswith("reproduce"):
        assert "frame=9 (1001)" in out and "case 1: A key 13, B key 13, agreed=1" in out
