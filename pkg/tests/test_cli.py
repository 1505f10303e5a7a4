import subprocess
import sys

import pytest

from cases import EX1, EX3
from sigames.cli import main


@pytest.fixture
def ex1_file(tmp_path):
    path = tmp_path / "ex1.json"
    path.write_text(EX1.to_json())
    return path


def test_solve(ex1_file, capsys):
    assert main(["solve", str(ex1_file), "--all-plans"]) == 0
    out = capsys.readouterr().out
    assert "cost 118" in out and "(1, 1)" in out and "(1, 2)" in out
    assert main(["solve", str(ex1_file), "--coalition", "1"]) == 0
    assert "cost 39" in capsys.readouterr().out


def test_game_and_check_core(ex1_file, tmp_path, capsys):
    game_csv = tmp_path / "game.csv"
    assert main(["game", str(ex1_file), "--out", str(game_csv)]) == 0
    assert game_csv.read_text().splitlines()[-1] == "7,1 2 3,118"
    alloc = tmp_path / "x.csv"
    assert main(["allocate", str(ex1_file), "--rule", "unitary-owen", "--out", str(alloc)]) == 0
    assert alloc.read_text() == "player,share\n1,189/10\n2,59\n3,401/10\n"
    capsys.readouterr()
    assert main(["check-core", str(ex1_file), str(alloc)]) == 0
    assert capsys.readouterr().out.startswith("member")


def test_allocate_rules(tmp_path, capsys):
    path = tmp_path / "ex3.json"
    path.write_text(EX3.to_json())
    for rule in ("dual", "nucleolus", "owen-map"):
        assert main(["allocate", str(path), "--rule", rule]) == 0
        captured = capsys.readouterr()
        assert "core member: yes" in captured.err
    assert main(["allocate", str(path), "--rule", "nucleolus"]) == 0
    assert capsys.readouterr().out == "player,share\n1,89/2\n2,141/2\n"


def test_certificate(ex1_file, tmp_path, capsys):
    assert main(["certificate", str(ex1_file)]) == 0
    assert capsys.readouterr().out.startswith("coalition,period,beta,bound")
    path = tmp_path / "ex3.json"
    path.write_text(EX3.to_json())
    assert main(["certificate", str(path)]) == 0
    assert "no certificate: coalition {1}" in capsys.readouterr().out


def test_invalid_input_exit_code(tmp_path, capsys):
    bad = tmp_path / "bad.json"
    bad.write_text('{"players": [{"d": [-1], "p": [1], "h": [], "b": [], "k": [1]}]}')
    assert main(["game", str(bad)]) == 2
    assert "player 1" in capsys.readouterr().err
    assert main(["game", str(tmp_path / "missing.json")]) == 2


def test_cap_exit_code(tmp_path):
    assert main(["simulate", "--players", "13", "--periods", "1", "--trials", "1"]) == 3


def test_simulate(tmp_path, capsys):
    out = tmp_path / "report.csv"
    code = main(["simulate", "--players", "2", "--periods", "2", "--trials", "30",
                 "--seed", "1", "--positive", "--out", str(out)])
    assert code == 0
    assert out.read_text().startswith("players,periods,trials")
    assert capsys.readouterr().out.startswith("| players")


def test_module_entry_point(ex1_file):
    result = subprocess.run([sys.executable, "-m", "sigames", "game", str(ex1_file)],
                            capture_output=True, text=True, check=True)
    assert result.stdout.splitlines()[1] == "1,1,39"
