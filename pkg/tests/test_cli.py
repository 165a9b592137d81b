import json

import pytest
from click.testing import CliRunner

from superdirac.cli import main
from superdirac.golden import preset


@pytest.fixture
def runner():
    return CliRunner()


def test_expand(runner):
    res = runner.invoke(main, ["expand", "sl2", "E", "F*F"])
    assert res.exit_code == 0
    assert res.output.strip() == "2*k*L*F + 2*H*F"


def test_check_passes(runner):
    res = runner.invoke(main, ["check", "osp12", "--susy", "--random", "2", "--max-degree", "2"])
    assert res.exit_code == 0, res.output
    assert "RESULT: PASS" in res.output


def test_check_fails_on_broken_algebra(runner, tmp_path):
    data = preset("sl2").to_json()
    data["brackets"][0][2][0]["coeff"] = "3"
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(data))
    res = runner.invoke(main, ["check", str(path)])
    assert res.exit_code == 1


def test_malformed_json(runner, tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{\n  "name": "x",\n  oops\n}')
    res = runner.invoke(main, ["check", str(path)])
    assert res.exit_code == 2
    assert "line 3" in res.output


def test_wbracket_json(runner):
    res = runner.invoke(main, ["wbracket", "osp12", "--pair", "F,f", "--format", "json"])
    assert res.exit_code == 0
    doc = json.loads(res.output)
    assert doc["status"] == "pass"
    assert doc["brackets"]["pi{F L f}^D"] == "(3/2)*k*L*f + k*d(f)"


def test_wbracket_unknown_pair(runner):
    res = runner.invoke(main, ["wbracket", "osp12", "--pair", "F,E"])
    assert res.exit_code == 2


def test_wbracket_sl2_susy_usage_error(runner):
    assert runner.invoke(main, ["wbracket", "sl2", "--susy"]).exit_code == 2


def test_reduce_outside_class(runner, tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("E - 1\n")
    res = runner.invoke(main, ["reduce", "sl2", "--constraints", str(path)])
    assert res.exit_code == 1


def test_reduce_parse_error(runner, tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("E +\n")
    res = runner.invoke(main, ["dirac", "reduce", "sl2", "--constraints", str(path)])
    assert res.exit_code == 2
    assert "line 1" in res.output


def test_reduce_empty_constraints(runner, tmp_path):
    path = tmp_path / "c.txt"
    path.write_text("# nothing\n")
    res = runner.invoke(main, ["reduce", "sl2", "--constraints", str(path), "--pair", "E,F"])
    assert res.exit_code == 0
    assert "k*L + H" in res.output


def test_examples_command(runner):
    res = runner.invoke(main, ["examples"])
    assert res.exit_code == 0
    assert "FAIL" not in res.output
