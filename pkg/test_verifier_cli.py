"""
Tests for the verifier command line
"""

import json

import pytest
from click.testing import CliRunner

from lab_errors import IncompatibleParameters
from verifier_cli import cli, parse_range


@pytest.fixture
def runner(monkeypatch):
    monkeypatch.setenv("LAB_FIELD", "101")
    monkeypatch.setenv("LAB_DECOMPOSABLE_SAMPLE", "0")
    monkeypatch.delenv("LAB_DEPTH", raising=False)
    return CliRunner()


def test_parse_range():
    assert parse_range("3") == [3]
    assert parse_range("2-4") == [2, 3, 4]
    assert parse_range("1,3, 3") == [1, 3]
    for raw in ("", "a", "0", "2-x"):
        with pytest.raises(IncompatibleParameters):
            parse_range(raw)


def test_verify_model_writes_report(runner, tmp_path):
    out = tmp_path / "model.json"
    result = runner.invoke(cli, ["verify", "model", "--n", "2", "--m", "1", "--out", str(out)])
    assert result.exit_code == 0, result.output
    data = json.loads(out.read_text())
    assert data["suite"] == "model"
    assert data["status"] == "PASS"
    assert data["parameters"]["field"] == "101"


def test_bad_range_exits_with_parameter_code(runner):
    result = runner.invoke(cli, ["verify", "model", "--n", "two"])
    assert result.exit_code == 4
    assert "Error:" in result.output


def test_unknown_suite_is_rejected_by_click(runner):
    result = runner.invoke(cli, ["verify", "everything"])
    assert result.exit_code == 2


def test_bad_configuration_exits_with_parameter_code(runner, monkeypatch):
    monkeypatch.setenv("LAB_HOM_WINDOW", "1,2")
    result = runner.invoke(cli, ["verify", "model", "--n", "2"])
    assert result.exit_code == 4


def test_hunt_rejects_m_one(runner):
    result = runner.invoke(cli, ["hunt", "--n", "2", "--m", "1"])
    assert result.exit_code == 4


def test_export_ar(runner, tmp_path):
    out = tmp_path / "a2.dot"
    result = runner.invoke(cli, ["export-ar", "--n", "2", "--m", "1", "--angulation", "0", "--out", str(out)])
    assert result.exit_code == 0, result.output
    text = out.read_text()
    assert text.startswith('digraph "A2_m1"')
    assert text.count("fillcolor") == 2


def test_export_ar_angulation_out_of_range(runner):
    result = runner.invoke(cli, ["export-ar", "--n", "2", "--angulation", "99"])
    assert result.exit_code == 4


def test_pd_table_prints_rows(runner):
    result = runner.invoke(cli, ["pd-table", "--n", "2"])
    assert result.exit_code == 0, result.output
    assert result.output.count("pd=") == 25


def test_hunt_accepts_field_and_seed(runner, tmp_path):
    out = tmp_path / "hunt.json"
    result = runner.invoke(cli, ["hunt", "--n", "2", "--m", "2", "--field", "32003", "--seed", "3", "--out", str(out)])
    assert result.exit_code in (0, 2), result.output
    parameters = json.loads(out.read_text())["parameters"]
    assert parameters["field"] == "32003"
    assert parameters["seed"] == 3
