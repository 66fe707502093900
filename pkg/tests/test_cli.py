"""CLI: run-level, analyze, validate and their exit codes."""

import json

import pytest
from click.testing import CliRunner

from crittermine.cli import main
from crittermine.engine import mine_to_doc
from crittermine.fixtures import tutorial_level, tutorial_prescribed_mines
from crittermine.levels import level_to_doc


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def level_file(tmp_path):
    path = tmp_path / "level.json"
    path.write_text(json.dumps(level_to_doc(tutorial_level())))
    return str(path)


@pytest.fixture
def mines_file(tmp_path):
    path = tmp_path / "mines.json"
    path.write_text(json.dumps([mine_to_doc(m) for m in tutorial_prescribed_mines()]))
    return str(path)


@pytest.fixture
def broken_level_file(tmp_path):
    doc = level_to_doc(tutorial_level())
    doc["board"]["tower"] = [4, 4]  # into the pond
    path = tmp_path / "broken.json"
    path.write_text(json.dumps(doc))
    return str(path)


def test_run_level_json(runner, level_file, mines_file):
    result = runner.invoke(
        main, ["run-level", "--level", level_file, "--mines", mines_file, "--seed", "3", "--format", "json"]
    )
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    assert doc["score"]["mutantsTrapped"] == 3
    assert doc["score"]["total"] > 0


def test_run_level_text(runner, level_file, mines_file):
    result = runner.invoke(main, ["run-level", "--level", level_file, "--mines", mines_file])
    assert result.exit_code == 0
    assert "mutants trapped: 3" in result.output


def test_run_level_missing_file(runner, level_file):
    result = runner.invoke(main, ["run-level", "--level", level_file, "--mines", "nope.json"])
    assert result.exit_code != 0


def test_analyze_reports_minimal_set(runner, level_file):
    result = runner.invoke(main, ["analyze", "--level", level_file, "--format", "json"])
    assert result.exit_code == 0, result.output
    doc = json.loads(result.output)
    assert len(doc["minimalMines"]) == 2
    assert doc["certificate"]["status"] == "EXACT"


def test_analyze_text(runner, level_file):
    result = runner.invoke(main, ["analyze", "--level", level_file])
    assert result.exit_code == 0
    assert "minimal mine set (EXACT): 2 mines" in result.output


def test_validate_ok(runner, level_file):
    result = runner.invoke(main, ["validate", "--level", level_file])
    assert result.exit_code == 0
    assert "ok" in result.output


def test_validate_broken_level_exits_2(runner, broken_level_file):
    result = runner.invoke(main, ["validate", "--level", broken_level_file])
    assert result.exit_code == 2
    assert "UnwalkableTower" in result.output


def test_validate_json_format(runner, broken_level_file):
    result = runner.invoke(main, ["validate", "--level", broken_level_file, "--format", "json"])
    assert result.exit_code == 2
    doc = json.loads(result.output)
    assert any(i["code"] == "UnwalkableTower" for i in doc["issues"])
